"""Tour of the modal formula language and Kripke-model evaluator.

Run:  python3 demos/01_modal_logic.py
"""

from plfkit import KripkeModel, Atom, parse, render, evaluate, valid

# Formulas are plain text: ~ & | -> <-> plus <> (possibly) and [] (necessarily).
f = parse("<>(A=1 & B=1)")
print("parsed:  ", f)
print("rendered:", render(f))
print()

# A model is worlds + accessibility + which atoms hold where.
Q = Atom("Q")
m = KripkeModel(
    worlds={"w0", "w1"},
    relation={("w0", "w1")},
    valuation={Q: {"w1"}},
)
print("w0 sees w1, and Q holds only at w1:")
print("  <>Q at w0:", evaluate(m, "w0", parse("<>Q")))
print("  <>Q at w1:", evaluate(m, "w1", parse("<>Q")), "(w1 is a dead end)")
print()

# Familiar-looking modal principles fail without frame conditions.
lonely = KripkeModel(worlds={"w"}, relation=set(), valuation={})
print("one world, no accessibility, Q false:")
print("  []Q -> Q  :", evaluate(lonely, "w", parse("[]Q -> Q")),
      " (needs reflexivity)")
print("  []Q -> <>Q:", evaluate(lonely, "w", parse("[]Q -> <>Q")),
      " (needs every world to see some world)")
print()

reflexive = KripkeModel(
    worlds={"u", "v"}, relation={("u", "u"), ("v", "v")}, valuation={Q: {"u", "v"}})
print("with a reflexive relation, []Q -> Q is valid:",
      valid(reflexive, parse("[]Q -> Q")))
print("classical tautologies are valid in every model:",
      valid(lonely, parse("Q | ~Q")))
