"""
Metric semigroup axioms
=======================

Spot-check translation invariance, the product triangle inequality and the
increment-norm identity on every built-in family.
"""

from hjsemigroup import check_axioms, make_semigroup
from hjsemigroup.semigroup import BrokenSquare

for key in ["IntLine", "PosInts", "Cyclic(5)", "HammingCube(4)", "SymCayley(4)", "SymHamming(4)", "Euclidean(2)", "Circle"]:
    rep = check_axioms(make_semigroup(key), trial_count=2000, rng_seed=7)
    print(f"{key:15s} {'ok' if rep.passed else 'FAILED'}")

# |a^2 - b^2| on the integers is a metric, but not a translation-invariant one
rep = check_axioms(BrokenSquare(), trial_count=200)
for res in rep.failures():
    print(f"BrokenSquare {res.name}: witness {res.witness}  {res.detail}")
