"""
Replaying the proof on a finite outcome space
=============================================

Stopping times, the partition of the bad event by stopping vector, and the
product bounds, all checked outcome by outcome.  The second half shows what
goes wrong when the two anchors are far apart.
"""

from fractions import Fraction

from hjsemigroup import BoundParams, IntLine, evaluate_hj, iid_scenario, make_distribution, verify_decomposition
from hjsemigroup.fuzzing import fuzz_case

sg = IntLine()
steps = make_distribution([(sg.element(-1), Fraction(1, 2)), (sg.element(1), Fraction(1, 2))])
walk = iid_scenario(sg, steps, 3, z0=0)

rep = verify_decomposition(walk, BoundParams((2,), (0,), 2))
print("P(Omega_1) =", rep.p_omega1, " blocks:", rep.blocks, " S_tilde =", rep.S_tilde)
for c in rep.checks:
    print(f"  {'ok ' if c.passed else 'BAD'} {c.name}: {c.detail}")

# d(z1, z0) = 1 > t_1 = 0: the first stopping time can fire with no movement at all
sc, p = fuzz_case(7, 80)
rep = verify_decomposition(sc, p)
print("\nanchors", sc.sg.format(sc.z0), sc.sg.format(sc.z1), "params", p)
for c in rep.failures():
    print(f"  BAD {c.name}: {c.detail} {c.witness or ''}")

# and here the inequality itself fails
sc, p = fuzz_case(6, 2310)
r = evaluate_hj(sc, p)
print("\nCyclic(5) case: lhs", r.lhs, "rhs", r.rhs, "holds", r.holds)
