"""
Exact evaluation of the tail bound
==================================

A simple +-1 walk on the integers, enumerated exactly.  Every quantity is a
Fraction, so "holds" is a statement about rationals, not floats.
"""

from fractions import Fraction

from hjsemigroup import BoundParams, IntLine, evaluate_hj, hm_bound, iid_scenario, lt_bound, make_distribution

sg = IntLine()
steps = make_distribution([(sg.element(-1), Fraction(1, 2)), (sg.element(1), Fraction(1, 2))])
walk = iid_scenario(sg, steps, 3, z0=0)

for params in [BoundParams((2,), (0,), 1), BoundParams((1, 1), (1, 1), 1), BoundParams((1, 2), (0, 1), 0)]:
    for variant in ("max-increment", "order-statistic"):
        r = evaluate_hj(walk, params, variant)
        print(f"n={params.n_vec} t={[str(x) for x in params.t_vec]} s={params.s} {variant:16s} "
              f"zeta={r.zeta} lhs={r.lhs} rhs={r.rhs} I0={sorted(r.I0)} slack={r.slack}")

# the two classical special cases, and how the general bound compares
print(lt_bound(walk, 1, 1))
print(hm_bound(walk, 2, 1, 1))
