"""
Monte Carlo check on a Gaussian walk in the plane
=================================================

No exact enumeration is possible here.  Each probability gets a 99% Wilson
interval and the verdict compares the intervals conservatively.
"""

from hjsemigroup import BoundParams, Euclidean, GaussianStep, Scenario, mc_estimate

sg = Euclidean(2)
origin = sg.element((0.0, 0.0))
walk = Scenario(sg, (GaussianStep((0.0, 0.0), 1.0),) * 10, origin, origin)

for t, s in [(1, 1), (2, 1), (3, 2), (4, 3)]:
    r = mc_estimate(walk, BoundParams.lt(t, s), 100_000, seed=1)
    lhs = r.lhs
    rhs = r.rhs[r.variant.value]
    print(f"t={t} s={s} lhs={lhs.p_hat:.4f} [{lhs.ci.lo:.4f}, {lhs.ci.hi:.4f}] "
          f"rhs in [{rhs.lo:.4f}, {rhs.hi:.4f}] -> {r.verdict}")
