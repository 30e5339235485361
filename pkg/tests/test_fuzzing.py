from hjsemigroup.fuzzing import FuzzLimits, fuzz_case, run_case


def test_cases_are_reproducible():
    assert fuzz_case(7, 12) == fuzz_case(7, 12)
    assert fuzz_case(7, 12) != fuzz_case(7, 13)


def test_generated_params_respect_limits():
    limits = FuzzLimits(max_n=4, max_support=2, max_k=2)
    for i in range(200):
        sc, p = fuzz_case(3, i, limits)
        assert 2 <= sc.n <= 4
        assert all(len(law) <= 2 for law in sc.laws)
        assert p.k <= 2 and p.K <= sc.n + 1
        assert sc.is_exact


def test_stream_mixes_anchors_and_zero_thresholds():
    cases = [fuzz_case(7, i) for i in range(300)]
    assert any(sc.z0 != sc.z1 for sc, _ in cases)
    assert any(sc.z0 == sc.z1 for sc, _ in cases)
    assert any(p.s == 0 for _, p in cases)
    assert len({sc.sg.family for sc, _ in cases}) == 6


def test_run_case_fields():
    r = run_case(7, 0, prior=True)
    assert r.holds_max and r.holds_order and r.order_le_max
    assert set(r.prior) >= {"lt_holds", "hm_holds"}
