from corrweave import run_property_suite

EXPECTED_NAMES = [
    "faithfulness-0S", "monotonicity-1S", "monotonicity-2S",
    "monotonicity-3D", "superadditivity-5S", "product-additivity",
    "weaving-dual-form", "weaving-contractivity",
]


def test_suite_passes_and_names():
    results = run_property_suite(1234, trials=25)
    assert [r.name for r in results] == EXPECTED_NAMES
    assert all(r.passed for r in results)
    assert all(r.trials == 25 for r in results)
    assert all(r.worst_margin <= r.tolerance for r in results)


def test_suite_deterministic():
    a = run_property_suite(77, trials=10)
    b = run_property_suite(77, trials=10)
    assert [r.worst_margin for r in a] == [r.worst_margin for r in b]
    c = run_property_suite(78, trials=10)
    assert [r.worst_margin for r in a] != [r.worst_margin for r in c]


def test_injected_fault_is_detected():
    results = run_property_suite(1234, trials=6,
                                 perturb_dist=lambda v: v - 1e-3)
    failed = {r.name for r in results if not r.passed}
    assert "faithfulness-0S" in failed
    assert "product-additivity" in failed
    # an honest rerun still passes
    assert all(r.passed for r in run_property_suite(1234, trials=6))
