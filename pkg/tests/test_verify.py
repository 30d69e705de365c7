import pytest

from campana import verify


@pytest.mark.parametrize("suite", sorted(verify.SUITES))
def test_each_suite_passes(suite):
    ok, table = verify.run(suite, seed=7, samples=100)
    assert ok, table
    assert "FAIL" not in table


def test_all_runs_every_suite():
    ok, table = verify.run("all", seed=7, samples=50)
    assert ok, table
    lines = [ln for ln in table.splitlines() if ln.startswith("PASS")]
    assert len(lines) >= len(verify.SUITES)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        verify.run("nosuch")


def test_deterministic_for_fixed_seed():
    assert verify.run("semantics", seed=3, samples=60) == \
        verify.run("semantics", seed=3, samples=60)
