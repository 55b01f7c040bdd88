from evolab.verify import Suite, Tally, paper_example_checks, run_suite


def test_tally():
    t = Tally("x")
    t.record(True)
    t.record(None)
    t.record(False, "boom")
    assert (t.passed, t.deviations, t.failed) == (1, 1, 1)
    assert t.line().startswith("[FAIL]") and "1 expected deviations" in t.line()


def test_paper_examples_all_pass():
    bad = [name for name, ok in paper_example_checks() if not ok]
    assert bad == []


def test_suites_small_and_deterministic():
    for suite in (Suite.NILPOTENT, Suite.MAXSOLVABLE, Suite.FAMILIES):
        a = run_suite(suite, seed=5, count=12)
        b = run_suite(suite, seed=5, count=12)
        assert a.ok, a.lines()
        assert a.lines() == b.lines()
