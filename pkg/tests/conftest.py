def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, title, failed = RESULTS[n]
        terminalreporter.write_line(f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}  {title}")
        for f in failed:
            terminalreporter.write_line(f"    failed: {f}")
