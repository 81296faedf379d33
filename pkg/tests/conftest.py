def pytest_terminal_summary(terminalreporter):
    from test_acceptance import report_lines

    lines = report_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
