import pytest

from efl.hypergraph import parse_hypergraph, tri3


@pytest.fixture
def H3():
    return tri3()


@pytest.fixture
def disjoint3():
    return parse_hypergraph("a b c\nd e f\ng h i\n")


@pytest.fixture
def pencil3():
    return parse_hypergraph("p a b\np c d\np e f\n")


@pytest.fixture
def tri3_file(tmp_path):
    p = tmp_path / "tri3.txt"
    p.write_text("# triangle\na b c\na d e\nb d f\n")
    return p


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
