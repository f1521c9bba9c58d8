import pytest

from polystack.polytope import Polytope

# every validated 4-polytope built during a test is recorded and checked for
# g2 >= 0 when the test finishes
_recorded: list = []
G2_VALUES: list = []
_original_validate = Polytope.validate


def _recording_validate(self):
    _original_validate(self)
    if self.dim == 4:
        _recorded.append(self)


Polytope.validate = _recording_validate


@pytest.fixture(autouse=True)
def g2_nonnegative_guard():
    _recorded.clear()
    yield
    from polystack.lattice import build_face_lattice, flag_vector, g2

    seen = set()
    for p in _recorded:
        if id(p) in seen:
            continue
        seen.add(id(p))
        value = g2(flag_vector(build_face_lattice(p)), 4)
        G2_VALUES.append(value)
        assert value >= 0, f"g2 = {value} < 0 for a polytope with {p.n_vertices} vertices"
    _recorded.clear()


# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
