import pytest

from qgroups.finite import cyclic_group, function_algebra, group_algebra, symmetric_group, tensor_product

_ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def c_z2():
    return function_algebra(cyclic_group(2))


@pytest.fixture(scope="session")
def c_z3():
    return function_algebra(cyclic_group(3))


@pytest.fixture(scope="session")
def c_s3():
    return function_algebra(symmetric_group(3))


@pytest.fixture(scope="session")
def cg_z2():
    return group_algebra(cyclic_group(2))


@pytest.fixture(scope="session")
def cg_z3():
    return group_algebra(cyclic_group(3))


@pytest.fixture(scope="session")
def cg_s3():
    return group_algebra(symmetric_group(3))


@pytest.fixture(scope="session")
def c_z2_x_cg_z2(c_z2, cg_z2):
    return tensor_product(c_z2, cg_z2)


def pytest_runtest_logreport(report):
    # one PASS/FAIL line per acceptance criterion in the terminal summary
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        name = report.nodeid.split(marker, 1)[1]
        _ACCEPTANCE[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    key = lambda name: int(name.split("_", 1)[0])  # noqa: E731
    for name in sorted(_ACCEPTANCE, key=key):
        num, _, label = name.partition("_")
        terminalreporter.write_line(f"{_ACCEPTANCE[name]}  criterion {num:>2}  {label.replace('_', ' ')}")
