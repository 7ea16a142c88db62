import pytest

from balclust.indices import ReferenceParams
from balclust.instance import load_instance, load_json
from balclust.team import TeamInstance, TeamSpec


@pytest.fixture(scope="session")
def fig4():
    return load_instance("fig4.json")


@pytest.fixture(scope="session")
def fig10():
    return load_instance("fig10.json")


@pytest.fixture(scope="session")
def ref_xprime():
    return ReferenceParams.from_dict(load_json("ref_xprime.json"))


@pytest.fixture(scope="session")
def ref_xdprime():
    return ReferenceParams.from_dict(load_json("ref_xdprime.json"))


@pytest.fixture(scope="session")
def students():
    return TeamInstance.from_instance(load_instance("students.json"))


@pytest.fixture(scope="session")
def team_spec():
    return TeamSpec.from_dict(load_json("team_spec.json"))


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
