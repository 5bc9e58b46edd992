import pytest

from personindex.core import AmbiguityEntry, GroundTruth, MentionRelation, Person, ShortText
from personindex.generator import NameCatalogs

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def catalogs():
    return NameCatalogs.default()


@pytest.fixture
def worked_example():
    """Three texts and four persons: Baker is ambiguous in the first text."""
    texts = [
        ShortText(1, "Baker\nThompson LS-Z-U"),
        ShortText(2, "mail to Chief Morgan (Wilson), [remove Baker, Robert]"),
        ShortText(3, "Wilson, M.; Susan Lea Baker"),
    ]
    index = [
        (1, Person("Robert", None, "Baker")),
        (2, Person("Wilson", None, "Morgan")),
        (3, Person(None, None, "Thompson")),
        (4, Person("Susan", "Lea", "Baker")),
    ]
    relations = {MentionRelation(1, 3), MentionRelation(2, 2), MentionRelation(2, 1),
                 MentionRelation(3, 2), MentionRelation(3, 4)}
    ambiguities = [AmbiguityEntry(1, "Baker", {1, 4})]
    return GroundTruth(texts, index, relations, ambiguities)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
