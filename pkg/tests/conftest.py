import pytest

from helpers import paper_example


@pytest.fixture(scope="session")
def paper():
    return paper_example()


@pytest.fixture(scope="session")
def paper_decision(paper):
    from cubelin import decide_automorphism

    return decide_automorphism(paper)
