from __future__ import annotations

import pytest

from polyideal.fixtures import check_fixture, fixture_path, get_fixture, load_fixtures

FIXTURES = sorted(load_fixtures())


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_expectations(name):
    fx = get_fixture(name)
    assert fx.expectations
    bad = [(e.check, e.value, got) for e, got, ok in check_fixture(fx) if not ok]
    assert not bad


def test_corpus_shape():
    kinds = {get_fixture(n).kind for n in FIXTURES}
    assert kinds == {"cells", "poset"}
    assert all(e.provenance for n in FIXTURES for e in get_fixture(n).expectations)
    assert fixture_path("fig_convex_plus").endswith("fig_convex_plus.grid")


def test_unknown_fixture():
    with pytest.raises(KeyError):
        get_fixture("nope")
