"""The bundled fixture corpus and an evaluator for its expectations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .classify import (
    classify_linearly_related,
    gorenstein_stack_predicate,
    is_extremal_stack_shape,
)
from .lattice import (
    Poset,
    classify_lattice,
    h_vector_of_poset,
    is_pure,
    is_simple,
    order_ideal_lattice,
)
from .polyomino import (
    CellCollection,
    induced_collection,
    is_convex,
    is_polyomino,
    is_stack,
    parse_grid,
    shape_profile,
    stack_orientation,
    stack_profile,
)
from .resolution import (
    SyzygyEngine,
    is_linearly_related_oracle,
    minimal_koszul_pairs,
    resolution_verdict,
)
from .toric import InnerMinor, inner_minors

CORPUS_VERSION = "v1"


@dataclass(frozen=True)
class Expectation:
    check: str
    value: object
    provenance: str


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # "cells" or "poset"
    payload: CellCollection | Poset
    expectations: tuple[Expectation, ...]


def _corpus_dir():
    return resources.files("polyideal").joinpath("data", "fixtures", CORPUS_VERSION)


@lru_cache(maxsize=None)
def load_fixtures() -> dict[str, Fixture]:
    root = _corpus_dir()
    manifest = json.loads(root.joinpath("manifest.json").read_text())
    out = {}
    for name, entry in manifest["fixtures"].items():
        text = root.joinpath(entry["file"]).read_text()
        payload = Poset.from_json(text) if entry["kind"] == "poset" else parse_grid(text)
        exps = tuple(Expectation(x["check"], x["value"], x["provenance"]) for x in entry["expectations"])
        out[name] = Fixture(name, entry["kind"], payload, exps)
    return out


def get_fixture(name: str) -> Fixture:
    try:
        return load_fixtures()[name]
    except KeyError:
        raise KeyError(f"no fixture named {name!r}") from None


def fixture_path(name: str) -> str:
    """Filesystem path of a fixture's data file (for CLI examples)."""
    root = _corpus_dir()
    manifest = json.loads(root.joinpath("manifest.json").read_text())
    return str(root.joinpath(manifest["fixtures"][name]["file"]))


def _pair(spec) -> tuple[InnerMinor, InnerMinor]:
    a, b = spec
    return InnerMinor(tuple(map(tuple, a))), InnerMinor(tuple(map(tuple, b)))


def evaluate(fx: Fixture, check: str) -> object:
    """Compute the library's answer for one named check on a fixture."""
    p = fx.payload
    if fx.kind == "poset":
        if check == "h_vector":
            return list(h_vector_of_poset(p))
        if check == "pure":
            return is_pure(p)
        lat = order_ideal_lattice(p)
        if check == "lattice_simple":
            return is_simple(lat)
        if check == "lattice_linear_resolution":
            return classify_lattice(lat).linear_resolution
        if check == "lattice_extremal":
            return classify_lattice(lat).extremal_gorenstein
        raise KeyError(check)
    c: CellCollection = p
    if check == "is_polyomino":
        return is_polyomino(c)
    if check == "is_convex":
        return is_polyomino(c) and is_convex(c)
    if check == "is_stack":
        return is_stack(c)
    if check == "cell_count":
        return len(c)
    if check == "bbox":
        return [c.m, c.n]
    if check == "n_minors":
        return len(inner_minors(c))
    if check == "corners_missing":
        return len(shape_profile(c).missing_corners)
    if check == "linearly_related":
        return is_linearly_related_oracle(c).value
    if check == "main_predicate":
        return classify_linearly_related(c).linearly_related
    if check == "koszul_pair_exists":
        return bool(minimal_koszul_pairs(c, first_only=True))
    if check == "stack_width":
        return stack_profile(c).width
    if check == "stack_height":
        return stack_profile(c).height
    if check == "stack_jumps":
        return list(stack_profile(c).jumps[1:])
    if check == "h_vector":
        return list(resolution_verdict(c).h_vector)
    if check == "gorenstein":
        return resolution_verdict(c).is_gorenstein
    if check == "extremal_gorenstein":
        return resolution_verdict(c).is_extremal_gorenstein
    if check == "gorenstein_predicate":
        return gorenstein_stack_predicate(c)
    if check == "extremal_shape":
        return stack_orientation(c) is not None and is_extremal_stack_shape(c)
    raise KeyError(check)


def evaluate_parametrized(fx: Fixture, exp: Expectation) -> object:
    """Checks whose expected value doubles as their input."""
    if exp.check == "koszul_pair":
        a, b = _pair(exp.value)
        return exp.value if SyzygyEngine(fx.payload).koszul_minimal(a, b)[0] else None
    if exp.check == "induced_from":
        src = get_fixture(exp.value["source"]).payload
        got = induced_collection(src, exp.value["cols"], exp.value["rows"])
        return exp.value if got == fx.payload else None
    return evaluate(fx, exp.check)


def check_fixture(fx: Fixture) -> list[tuple[Expectation, object, bool]]:
    out = []
    for exp in fx.expectations:
        got = evaluate_parametrized(fx, exp)
        out.append((exp, got, got == exp.value))
    return out
