import os
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add the src directory to the path so we can import the package
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from relideal.bmoller import PointSet, buchberger_moeller
from relideal.exactring import GF
from relideal.multipoly import MultiPoly
from relideal.orbit import OrbitConfig, orbit_ideal_basis, separator
from relideal.permgrp import Perm, PermGroup
from relideal.polytext import format_poly, parse_poly

from tests.known_fields import ALL, C5, CYCLIC_CUBIC, F21, QUADRATIC, group_of


def config_of(field):
    F = GF(field.prime)
    return OrbitConfig.build([F(r) for r in field.labeling], group_of(field), F)


def test_quadratic_orbit():
    basis = orbit_ideal_basis(config_of(QUADRATIC))
    assert [format_poly(g) for g in basis] == ["T1^2 + 5", "T2 + T1"]


def test_cyclic_quintic_matches_rational_basis_mod_p():
    cfg = config_of(C5)
    basis = orbit_ideal_basis(cfg)
    expected = [parse_poly(g, 5, cfg.ring) for g in C5.basis]
    assert basis == expected


@pytest.mark.parametrize("field", ALL, ids=lambda k: k.name)
def test_basis_vanishes_on_orbit(field):
    cfg = config_of(field)
    basis = orbit_ideal_basis(cfg)
    assert [g.degree(i) for i, g in enumerate(basis, start=1)] == list(field.degrees)
    for pt in cfg.orbit():
        assert all(not g.evaluate(pt) for g in basis)


def test_basis_does_not_vanish_off_orbit():
    cfg = config_of(CYCLIC_CUBIC)
    basis = orbit_ideal_basis(cfg)
    swapped = Perm.from_cycles("(2 3)", 3).act(cfg.point)
    assert any(g.evaluate(swapped) for g in basis)


@pytest.mark.parametrize("field", ALL, ids=lambda k: k.name)
def test_matches_buchberger_moeller(field):
    cfg = config_of(field)
    result = buchberger_moeller(PointSet(cfg.ring, tuple(cfg.orbit())))
    assert list(result.groebner) == orbit_ideal_basis(cfg)
    assert len(result.order_ideal) == field.order


def test_coset_collapse_and_threads_agree():
    cfg = config_of(F21)
    collapsed = orbit_ideal_basis(cfg)
    assert orbit_ideal_basis(cfg, collapse_cosets=False) == collapsed
    assert orbit_ideal_basis(cfg, threads=3) == collapsed
    assert orbit_ideal_basis(cfg, upto=2) == collapsed[:2]


@pytest.mark.parametrize("field", ALL, ids=lambda k: k.name)
def test_separators(field):
    cfg = config_of(field)
    orbit = {g: g.act(cfg.point) for g in cfg.group.elements}
    total = MultiPoly.zero(cfg.ring, cfg.n)
    for rho in cfg.group.elements:
        h = separator(rho, cfg)
        total = total + h
        for sigma, pt in orbit.items():
            assert h.evaluate(pt) == (1 if sigma == rho else 0)
    assert total == 1


def test_point_coordinates_must_be_distinct():
    F = GF(7)
    G = PermGroup(2, [Perm.from_cycles("(1 2)", 2)])
    with pytest.raises(ValueError):
        OrbitConfig.build([F(3), F(10)], G, F)


@st.composite
def orbit_configurations(draw):
    p = draw(st.sampled_from([11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 97]))
    n = draw(st.integers(min_value=1, max_value=4))
    point = draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n, unique=True))
    gens = draw(st.lists(st.permutations(range(n)), min_size=0, max_size=2))
    F = GF(p)
    group = PermGroup(n, [Perm(g) for g in gens])
    return OrbitConfig.build([F(c) for c in point], group, F)


@settings(max_examples=50, deadline=None)
@given(orbit_configurations())
def test_random_orbits_match_buchberger_moeller(cfg):
    basis = orbit_ideal_basis(cfg)
    result = buchberger_moeller(PointSet(cfg.ring, tuple(cfg.orbit())))
    assert list(result.groebner) == basis
