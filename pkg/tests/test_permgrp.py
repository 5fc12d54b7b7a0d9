import os
import sys

import pytest

# Add the src directory to the path so we can import the package
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from relideal.errors import GroupParseError, GroupTooLarge
from relideal.permgrp import Perm, PermGroup, b_set, enumerate_group, stab_chain

from tests.known_fields import C5, C13, D12, F20, F21, PURE_CUBIC, group_of


def test_cycle_parsing_and_printing():
    p = Perm.from_cycles("(1 2 3)(4 5)", 5)
    assert p.images == (1, 2, 0, 4, 3)
    assert p.cycles() == "(1 2 3)(4 5)"
    assert Perm.from_cycles("()", 3).is_identity()
    assert Perm.parse([2, 3, 1], 3) == Perm.from_cycles("(1 2 3)", 3)


@pytest.mark.parametrize("text", ["(1 2", "(1 1)", "(1 9)", "(a b)", "1 2"])
def test_bad_cycles(text):
    with pytest.raises(GroupParseError):
        Perm.from_cycles(text, 5)


def test_composition_applies_right_factor_first():
    a = Perm.from_cycles("(1 2)", 3)
    b = Perm.from_cycles("(2 3)", 3)
    # (a*b)(1) = a(b(1)) = a(1) = 2
    assert (a * b)(0) == 1
    assert (a * b) * (a * b).inverse() == Perm.identity(3)


def test_action_on_points():
    sigma = Perm.from_cycles("(1 2 3)", 3)
    assert sigma.act(("a", "b", "c")) == ("b", "c", "a")


@pytest.mark.parametrize("field", [PURE_CUBIC, C5, F20, D12, F21, C13])
def test_orders_and_index_profiles(field):
    G = group_of(field)
    assert G.order == field.order
    assert G.is_transitive()
    chain = stab_chain(G)
    assert chain.degrees == field.degrees


def test_coset_representatives_are_lex_least():
    G = group_of(F20)
    chain = stab_chain(G)
    reps = chain.coset_representatives(1)
    assert len(reps) == 5
    for rho in reps:
        coset = [g for g in G.elements if g(0) == rho(0)]
        assert rho == min(coset)


def test_factor_through_stabilizer():
    G = group_of(F20)
    chain = stab_chain(G)
    for sigma in G.elements:
        rho, tau = chain.factor(sigma, 2)
        assert rho * tau == sigma
        assert tau(0) == 0 and tau(1) == 1


def test_b_set_lists_other_extensions():
    G = group_of(PURE_CUBIC)
    chain = stab_chain(G)
    roots = ["x1", "x2", "x3"]
    rho = Perm.identity(3)
    assert b_set(rho, 1, chain, roots) == ["x2", "x3"]
    assert b_set(rho, 2, chain, roots) == ["x3"]
    assert b_set(rho, 3, chain, roots) == []


def test_conjugate_transports_the_action():
    G = group_of(C5)
    pi = Perm.from_cycles("(1 3)", 5)
    H = G.conjugate(pi)
    assert H.order == 5
    assert all(pi * g * pi.inverse() in H for g in G.elements)


def test_descriptor_round_trip():
    G = PermGroup.from_descriptor('{"n": 4, "generators": ["(1 2 3 4)", [2, 1, 4, 3]], "name": "D8"}')
    assert G.order == 8
    again = PermGroup.from_descriptor(G.to_descriptor())
    assert again.elements == G.elements
    assert again.name == "D8"


@pytest.mark.parametrize(
    "descriptor", ["not json", '{"generators": []}', '{"n": 3, "generators": ["(1 2 3 4)"]}']
)
def test_bad_descriptors(descriptor):
    with pytest.raises(GroupParseError):
        PermGroup.from_descriptor(descriptor)


def test_group_cap():
    gens = [Perm.from_cycles("(1 2 3 4 5 6 7)", 7), Perm.from_cycles("(1 2)", 7)]
    with pytest.raises(GroupTooLarge):
        enumerate_group(gens, cap=1000)
    assert enumerate_group(gens).order == 5040
