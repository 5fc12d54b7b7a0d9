import os
import sys
from fractions import Fraction

import pytest

# Add the src directory to the path so we can import the package
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from relideal.errors import (
    ActionMismatch,
    ArityMismatch,
    BadPrime,
    InconsistentLabeling,
    InsufficientPrecision,
    NotExpressible,
)
from relideal.multipoly import MultiPoly, TriangularBasis
from relideal.padiclift import bound_data, hensel_lift
from relideal.permgrp import Perm, PermGroup, stab_chain
from relideal.polytext import format_poly, parse_poly
from relideal.reconstruct import (
    align_action,
    compute_basis,
    express_root,
    expressible_roots,
    reconstruct_basis,
    root_relations_hold,
    verify_basis,
)

from tests.known_fields import (
    C5,
    C7,
    C11,
    C13,
    CYCLIC_CUBIC,
    D12,
    E8_C4,
    F20,
    F21,
    PURE_CUBIC,
    QUADRATIC,
    group_of,
    poly_of,
)


def formatted(result):
    return [format_poly(g) for g in result.polys]


def known_basis(field):
    n = len(field.degrees)
    return TriangularBasis(tuple(parse_poly(g, n) for g in field.basis))


@pytest.mark.parametrize("field", [QUADRATIC, CYCLIC_CUBIC, PURE_CUBIC], ids=lambda k: k.name)
def test_compute_small_bases(field):
    result = compute_basis(poly_of(field), group_of(field))
    assert result.provenance.p == field.prime
    assert formatted(result) == list(field.basis)
    assert verify_basis(result, poly_of(field), group_of(field), field.prime).passed


def test_compute_with_given_labeling():
    result = compute_basis(poly_of(C5), group_of(C5), prime=23, labeling=C5.labeling)
    assert formatted(result) == list(C5.basis)
    assert result.provenance.alignment == (0, 1, 2, 3, 4)
    assert result.provenance.labeling == C5.labeling
    assert result.denominators == (1, 1, 1, 1, 1)
    assert result.denominator_ratios()[0] == Fraction(1, result.provenance.deltas[0])


def test_trusted_labeling_skips_alignment():
    result = compute_basis(poly_of(C5), group_of(C5), prime=23, labeling=C5.labeling, align=False)
    assert formatted(result) == list(C5.basis)
    assert result.provenance.alignment == ()


def test_alignment_from_sorted_roots():
    f, G = poly_of(C5), group_of(C5)
    result = compute_basis(f, G, prime=23)
    assert result.polys[0] == MultiPoly.from_univariate(f, 1, 5)
    assert verify_basis(result, f, G, 23).passed
    roots = hensel_lift(f, 23, 1).with_labeling(result.provenance.labeling)
    for g in result.basis.change_ring(roots.ring).polys:
        assert not g.evaluate(roots.roots)


def test_alignment_for_frobenius_group():
    f, G = poly_of(F20), group_of(F20)
    result = compute_basis(f, G, prime=F20.prime)
    assert result.basis.degrees == F20.degrees
    report = verify_basis(result, f, G, F20.prime)
    assert report.passed, report.to_dict()
    assert set(expressible_roots(result)) == {3, 4, 5}


def test_group_in_input_labeling():
    f, G = poly_of(F20), group_of(F20)
    p = F20.prime
    bounds = bound_data(f, stab_chain(G).degrees, p)
    roots = hensel_lift(f, p, bounds.e)
    pi, aligned = align_action(f, G, roots)
    original = reconstruct_basis(f, G.conjugate(pi), roots)
    assert original.provenance.labeling == roots.residues()
    assert verify_basis(original, f, G.conjugate(pi), p).passed
    assert aligned.provenance.alignment == pi.images


def test_wrong_labeling_is_rejected():
    f, G = poly_of(C5), group_of(C5)
    bounds = bound_data(f, stab_chain(G).degrees, 23)
    swapped = (9, 19, 13, 17, 12)
    roots = hensel_lift(f, 23, bounds.e).with_labeling(swapped)
    with pytest.raises(InconsistentLabeling):
        reconstruct_basis(f, G, roots, bounds)


def test_precision_must_cover_the_bound():
    f, G = poly_of(C5), group_of(C5)
    roots = hensel_lift(f, 23, 2).with_labeling(C5.labeling)
    with pytest.raises(InsufficientPrecision):
        reconstruct_basis(f, G, roots)
    with pytest.raises(InsufficientPrecision):
        compute_basis(f, G, prime=23, precision=2)


def test_non_split_prime_override():
    with pytest.raises(BadPrime):
        compute_basis(poly_of(C5), group_of(C5), prime=29)


def test_too_small_group_has_no_alignment():
    f = poly_of(PURE_CUBIC)
    C3 = PermGroup(3, [Perm.from_cycles("(1 2 3)", 3)])
    with pytest.raises(ActionMismatch):
        compute_basis(f, C3)


def test_group_degree_must_match():
    with pytest.raises(ActionMismatch):
        compute_basis(poly_of(C5), group_of(PURE_CUBIC))


def test_alignment_candidates_are_respected():
    f, G = poly_of(C5), group_of(C5)
    bounds = bound_data(f, stab_chain(G).degrees, 23)
    roots = hensel_lift(f, 23, bounds.e).with_labeling((9, 19, 13, 17, 12))
    with pytest.raises(ActionMismatch):
        align_action(f, G, roots, candidates=[(0, 1, 2, 3, 4)])
    pi, result = align_action(f, G, roots, candidates=[(0, 1, 2, 3, 4), (1, 0, 2, 3, 4)])
    assert pi.images == (1, 0, 2, 3, 4)
    assert formatted(result) == list(C5.basis)


def test_express_root():
    B = known_basis(C5)
    assert format_poly(express_root(B, 2)) == "-T1^2 + 2"
    assert format_poly(express_root(B, 4)) == "T1^3 - 3*T1"
    assert sorted(expressible_roots(B)) == [2, 3, 4, 5]
    S3 = known_basis(PURE_CUBIC)
    assert format_poly(express_root(S3, 3)) == "-T2 - T1"
    with pytest.raises(NotExpressible):
        express_root(S3, 2)
    with pytest.raises(ArityMismatch):
        express_root(S3, 4)


def test_root_relations():
    f = poly_of(C5)
    assert root_relations_hold(known_basis(C5), f)
    assert root_relations_hold(known_basis(C5).truncate(2), f, upto=2)
    broken = list(C5.basis)
    broken[1] = "T2 + T1^2 - 3"
    assert not root_relations_hold(TriangularBasis(tuple(parse_poly(g, 5) for g in broken)), f)


def test_verify_known_basis():
    report = verify_basis(known_basis(C5), poly_of(C5), group_of(C5), 23)
    assert report.passed
    assert [c.name for c in report.checks] == [
        "shape",
        "integrality",
        "second-prime",
        "self-reduction",
        "root-relations",
    ]
    assert report.second_prime == 43


def test_second_prime_works_at_the_exponent_of_the_first():
    f, G = poly_of(C5), group_of(C5)
    e = bound_data(f, stab_chain(G).degrees, 23).e
    report = verify_basis(known_basis(C5), f, G, 23)
    second = next(c for c in report.checks if c.name == "second-prime")
    assert second.detail == f"all 5 conjugates vanish modulo 43^{e}"
    override = verify_basis(known_basis(C5), f, G, 23, exponent=2)
    assert override.passed
    assert override.checks[2].detail.endswith("modulo 43^2")


def test_verify_flags_corrupted_basis():
    broken = list(C5.basis)
    broken[1] = "T2 + T1^2 - 3"
    B = TriangularBasis(tuple(parse_poly(g, 5) for g in broken))
    report = verify_basis(B, poly_of(C5), group_of(C5), 23)
    assert not report.passed
    failed = {c.name for c in report.failures()}
    assert "root-relations" in failed
    assert "second-prime" in failed
    assert "shape" not in failed


def test_verify_flags_wrong_shape():
    report = verify_basis(known_basis(C5), poly_of(C5), group_of(F20), 23)
    assert not report.passed
    assert report.checks[0].name == "shape"


@pytest.mark.slow
def test_alignment_for_cyclic_septic():
    f, G = poly_of(C7), group_of(C7)
    result = compute_basis(f, G, prime=C7.prime)
    assert result.basis.degrees == C7.degrees
    assert verify_basis(result, f, G, C7.prime).passed


@pytest.mark.slow
@pytest.mark.parametrize("field", [D12, F21, E8_C4, C11, C13], ids=lambda k: k.name)
def test_compute_and_verify_larger_fields(field):
    f, G = poly_of(field), group_of(field)
    result = compute_basis(f, G, prime=field.prime, labeling=field.labeling)
    assert result.polys[0] == MultiPoly.from_univariate(f, 1, f.degree)
    assert result.basis.degrees == field.degrees
    report = verify_basis(result, f, G, field.prime)
    assert report.passed, report.to_dict()


@pytest.mark.slow
def test_cyclic_degree_13_denominator():
    result = compute_basis(poly_of(C13), group_of(C13), prime=C13.prime, labeling=C13.labeling)
    assert 435105007 in result.denominators
    for den, delta in zip(result.denominators, result.provenance.deltas):
        assert delta % den == 0


@pytest.mark.parametrize("field", [F20, D12], ids=lambda k: k.name)
def test_basis_is_stable_under_extra_precision(field):
    f, G = poly_of(field), group_of(field)
    bounds = bound_data(f, stab_chain(G).degrees, field.prime)
    base = compute_basis(f, G, prime=field.prime, labeling=field.labeling)
    higher = compute_basis(
        f, G, prime=field.prime, precision=bounds.e + 5, labeling=field.labeling
    )
    assert base.provenance.e == bounds.e
    assert higher.provenance.e == bounds.e + 5
    assert higher.provenance.alignment == base.provenance.alignment
    assert higher.polys == base.polys


@pytest.mark.parametrize(
    "field",
    [
        QUADRATIC,
        CYCLIC_CUBIC,
        PURE_CUBIC,
        C5,
        F20,
        pytest.param(D12, marks=pytest.mark.slow),
        pytest.param(C7, marks=pytest.mark.slow),
        pytest.param(F21, marks=pytest.mark.slow),
        pytest.param(E8_C4, marks=pytest.mark.slow),
        pytest.param(C11, marks=pytest.mark.slow),
        pytest.param(C13, marks=pytest.mark.slow),
    ],
    ids=lambda k: k.name,
)
def test_expressed_roots_agree_with_lifted_roots(field):
    f, G = poly_of(field), group_of(field)
    result = compute_basis(f, G, prime=field.prime, labeling=field.labeling)
    prov = result.provenance
    roots = hensel_lift(f, prov.p, prov.e).with_labeling(prov.labeling)
    found = expressible_roots(result)
    assert found
    for i, P in found.items():
        assert P.change_ring(roots.ring).evaluate(roots.roots) == roots.roots[i - 1]
