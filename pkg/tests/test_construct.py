import random

import pytest

from arrlab.combin import isomorphisms, ordered_isomorphic
from arrlab.construct import (
    AugmentationError,
    CertificationError,
    ConstructionError,
    GenericityError,
    augment,
    augment_with,
    certify_equivalence,
    certify_via_bases,
    is_real_complexified,
    make_generic,
    ordered_union,
    random_projective_transform,
    theorem_main_construction,
    validate_augmentation,
)
from arrlab.field import QQ
from arrlab.geometry import Arrangement, ProjLine, compute_lattice
from arrlab.paper import build_paper_arrangement
from arrlab.verify import verify_distinguishing_features

BRAID = Arrangement(
    QQ, tuple(ProjLine.of(QQ, *c) for c in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)])
)


def test_ordered_union_requires_genericity():
    with pytest.raises(GenericityError) as info:
        ordered_union(BRAID, BRAID)
    assert info.value.condition == "shared-line"
    moved = make_generic(BRAID, BRAID, seed=4)
    u = ordered_union(BRAID, moved.arrangement)
    assert len(u) == 12 and u.lines[:6] == BRAID.lines


def test_random_transform_keeps_lattice():
    for seed in range(5):
        b = random_projective_transform(BRAID, seed)
        assert ordered_isomorphic(BRAID, b)


def test_make_generic_is_seeded():
    a = make_generic(BRAID, BRAID, seed=9)
    b = make_generic(BRAID, BRAID, seed=9)
    assert a.arrangement == b.arrangement and a.matrix_strings() == b.matrix_strings()


def test_make_generic_rejects_zero_tries():
    with pytest.raises(ConstructionError):
        make_generic(BRAID, BRAID, seed=0, max_tries=0)


def test_augment_is_valid():
    for seed in range(10):
        for k in range(6):
            aug = augment(BRAID, k, seed)
            rep = validate_augmentation(BRAID, aug, line=k)
            assert rep.passed and rep.designated == k
            assert rep.new_indices == (6, 7)


def test_augment_with_explicit_lines():
    m = build_paper_arrangement("M+")
    aug = augment_with(m, 0, ProjLine.of(m.field, 1, -1, 2), ProjLine.of(m.field, 1, -1, -2))
    assert aug.lines == build_paper_arrangement("Frak-M+").lines


def test_augment_with_rejects_nonconcurrent():
    with pytest.raises(AugmentationError) as info:
        augment_with(BRAID, 0, ProjLine.of(QQ, 1, 2, 7), ProjLine.of(QQ, 3, 1, 11))
    assert info.value.condition


def test_augment_with_rejects_nongeneric():
    # both new lines pass through the triple point [0:0:1] of lines 1, 2, 4
    with pytest.raises(AugmentationError):
        augment_with(BRAID, 0, ProjLine.of(QQ, 1, 2, 0), ProjLine.of(QQ, 1, 3, 0))


def test_validate_rejects_wrong_shape():
    rep = validate_augmentation(BRAID, BRAID)
    assert not rep
    assert rep.witnesses()


def test_construction_on_braid_pair():
    for seed in (1, 2):
        b = make_generic(BRAID, BRAID, seed).arrangement
        con = theorem_main_construction(BRAID, b, 0, seed)
        assert len(con.left) == len(con.right) == 14
        assert con.phi_valid and con.phi.is_identity_on(range(14))
        assert con.union12.line_set() == con.union21.line_set()
        for x in (con.left, con.right):
            assert verify_distinguishing_features(x, con.partition()).overall
        maps = isomorphisms(con.left, con.right)
        assert maps and all({m.perm[i] for i in range(6)} == set(range(6)) for m in maps)
        cert = certify_equivalence(con.left, con.right)
        assert cert.kind == "homotopy" and not cert.conditional
        assert cert.base.line_set() == con.union12.line_set()


def test_certificate_kinds():
    m = build_paper_arrangement("M+")
    fm = build_paper_arrangement("Frak-M+")
    other = augment(m, 1, seed=0)
    cert = certify_equivalence(fm, other)
    assert cert.kind == "pi1"
    assert certify_equivalence(other, fm).kind == "pi1"
    with pytest.raises(CertificationError):
        certify_equivalence(fm, build_paper_arrangement("Frak-N+"))


def test_certificate_symmetric_on_real_example():
    a = augment(BRAID, 0, seed=1)
    b = augment(BRAID, 3, seed=2)
    c1, c2 = certify_equivalence(a, b), certify_equivalence(b, a)
    assert c1.kind == c2.kind == "homotopy"
    assert {c1.line_left, c1.line_right} == {c2.line_left, c2.line_right}


def test_conditional_certificate_across_bases():
    chain_x = [build_paper_arrangement("M+"), build_paper_arrangement("Frak-M+")]
    chain_y = [build_paper_arrangement("N+"), build_paper_arrangement("Frak-N+")]
    cert = certify_via_bases(chain_x, chain_y, "bases are equivalent")
    assert cert.conditional and cert.kind == "pi1"
    assert cert.to_dict()["external_assumptions"] == ["bases are equivalent"]


def test_real_complexified():
    assert is_real_complexified(BRAID)
    assert is_real_complexified(build_paper_arrangement("ACCM-M"))
    assert not is_real_complexified(build_paper_arrangement("M+"))
