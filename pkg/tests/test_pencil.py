from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from dvdp.catalog import build_surface, get_entry
from dvdp.exactalg import FieldElement, PolyRing, embedding, field_create
from dvdp.pencil import (MemberCurve, PencilError, count_points, count_projective_points, curve_smooth,
                         member_curve, random_section, sample_members, section_variables, trial_rng)
from dvdp.wvariety import base_point_check, surface_create

XYZW = ("x", "y", "z", "w")
SS_SURFACE = "w^2+z^3+x^2*y^2*z-x^4*z+x^6"


def hyp(p, eq, weights, k=1):
    return surface_create("hypersurface", field_create(p, k), [eq], weights, XYZW)


def plane_curve(p, k, text):
    F = field_create(p, k)
    R = PolyRing(F, ("x", "y", "z"))
    return MemberCurve(None, (), (), None, (R.parse(text),), (1, 1, 1), F)


def brute_count(C, F):
    """Points of the weighted projective curve over F: nonzero cone points / (q-1)."""
    polys = [g.to_field(F) if F is not C.field else g for g in C.gens]
    n = polys[0].ring.nvars
    cone = sum(1 for pt in product(range(F.q), repeat=n)
               if any(pt) and all(g.evaluate(pt) == 0 for g in polys))
    assert cone % (F.q - 1) == 0
    return cone // (F.q - 1)


def test_line_member_equation():
    F9 = field_create(3, 2)
    X = hyp(3, SS_SURFACE, (1, 1, 2, 3))
    a = F9.generator
    C = member_curve(X, [FieldElement(F9, a), FieldElement(F9, F9.neg(1))], F9)
    assert C.eliminated == "y" and C.vars == ("x", "z", "w")
    R = C.g.ring
    a2m1 = FieldElement(F9, F9.sub(F9.mul(a, a), 1))
    expected = R.parse("w^2+z^3+x^6") + R.parse("x^4*z").scale(a2m1)
    assert C.g == expected


def test_degree_two_section():
    X = hyp(2, "w^2+y*z^3+x*y^3", (1, 1, 1, 2))
    assert section_variables(X) == ("x", "y", "z")
    C = member_curve(X, [0, 0, 1])
    assert C.vars == ("x", "y", "w") and C.ambient_weights == (1, 1, 2)
    assert C.g == C.g.ring.parse("w^2+x*y^3")
    with pytest.raises(PencilError):
        member_curve(X, [0, 0, 0])
    with pytest.raises(PencilError):
        member_curve(X, [1, 0])


def test_smoothness_examples():
    F9 = field_create(3, 2)
    X = hyp(3, SS_SURFACE, (1, 1, 2, 3))
    # y = a x with a = 0 and a = 1
    assert curve_smooth(member_curve(X, [0, FieldElement(F9, 1)], F9))
    assert not curve_smooth(member_curve(X, [FieldElement(F9, 1), FieldElement(F9, F9.neg(1))], F9))
    assert curve_smooth(plane_curve(2, 1, "x^3+y^3+z^3"))
    assert not curve_smooth(plane_curve(2, 1, "x^3+y^2*z"))


def test_fermat_cubic_over_f4():
    C = plane_curve(2, 2, "x^3+y^3+z^3")
    ar = count_points(C)
    assert (ar.q, ar.N, ar.a, ar.ordinary) == (4, 9, -4, False)
    assert brute_count(C, C.field) == 9


def test_line_members_supersingular_over_f9():
    F9 = field_create(3, 2)
    X = hyp(3, SS_SURFACE, (1, 1, 2, 3))
    smooth = 0
    for a in range(F9.q):
        C = member_curve(X, [FieldElement(F9, a), FieldElement(F9, F9.neg(1))], F9)
        if a in (1, F9.neg(1)):
            assert not curve_smooth(C)
            continue
        ar = count_points(C)
        assert ar.smooth and ar.a % 3 == 0 and not ar.ordinary
        smooth += 1
    assert smooth == 7


def _members(entry, k, n, seed=0):
    X = build_surface(get_entry(entry))
    F = field_create(X.p, k)
    out = []
    t = 0
    while len(out) < n and t < 400:
        C = member_curve(X, random_section(X, F, trial_rng(seed, t)), F)
        t += 1
        if curve_smooth(C):
            out.append(C)
    return out


SMALL = [("p2-E8-4", 2), ("p2-E8-4", 3), ("p2-E7-3", 2), ("p2-D5-1", 2), ("p2-E6-1", 2),
         ("p3-supersingular", 2), ("p3-E6-1", 1), ("p2-A1D6-2", 3)]


@pytest.mark.parametrize("entry,k", SMALL)
def test_counts_match_brute_force(entry, k):
    X = build_surface(get_entry(entry))
    F = field_create(X.p, k)
    for t in range(6):
        C = member_curve(X, random_section(X, F, trial_rng(7, t)), F)
        assert count_projective_points(C, F) == brute_count(C, F)


@pytest.mark.parametrize("entry,k", [("p2-E8-4", 2), ("p2-D5-1", 2), ("p2-E7-3", 3), ("p3-supersingular", 1),
                                     ("p3-E8-2", 1), ("p2-E6-1", 2)])
def test_weil_relation_and_stable_ordinarity(entry, k):
    members = _members(entry, k, 4)
    assert len(members) == 4
    for C in members:
        small = count_points(C, k, smooth=True)
        big = count_points(C, 2 * k, smooth=True)
        q = small.q
        assert big.a == small.a ** 2 - 2 * q
        assert small.ordinary == big.ordinary
        assert small.a ** 2 <= 4 * q and big.a ** 2 <= 4 * big.q


@settings(max_examples=30)
@given(st.sampled_from(["p2-E8-4", "p2-E8-0", "p3-supersingular", "p3-E8-0"]), st.integers(0, 10 ** 6))
def test_degree_one_members_contain_base_point(entry, seed):
    X = build_surface(get_entry(entry))
    k = 4 if X.p == 2 else 2
    F = field_create(X.p, k)
    bp = base_point_check(X)
    emb = embedding(X.field, F)
    C = member_curve(X, random_section(X, F, trial_rng(seed, 0)), F)
    pt = {v: emb[c] for v, c in zip(X.vars, bp.point)}
    assert C.g.evaluate(tuple(pt[v] for v in C.vars)) == 0


def test_seven_a1_members_all_singular():
    assert sample_members(build_surface(get_entry("p2-7A1")), 4, 50, 0).smooth_count == 0


def test_sampling_frozen_counts():
    E80 = build_surface(get_entry("p2-E8-0"))
    rep = sample_members(E80, 4, 50, 0)
    assert (rep.q, rep.smooth_count, rep.singular_count) == (16, 0, 50)
    E84 = build_surface(get_entry("p2-E8-4"))
    rep = sample_members(E84, 4, 50, 0)
    assert (rep.smooth_count, rep.ordinary_count) == (46, 46)
    X = build_surface(get_entry("p3-supersingular"))
    rep = sample_members(X, 4, 20, 0)
    assert rep.q == 81 and rep.smooth_count > 0
    assert rep.supersingular_count == rep.smooth_count


def test_sampling_deterministic():
    X = build_surface(get_entry("p2-D5-1"))
    a = sample_members(X, 4, 10, 3).to_json(detail=True)
    b = sample_members(X, 4, 10, 3).to_json(detail=True)
    c = sample_members(X, 4, 10, 4).to_json(detail=True)
    assert a == b
    assert a["members"] != c["members"]
    with pytest.raises(PencilError):
        sample_members(X, 4, 0)


def test_field_mismatch():
    X = hyp(2, "w^2+z^3+x*y^5", (1, 1, 2, 3), k=2)
    with pytest.raises(PencilError):
        sample_members(X, 3, 5)


@pytest.mark.parametrize("entry", ["p2-D5-0", "p2-E6-0", "p2-E7-2", "p2-E8-3"])
def test_non_fsplit_members_are_supersingular(entry):
    # smooth members exist, yet none is ordinary
    rep = sample_members(build_surface(get_entry(entry)), 4, 50, 0)
    assert rep.smooth_count > 0 and rep.ordinary_count == 0
    assert rep.supersingular_count == rep.smooth_count
