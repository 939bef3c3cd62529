from itertools import product

import pytest
from hypothesis import given, strategies as st

from dvdp.catalog import (CatalogError, DynkinType, PARAMETRIZATIONS, analyze_surface, build_surface,
                          constraint_holds, default_parameters, dynkin_parse, dynkin_rank, get_entry,
                          load_catalog, parameter_domain_check, parse_parameters, registry,
                          registry_contains, verify_entry, verify_family, verify_parametrization)
from dvdp.catalog.entries import parse_catalog
from dvdp.duval import ADEType
from dvdp.exactalg import FieldElement, field_create

ENTRIES = [e for e in load_catalog() if not e.is_registry]


# -- Dynkin types ---------------------------------------------------------------


def test_dynkin_ranks():
    assert dynkin_rank("3A_1+D_4") == 7
    assert dynkin_rank("E_8") == 8
    assert dynkin_rank("2A_1+2A_3") == 8
    assert dynkin_rank("smooth") == 0


def test_dynkin_matching():
    t = dynkin_parse("4A_1+D_4^0")
    assert t.matches(dynkin_parse("4A_1+D_4"))
    assert not t.matches(dynkin_parse("4A_1+D_4^1"))
    assert not dynkin_parse("E_8^3").matches(dynkin_parse("E_8^4"))
    assert str(dynkin_parse("D_4+A_1+A_1")) == "2A_1+D_4"
    with pytest.raises(ValueError):
        dynkin_parse("F_4")


ade = st.one_of(
    st.builds(ADEType, st.just("A"), st.integers(1, 8)),
    st.builds(ADEType, st.just("D"), st.integers(4, 8), st.one_of(st.none(), st.integers(0, 3))),
    st.builds(ADEType, st.just("E"), st.sampled_from([6, 7, 8]), st.one_of(st.none(), st.integers(0, 4))),
)


@given(st.lists(ade, max_size=6))
def test_dynkin_round_trip(types):
    t = DynkinType.of(types)
    assert DynkinType.parse(str(t)) == t
    assert t.rank == sum(x.n for x in types)


# -- catalog contents -----------------------------------------------------------


def test_catalog_shape():
    cat = load_catalog()
    assert len(ENTRIES) == 24 and len(registry()) == 37
    assert len({e.id for e in cat}) == len(cat)
    groups = {}
    for e in ENTRIES:
        groups.setdefault(e.source.split(":")[0], []).append(e.id)
    assert len(groups["coindex-char2"]) == 12
    assert len(groups["coindex-char3"]) == 7


def test_example_entries():
    e = get_entry("p2-E8-0")
    assert e.equations == ("w^2+z^3+x*y^5",) and str(e.expected_dynkin) == "E_8^0"
    e = get_entry("p3-4A2")
    assert str(e.expected_dynkin) == "4A_2" and e.expected_fsplit is False
    e = get_entry("p2-7A1")
    assert e.equations == ("w^2+x*y*z*(x+y+z)",) and str(e.expected_dynkin) == "7A_1"
    assert get_entry("p3-supersingular").expected_fsplit is True
    assert get_entry("p3-E8-0").expected_fsplit is False
    with pytest.raises(CatalogError):
        get_entry("nope")


def test_registry_constraints():
    assert constraint_holds("p=2", 2) and not constraint_holds("p=2", 3)
    assert constraint_holds("p>0", 3) and constraint_holds("p>2", 3) and not constraint_holds("p>2", 2)
    assert registry_contains(dynkin_parse("E_8^3"), 2)
    assert registry_contains(dynkin_parse("4A_2"), 3)
    assert not registry_contains(dynkin_parse("3A_1"), 2)
    for e in registry():
        assert e.expected_dynkin.rank == 9 - e.degree


def test_catalog_parse_errors():
    good = "x | p=2 | 1 | 1,1,2,3 | w^2+z^3+x*y^5 | - | E_8 | - | src"
    assert parse_catalog(good)[0].id == "x"
    with pytest.raises(CatalogError):
        parse_catalog(good + "\n" + good)
    with pytest.raises(CatalogError):
        parse_catalog("x | p=2 | 1 | 1,1,2,3 | w^2 | -")
    with pytest.raises(CatalogError):
        parse_catalog(good.replace("p=2", "q=2"))
    with pytest.raises(CatalogError):
        parse_catalog(good.replace("w^2+z^3+x*y^5", "w^2+z^3+x*y^4"))
    with pytest.raises(CatalogError):
        parse_catalog(good.replace("| - | E_8", "| D7 | E_8"))


# -- parameter domains ------------------------------------------------------------


def test_domain_examples():
    F4 = field_create(2, 2)
    w = F4.generator
    assert parameter_domain_check("D1", (1, w), F4)
    assert not parameter_domain_check("D1", (1, 1), F4)
    # a, b, c must be F_2-independent, impossible inside the 2-dimensional F_4
    assert not parameter_domain_check("D2", (1, w, F4.mul(w, w)), F4)
    assert not any(parameter_domain_check("D2", t, F4) for t in product(range(4), repeat=3))
    F8 = field_create(2, 3)
    g = F8.generator
    assert parameter_domain_check("D2", (1, g, F8.mul(g, g)), F8)
    with pytest.raises(CatalogError):
        parameter_domain_check("D1", (1, 2, 3), F4)


@pytest.mark.parametrize("entry", ["p2-4A1D4", "p2-8A1"])
def test_default_parameters_valid_and_distinct(entry):
    e = get_entry(entry)
    pts = default_parameters(e, 5)
    assert len(pts) == 5
    keys = {tuple((v.field.q, v.code) for v in prm.values()) for prm in pts}
    assert len(keys) == 5
    assert all(parameter_domain_check(e, prm) for prm in pts)


def test_parse_parameters():
    e = get_entry("p2-4A1D4")
    F = field_create(2, 2)
    prm = parse_parameters(e, "a=1, b=g", F)
    assert prm == {"a": FieldElement(F, 1), "b": FieldElement(F, F.generator)}
    for bad in ("a=1", "a=1,b=g,c=1", "a=1,b=x", "a=1,b=g*t", "a1"):
        with pytest.raises(CatalogError):
            parse_parameters(e, bad, F)
    with pytest.raises(CatalogError):
        build_surface(e, parse_parameters(e, "a=1,b=1", F))
    with pytest.raises(CatalogError):
        build_surface(e)


# -- verification -------------------------------------------------------------------


def test_verify_examples():
    rep = verify_entry(get_entry("p2-E7-3"))
    assert rep.passed and str(rep.analysis.dynkin) == "E_7^3"
    F4 = field_create(2, 2)
    e = get_entry("p2-4A1D4")
    rep = verify_entry(e, parse_parameters(e, "a=1,b=g", F4))
    assert rep.passed and rep.analysis.dynkin.base() == dynkin_parse("4A_1+D_4")
    assert "sampled parameters" in rep.note
    rep = verify_entry(get_entry("p3-E6-1"))
    assert rep.passed and str(rep.analysis.dynkin) == "E_6^1"


def test_failing_expectation_is_reported():
    good = get_entry("p2-E8-3")
    bad = parse_catalog("\n".join([
        "bad | p=2 | 1 | 1,1,2,3 | " + good.equations[0] + " | - | E_8^4 | yes | test"]))[0]
    rep = verify_entry(bad)
    assert not rep.passed
    failed = {c["name"] for c in rep.checks if not c["passed"]}
    assert failed == {"dynkin", "fsplit"}
    assert rep.summary().startswith("FAIL bad")


@pytest.mark.parametrize("e", ENTRIES, ids=lambda e: e.id)
def test_rank_degree_law_and_registry(e):
    for rep in verify_family(e, 2 if e.domain else 1):
        an = rep.analysis
        if e.expected_dynkin is not None:
            assert an.dynkin.rank == 9 - e.degree
            assert registry_contains(an.dynkin, e.p)
        assert rep.passed


@pytest.mark.parametrize("entry", ["p2-4A1D4", "p2-8A1"])
def test_family_type_is_constant(entry):
    reps = verify_family(get_entry(entry), 5)
    assert len(reps) == 5 and all(r.passed for r in reps)
    assert len({str(r.analysis.dynkin) for r in reps}) == 1


def test_supersingular_surface_analysis():
    an = analyze_surface(build_surface(get_entry("p3-supersingular")))
    assert an.fedder.fsplit
    assert str(an.dynkin) == "D_4"
    assert an.base_point is not None and an.base_point.smooth


# -- parametrizations ----------------------------------------------------------------


@pytest.mark.parametrize("which", sorted(PARAMETRIZATIONS))
def test_parametrizations_symbolic(which):
    res = verify_parametrization(which)
    assert res.identity_holds and res.symbolic
    assert res.rank == 7 and res.independence_holds


def test_eight_a1_needs_rescaling():
    assert verify_parametrization("8A1").unscaled_identity_holds is False


def test_seven_a1_over_f2():
    res = verify_parametrization("7A1", {})
    assert res.identity_holds and res.rank == 7 and res.field == "F_2"


@pytest.mark.parametrize("which", ["8A1", "4A1+D4"])
def test_parametrizations_at_sampled_points(which):
    e = get_entry(PARAMETRIZATIONS[which]["entry"])
    for prm in default_parameters(e, 5):
        res = verify_parametrization(which, prm)
        assert res.identity_holds and not res.symbolic
        assert res.rank == 7


def test_eight_a1_identity_at_degenerate_point():
    # a polynomial identity: it also holds off the domain, e.g. [1:w:w^2] over F_4
    F4 = field_create(2, 2)
    w = F4.generator
    prm = {"a": FieldElement(F4, 1), "b": FieldElement(F4, w), "c": FieldElement(F4, F4.mul(w, w))}
    assert verify_parametrization("8A1", prm).identity_holds
    with pytest.raises(KeyError):
        verify_parametrization("9A1")
