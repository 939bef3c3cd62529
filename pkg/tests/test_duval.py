import pytest
from hypothesis import given, settings, strategies as st

from dvdp.catalog import build_surface, default_parameters, load_catalog
from dvdp.duval import (ADEType, LocalModel, artin_form, artin_forms, artin_tau_table, classify,
                        classify_ade, local_equation, local_model, needs_coindex, resolve_dual_graph,
                        tjurina_ideal, tjurina_number)
from dvdp.exactalg import PolyRing, brute_local_dimension, field_create
from dvdp.wvariety import singular_points, surface_create

XYZ = ("x", "y", "z")


def germ(p, text):
    return PolyRing(field_create(p), XYZ).parse(text)


def hyp(p, eq, weights):
    return surface_create("hypersurface", field_create(p), [eq], weights, ("x", "y", "z", "w"))


# -- local equations ----------------------------------------------------------


def test_local_equation_degree_one():
    X = hyp(2, "w^2+z^3+x*y^5", (1, 1, 2, 3))
    (sp,), _ = singular_points(X)
    m = local_equation(X, sp)
    assert m.f.ring.vars == ("y", "z", "w")
    assert m.f == m.f.ring.parse("w^2+z^3+y^5")


def test_local_equation_cubic():
    X = hyp(2, "w*z^2+x^3+y^2*z", (1, 1, 1, 1))
    (sp,), _ = singular_points(X)
    assert sp.chart.chart_var == "w" and sp.coords == (0, 0, 0)
    m = local_equation(X, sp)
    assert m.f == m.f.ring.parse("z^2+x^3+y^2*z")


def test_translate_at_origin_is_identity():
    f = germ(3, "x*y+z^2")
    assert f.translate((0, 0, 0)) == f
    assert local_model(f).f == f


# -- Tjurina numbers -------------------------------------------------------------


def test_tjurina_values():
    assert tjurina_number(germ(3, "x*y+z^2")) == 1
    # char 2: the z-partial vanishes, so the ideal is (x, y, z^2)
    assert tjurina_number(germ(2, "x*y+z^2")) == 2
    t2 = tjurina_number(germ(2, "z^2+x^3+y^5"))
    t3 = tjurina_number(germ(3, "z^2+x^3+y^5"))
    assert (t2, t3) == (16, 12)
    assert t2 > t3 > 8


@pytest.mark.parametrize("rec", artin_forms(), ids=lambda r: f"p{r[0]}-{r[1]}{r[2]}^{r[3]}")
def test_tjurina_oracle_on_artin_forms(rec):
    f = artin_form(*rec[:4])
    assert tjurina_number(f) == brute_local_dimension(tjurina_ideal(f))


def test_tau_tables():
    t2 = artin_tau_table(2)
    assert sorted(t2[("E", 8, r)] for r in range(5)) == [8, 10, 12, 14, 16]
    assert len({t2[("E", 8, r)] for r in range(5)}) == 5
    t3 = artin_tau_table(3)
    assert len({t3[("E", 6, r)] for r in range(2)}) == 2
    assert (t3[("E", 6, 0)], t3[("E", 6, 1)]) == (9, 7)
    assert not any(k[0] == "A" for k in list(t2) + list(t3))
    assert not needs_coindex(2, "A") and not needs_coindex(3, "D") and needs_coindex(3, "E")


# -- resolution graphs ---------------------------------------------------------


def _is_chain(graph, n):
    deg = [0] * len(graph.nodes)
    for a, b in graph.edges:
        deg[a] += 1
        deg[b] += 1
    return len(graph.nodes) == n and len(graph.edges) == n - 1 and max(deg, default=0) <= 2


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_a_n_chains(p, n):
    g = resolve_dual_graph(LocalModel(germ(p, f"x*y+z^{n + 1}")))
    assert _is_chain(g, n)
    assert g.ade() == ("A", n)


def test_exceptional_graphs():
    g = resolve_dual_graph(LocalModel(germ(2, "z^2+x^3+y^2*z")))
    assert g.ade() == ("E", 6) and len(g.nodes) == 6
    g = resolve_dual_graph(LocalModel(germ(2, "z^2+x^3+y^5")))
    assert g.ade() == ("E", 8) and len(g.nodes) == 8


# -- classification -------------------------------------------------------------


def test_classify_examples():
    assert classify_ade(LocalModel(germ(2, "z^2+x^3+y^5"))) == ADEType("E", 8, 0)
    X = hyp(2, "w^2+z^3+x*y^5+y^3*w", (1, 1, 2, 3))
    (sp,), _ = singular_points(X)
    assert classify(local_equation(X, sp)).ade == ADEType("E", 8, 3)
    X = hyp(3, "w^2+z^3+x*y^5+y^4*z", (1, 1, 2, 3))
    (sp,), _ = singular_points(X)
    assert classify(local_equation(X, sp)).ade == ADEType("E", 8, 1)


@pytest.mark.parametrize("rec", artin_forms(), ids=lambda r: f"p{r[0]}-{r[1]}{r[2]}^{r[3]}")
def test_artin_forms_classify_to_themselves(rec):
    p, fam, n, r, _ = rec
    c = classify(LocalModel(artin_form(p, fam, n, r)))
    assert c.ade == ADEType(fam, n, r)
    assert len(c.graph.nodes) == n


def test_ade_type_validation():
    assert str(ADEType.parse("E_8^3")) == "E_8^3"
    assert ADEType.parse("D4").rank == 4
    for bad in (("E", 9, None), ("D", 3, None), ("A", 0, None), ("A", 2, 1)):
        with pytest.raises(ValueError):
            ADEType(*bad)


def _catalog_points():
    for e in load_catalog():
        if e.is_registry:
            continue
        X = build_surface(e, default_parameters(e)[0] if e.domain else None)
        for sp in singular_points(X)[0]:
            yield e.id, X, sp


@pytest.mark.parametrize("name,X,sp", list(_catalog_points()))
def test_node_count_equals_rank(name, X, sp):
    c = classify(local_equation(X, sp))
    assert len(c.graph.nodes) == c.ade.rank


def _change_coordinates(f, a, b, c):
    # unipotent linear change x -> x + a*y + b*z, y -> y + c*z
    R = f.ring
    x, y, z = R.gens()
    imgs = {"x": x + y.scale(a) + z.scale(b), "y": y + z.scale(c), "z": z}
    return f.substitute(imgs)


@settings(max_examples=40)
@given(st.sampled_from(artin_forms()), st.data())
def test_classification_invariant_under_coordinate_change(rec, data):
    p = rec[0]
    a, b, c = (data.draw(st.integers(0, p - 1)) for _ in range(3))
    f = artin_form(*rec[:4])
    g = _change_coordinates(f, a, b, c)
    cf, cg = classify(LocalModel(f)), classify(LocalModel(g))
    assert cf.ade == cg.ade and cf.tau == cg.tau


@settings(max_examples=25)
@given(st.sampled_from([2, 3]), st.integers(1, 6), st.data())
def test_a_n_invariant_under_coordinate_change(p, n, data):
    a, b, c = (data.draw(st.integers(0, p - 1)) for _ in range(3))
    f = germ(p, f"x*y+z^{n + 1}")
    cg = classify(LocalModel(_change_coordinates(f, a, b, c)))
    assert cg.ade == ADEType("A", n)
    assert cg.tau == tjurina_number(f)
