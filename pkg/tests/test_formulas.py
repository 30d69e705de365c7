import random
from fractions import Fraction

import pytest

from campana import formulas as fm, kernels
from campana.circuits import Circuit
from campana.forms import BinaryForm, X_FORM


def _stat(f):
    s = fm.stats(f)
    return (s.universals, s.existentials, s.atoms, s.degree_bound)


# quantifier/atom/degree ledger, frozen after independent recomputation
def test_tower_ledger():
    assert _stat(fm.build_S()) == (0, 3, 1, 4)
    assert _stat(fm.build_T()) == (0, 7, 2, 4)
    assert _stat(fm.build_T_unit()) == (0, 15, 5, 4)
    assert _stat(fm.build_I()) == (0, 34, 12, 4)
    assert _stat(fm.build_J()) == (0, 138, 48, 4)
    assert _stat(fm.build_Jabcd()) == (0, 277, 96, 4)
    assert _stat(fm.build_inv_J()) == (0, 278, 97, 4)
    assert _stat(fm.build_disjoint()) == (0, 556, 193, 9)
    assert _stat(fm.build_premise()) == (0, 834, 290, 9)
    for n in (2, 3, 10, 100):
        assert _stat(fm.build_Jn(n)) == (0, 556, 193, max(n, 4))
        assert _stat(fm.build_inv_Jn(n)) == (0, 557, 194, max(n, 4))


def test_headline_ledger():
    for n in (2, 3, 10, 100):
        assert _stat(fm.build_campana(n)) == \
            (838, 558, 1, max(194 * n + 2611, 3387))
        assert _stat(fm.build_campana(n, real_embedded=True)) == \
            (838, 558, 1, max(2 * n + 19, 27))
    assert _stat(fm.build_integrality()) == (838, 278, 1, 2995)
    assert _stat(fm.build_integrality(real_embedded=True)) == (838, 278, 1, 27)
    with pytest.raises(ValueError):
        fm.build_campana(1)


def test_build_S_prefix_and_witness():
    f = fm.build_S()
    assert f.prefix[0] == ("exists", "x2")
    assert f.free == ("a", "b", "r")
    # r = 2 with x2 = x3 = x4 = 0 satisfies r^2 - 4 = 0 for any a, b
    env = {"a": 1, "b": 1, "r": 2, "x2": 0, "x3": 0, "x4": 0}
    assert fm.evaluate_matrix(f, env)
    env["r"] = 3
    assert not fm.evaluate_matrix(f, env)


def test_build_T_witness():
    f = fm.build_T()
    # r = 4 = 2 + 2; both summands carry the trivial witness
    env = {n: 0 for _, n in f.prefix}
    env.update({"a": 1, "b": 1, "r": 4})
    x = f.prefix[0][1]
    env[x] = 2  # the split point
    assert fm.evaluate_matrix(f, env)


def test_check_names_rejects_gensym_collisions():
    with pytest.raises(ValueError):
        fm.build_S(a_var="x3")
    with pytest.raises(ValueError):
        fm.build_J(a_var="t", b_var="t")


def test_combine_pair_zero_set():
    x, y = Circuit.var("x"), Circuit.var("y")
    h = fm.combine_pair(x, y)
    rng = random.Random(21)
    for _ in range(300):
        vx = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
        vy = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
        val = h.evaluate({"x": vx, "y": vy})
        assert (val == 0) == (vx == 0 and vy == 0)


def test_combine_many_zero_set_and_degree():
    xs = [Circuit.var(f"v{i}") for i in range(4)]
    h = fm.combine_many([x**2 + 1 if i == 0 else x for i, x in enumerate(xs)])
    assert h.degree() == 4 * 2
    rng = random.Random(22)
    for _ in range(200):
        env = {f"v{i}": Fraction(rng.randint(-9, 9), rng.randint(1, 4))
               for i in range(4)}
        vals = [env["v0"]**2 + 1, env["v1"], env["v2"], env["v3"]]
        assert (h.evaluate(env) == 0) == all(v == 0 for v in vals)
    assert fm.combine_many([xs[0]]) is xs[0]


def test_combine_sos_zero_set():
    x, y, z = (Circuit.var(n) for n in "xyz")
    h = fm.combine_sos([x, y - 1, z])
    assert h.evaluate({"x": 0, "y": 1, "z": 0}) == 0
    assert h.evaluate({"x": 0, "y": 0, "z": 0}) > 0


def test_norm_form_closed_forms():
    f2 = fm.norm_form(2)
    assert f2.evaluate({"y1": 3, "y2": 1}) == 7  # 3^2 - 2
    f3 = fm.norm_form(3)
    rng = random.Random(23)
    for _ in range(100):
        ys = {f"y{i}": rng.randint(-30, 30) for i in (1, 2, 3)}
        want = (ys["y1"]**3 + 2 * ys["y2"]**3 + 4 * ys["y3"]**3
                - 6 * ys["y1"] * ys["y2"] * ys["y3"])
        assert f3.evaluate(ys) == want


def test_norm_form_matches_kernel():
    rng = random.Random(24)
    for n in range(1, 7):
        f = fm.norm_form(n)
        assert f.degree() == n
        for _ in range(30):
            w = [rng.randint(-20, 20) for _ in range(n)]
            env = {f"y{i+1}": w[i] for i in range(n)}
            assert f.evaluate(env) == kernels.norm_int(w)


def test_prenex_or_trivial_example():
    # forall x: x != 0  OR  exists z: z - 1 = 0
    x, z = Circuit.var("x"), Circuit.var("z")
    uni = fm.Formula([("forall", "x")], ("neq", x), ())
    exi = fm.Formula([("exists", "z")], ("eq", z - 1), ())
    g = fm.prenex_or(uni, exi)
    assert _stat(g) == (1, 2, 1, 3)
    assert [q for q, _ in g.prefix] == ["forall", "exists", "exists"]
    # (y x - 1)(z - 1): at x = 5 take y = 1/5; at x = 0 take z = 1
    y = g.prefix[1][1]
    assert fm.evaluate_matrix(g, {"x": 5, y: Fraction(1, 5), "z": 7})
    assert fm.evaluate_matrix(g, {"x": 0, y: 3, "z": 1})
    assert not fm.evaluate_matrix(g, {"x": 0, y: 3, "z": 2})


def test_substitute_form_degree():
    base = fm.build_campana(2)
    F = BinaryForm({(2, 0): 1, (0, 2): 1})
    g = fm.substitute_form(base, F)
    assert fm.stats(g).degree_bound == 2 * 3387
    assert "lam" in g.free and "r" not in g.free
    gx = fm.substitute_form(base, X_FORM)
    assert fm.stats(gx).degree_bound == 3387


def test_substitute_form_preserves_matrix_semantics():
    f = fm.build_S()
    F = BinaryForm.from_x_coeffs([1, 1])  # x + y, so r := lam + 1
    g = fm.substitute_form(f, F)
    env = {"a": 1, "b": 1, "lam": 1, "x2": 0, "x3": 0, "x4": 0}
    assert fm.evaluate_matrix(g, env)  # lam + 1 = 2 is in S
    env["lam"] = 2
    assert not fm.evaluate_matrix(g, env)


def test_emit_parse_round_trip():
    for f in (fm.build_S(), fm.build_T_unit(), fm.build_campana(2),
              fm.build_integrality(real_embedded=True),
              fm.substitute_form(fm.build_S(), BinaryForm({(2, 0): 1}))):
        blob = fm.emit(f, "json")
        g = fm.parse(blob)
        assert g == f
        assert fm.stats(g) == fm.stats(f)
        assert fm.emit(g, "json") == blob


def test_emit_other_formats():
    f = fm.build_S()
    sexpr = fm.emit(f, "sexpr").decode()
    assert sexpr.startswith("(formula (free a b r)")
    latex = fm.emit(f, "latex").decode()
    assert r"\exists x2" in latex
    with pytest.raises(ValueError):
        fm.emit(f, "xml")
