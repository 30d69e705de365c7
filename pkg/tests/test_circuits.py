import random
from fractions import Fraction

import pytest
import sympy

from campana.circuits import Circuit


def test_basic_arithmetic():
    x, y = Circuit.var("x"), Circuit.var("y")
    f = (x + y) * (x - y)
    assert f.evaluate({"x": 5, "y": 3}) == 16
    assert (-x).evaluate({"x": 4}) == -4
    assert (2 * x + 1).evaluate({"x": Fraction(1, 2)}) == 2
    assert (x**3).evaluate({"x": -2}) == -8
    assert (1 - x).evaluate({"x": 5}) == -4


def test_degree_rules():
    x, y = Circuit.var("x"), Circuit.var("y")
    assert Circuit.const(7).degree() == 0
    assert x.degree() == 1
    assert (x + y).degree() == 1
    assert (x * y).degree() == 2
    assert (x**5).degree() == 5
    assert ((x * y + 1)**3).degree() == 6
    assert Circuit.norm([x, y, x * y]).degree() == 3 * 2
    assert (x + y**4).degree() == 4


def test_degree_matches_expansion_on_random_small_circuits():
    rng = random.Random(9)
    xs = sympy.symbols("x y z")
    for _ in range(150):
        # random circuit of <= 6 operations over dense polynomials
        sym_vals = list(xs)
        circs = [Circuit.var(str(s)) for s in xs]
        exprs = list(sym_vals)
        for _ in range(rng.randint(1, 6)):
            op = rng.choice(["add", "mul", "neg", "pow"])
            i = rng.randrange(len(circs))
            j = rng.randrange(len(circs))
            if op == "add":
                circs.append(circs[i] + circs[j])
                exprs.append(exprs[i] + exprs[j])
            elif op == "mul":
                circs.append(circs[i] * circs[j])
                exprs.append(exprs[i] * exprs[j])
            elif op == "neg":
                circs.append(-circs[i])
                exprs.append(-exprs[i])
            else:
                k = rng.randint(1, 3)
                circs.append(circs[i]**k)
                exprs.append(exprs[i]**k)
        poly = sympy.Poly(sympy.expand(exprs[-1]), *xs)
        # syntactic degree is an upper bound, exact absent cancellation
        assert circs[-1].degree() >= poly.total_degree()


def test_exact_vs_modular_evaluation():
    rng = random.Random(10)
    x, y, z = Circuit.var("x"), Circuit.var("y"), Circuit.var("z")
    f = (x**2 + 3 * y - z) * (y + 1) - Circuit.norm([x, y, z])
    q = 2147483629
    for _ in range(100):
        env = {n: rng.randint(-50, 50) for n in "xyz"}
        exact = f.evaluate(env)
        assert exact.denominator == 1
        assert exact.numerator % q == f.evaluate_mod(env, q)


def test_vectorized_evaluation():
    import numpy as np

    x, y = Circuit.var("x"), Circuit.var("y")
    f = x**2 - 2 * y**2 + 1
    q = 2147483629
    env = {"x": np.arange(50), "y": np.arange(50) + 1}
    vec = f.evaluate_vec(env, q)
    for i in range(50):
        assert int(vec[i]) == f.evaluate_mod({"x": i, "y": i + 1}, q)


def test_rational_constants():
    x = Circuit.var("x")
    f = Circuit.const(Fraction(1, 3)) * x + Circuit.const(Fraction(2, 5))
    assert f.evaluate({"x": 3}) == Fraction(7, 5)
    q = 101
    want = (pow(3, -1, q) * 3 + 2 * pow(5, -1, q)) % q
    assert f.evaluate_mod({"x": 3}, q) == want


def test_free_vars_and_unbound_error():
    x, y = Circuit.var("x"), Circuit.var("y")
    f = x * y + x
    assert f.free_vars() == ("x", "y")
    with pytest.raises(ValueError):
        f.evaluate({"x": 1})


def test_structural_equality_is_layout_independent():
    x, y = Circuit.var("x"), Circuit.var("y")
    f = x**2 - 2 * y**2
    g = x**2 - 2 * y**2
    assert f == g and hash(f) == hash(g)
    assert f != x**2 + 2 * y**2
    # same polynomial, different circuit shape: not structurally equal
    h = (x - y) * (x + y) - y * y
    assert f != h


def test_pow_rejects_bad_exponent():
    x = Circuit.var("x")
    with pytest.raises(ValueError):
        x**0
    with pytest.raises(ValueError):
        x**(-1)


def test_norm_node_empty_rejected():
    with pytest.raises(ValueError):
        Circuit.norm([])
