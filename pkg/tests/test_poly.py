import numpy as np
import pytest

from soskit.poly import (PolyMatrix, PolyParseError, Polynomial, parse)


def rand_poly(rng, n, deg, terms=6):
    out = {}
    for _ in range(terms):
        alpha = tuple(int(a) for a in rng.integers(0, deg + 1, size=n))
        if sum(alpha) > deg:
            continue
        out[alpha] = float(rng.normal())
    return Polynomial(n, out)


# jet-engine first component and the zero-at-zero quartic used across tests
JET_X = "-y - 1.5*x^2 - 0.5*x^3"
JEFF = "x^2*y^2 + 4*x^2*y + 5*x^2 + x*y^2 + 2*x*y + 0.25*y^2"


class TestParse:
    def test_zero(self):
        p = parse("0", ["x"])
        assert p.is_zero and p.degree() == 0

    def test_jet_component(self):
        p = parse(JET_X, ["x", "y"])
        assert len(p.terms) == 3
        assert p.coefficient((0, 1)) == -1.0
        assert p.coefficient((2, 0)) == -1.5
        assert p.coefficient((3, 0)) == -0.5
        assert p.degree() == 3

    def test_quartic_six_terms(self):
        p = parse(JEFF, ["x", "y"])
        assert len(p.terms) == 6
        assert p.degree() == 4
        assert p.coefficient((2, 2)) == 1.0
        assert p.coefficient((0, 2)) == 0.25

    def test_unknown_variable(self):
        with pytest.raises(PolyParseError):
            parse("x + w", ["x", "y"])

    def test_syntax_error_position(self):
        with pytest.raises(PolyParseError) as err:
            parse("x^y", ["x", "y"])
        assert "exponent" in str(err.value)

    def test_implicit_multiplication(self):
        assert parse("2x^2", ["x"]) == parse("2*x^2", ["x"])

    def test_roundtrip_random(self):
        rng = np.random.default_rng(0)
        names = ["x1", "x2", "x3"]
        for _ in range(50):
            p = rand_poly(rng, 3, 5)
            assert parse(p.to_string(names), names) == p


class TestEvaluate:
    def test_zero_poly(self):
        assert Polynomial.zero(2).evaluate((7.0, -3.0)) == 0.0

    def test_jeff_at_origin(self):
        p = parse(JEFF, ["x", "y"])
        assert p.evaluate((0.0, 0.0)) == 0.0

    def test_pythagorean(self):
        p = parse("x^2 + y^2", ["x", "y"])
        assert p.evaluate((3.0, 4.0)) == 25.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            parse("x", ["x"]).evaluate((1.0, 2.0))

    def test_eval_batch_matches_scalar(self):
        rng = np.random.default_rng(1)
        p = rand_poly(rng, 2, 4)
        pts = rng.normal(size=(40, 2))
        batch = p.eval_batch(pts)
        single = np.array([p.evaluate(pt) for pt in pts])
        assert np.allclose(batch, single, rtol=1e-12, atol=1e-12)


class TestCalculus:
    def test_power_rule(self):
        p = parse("x^3", ["x"])
        assert p.differentiate(0) == parse("3*x^2", ["x"])

    def test_gradient(self):
        p = parse("x^2 + y^2", ["x", "y"])
        gx, gy = p.gradient()
        assert gx == parse("2*x", ["x", "y"])
        assert gy == parse("2*y", ["x", "y"])

    def test_jeff_dy_at_11(self):
        # frozen from the symbolic derivative: 2 + 4 + 2 + 2 + 0.5 = 10.5
        p = parse(JEFF, ["x", "y"])
        assert p.differentiate(1).evaluate((1.0, 1.0)) == pytest.approx(10.5)

    def test_derivative_vs_finite_differences(self):
        rng = np.random.default_rng(2)
        h = 1e-5
        for _ in range(10):
            p = rand_poly(rng, 3, 8)
            x = rng.uniform(-1, 1, size=3)
            for j in range(3):
                xp, xm = x.copy(), x.copy()
                xp[j] += h
                xm[j] -= h
                fd = (p.evaluate(xp) - p.evaluate(xm)) / (2 * h)
                exact = p.differentiate(j).evaluate(x)
                assert fd == pytest.approx(exact, rel=1e-5, abs=1e-5)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            parse("x", ["x"]).differentiate(1)


class TestComposeLinear:
    def test_identity(self):
        p = parse("x1^2", ["x1", "x2"])
        assert p.compose_linear(np.eye(2)) == p

    def test_substitution(self):
        p = parse("x1^2", ["x1", "x2"])
        A = np.array([[0.0, 2.0], [0.0, 0.0]])
        assert p.compose_linear(A) == parse("4*x2^2", ["x1", "x2"])

    def test_rotation_invariance(self):
        p = parse("x^2 + y^2", ["x", "y"])
        th = 0.7
        R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
        q = p.compose_linear(R)
        for alpha in set(p.terms) | set(q.terms):
            assert q.coefficient(alpha) == pytest.approx(p.coefficient(alpha), abs=1e-12)

    def test_composition_associates(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            p = rand_poly(rng, 2, 4)
            A = rng.normal(size=(2, 2))
            B = rng.normal(size=(2, 2))
            lhs = p.compose_linear(A).compose_linear(B)
            rhs = p.compose_linear(A @ B)
            for alpha in set(lhs.terms) | set(rhs.terms):
                assert lhs.coefficient(alpha) == pytest.approx(
                    rhs.coefficient(alpha), abs=1e-10 * (1 + p.max_abs_coeff()))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            parse("x", ["x"]).compose_linear(np.eye(2))


class TestHessian:
    def test_quadratic(self):
        H = parse("x^2 + y^2", ["x", "y"]).hessian()
        assert H[0, 0] == Polynomial.constant(2, 2.0)
        assert H[1, 1] == Polynomial.constant(2, 2.0)
        assert H[0, 1].is_zero

    def test_cubic(self):
        H = parse("x^3", ["x"]).hessian()
        assert H[0, 0] == parse("6*x", ["x"])

    def test_quartic_eigenvalue(self):
        H = parse("x^4 + y^4", ["x", "y"]).hessian()
        M = H.evaluate((1.0, 1.0))
        assert np.linalg.eigvalsh(M)[0] == pytest.approx(12.0)
        # finite-difference cross-check of the Hessian at the same point
        p = parse("x^4 + y^4", ["x", "y"])
        h = 1e-4
        fd = (p.evaluate((1 + h, 1)) - 2 * p.evaluate((1, 1)) + p.evaluate((1 - h, 1))) / h**2
        assert fd == pytest.approx(M[0, 0], rel=1e-6)


class TestTopComponent:
    def test_simple(self):
        assert parse("x^4 + x^2", ["x"]).top_component() == parse("x^4", ["x"])

    def test_jeff(self):
        p = parse(JEFF, ["x", "y"])
        assert p.top_component() == parse("x^2*y^2", ["x", "y"])

    def test_homogeneous_fixed_point(self):
        p = parse("x^2*y + x*y^2", ["x", "y"])
        assert p.top_component() == p

    def test_zero_errors(self):
        with pytest.raises(ValueError):
            Polynomial.zero(2).top_component()


class TestRingAxioms:
    def test_random_identities(self):
        rng = np.random.default_rng(4)
        pts = rng.uniform(-1, 1, size=(20, 2))
        for _ in range(10):
            a = rand_poly(rng, 2, 3)
            b = rand_poly(rng, 2, 3)
            c = rand_poly(rng, 2, 3)
            assoc_mul = (a * b) * c
            assoc_mul2 = a * (b * c)
            distrib = a * (b + c)
            distrib2 = a * b + a * c
            for pt in pts:
                scale = 1 + abs(assoc_mul.evaluate(pt))
                assert assoc_mul.evaluate(pt) == pytest.approx(assoc_mul2.evaluate(pt),
                                                               rel=1e-9, abs=1e-9 * scale)
                assert distrib.evaluate(pt) == pytest.approx(distrib2.evaluate(pt),
                                                             rel=1e-9, abs=1e-9 * scale)

    def test_tiny_coefficients_dropped(self):
        p = Polynomial(1, {(1,): 1e-15})
        assert p.is_zero


class TestPolyMatrix:
    def test_asymmetric_rejected(self):
        x = Polynomial.variable(1, 0)
        with pytest.raises(ValueError):
            PolyMatrix([[x, x], [Polynomial.zero(1), x]])

    def test_evaluate(self):
        x = Polynomial.variable(1, 0)
        M = PolyMatrix([[x, x], [x, x]])
        assert np.allclose(M.evaluate((2.0,)), 2 * np.ones((2, 2)))
