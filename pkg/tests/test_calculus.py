import math

import numpy as np
import pytest

from elcauchy.algebra import ElComplex, I, make_params, mul, tilde
from elcauchy.calculus import (
    Constant,
    Jet,
    Kernel,
    Poly,
    Product,
    SmoothNonHolo,
    TildePower,
    cr_apply,
    cr_system_residual,
    eval_jet,
    function_from_json,
    jet_add,
)
from elcauchy.errors import PoleEvaluation

from conftest import PARAM_SET, random_elements, random_params

H = 1e-5


def fd_jet(f, z, p):
    # central differences of the value map: test oracle only
    ex = ElComplex(H, 0.0)
    ey = ElComplex(0.0, H)
    dx = (f(z + ex, p) - f(z - ex, p)) / (2 * H)
    dy = (f(z + ey, p) - f(z - ey, p)) / (2 * H)
    return dx, dy


def builtins():
    return [
        Constant(ElComplex(0.7, -1.2)),
        TildePower(0),
        TildePower(1),
        TildePower(2),
        TildePower(3),
        TildePower(5),
        Kernel(ElComplex(12.0, -11.0)),
        SmoothNonHolo("z"),
        SmoothNonHolo("zbar"),
        SmoothNonHolo("x2_plus_iy"),
        Poly([[0.5, 1.0], [-2.0, 0.25]], [[0.0, 3.0, -1.0]]),
    ]


def test_constant_jet():
    c = ElComplex(2.0, -3.0)
    j = eval_jet(Constant(c), ElComplex(0.4, 9.0), make_params(2, 1))
    assert j.value == c and j.dx == ElComplex(0, 0) and j.dy == ElComplex(0, 0)


def test_tilde_power_one_jet():
    j = eval_jet(TildePower(1), ElComplex(3.0, 4.0), make_params(5, 3))
    assert j.value == ElComplex(4.0, -3.0)
    assert j.dx == ElComplex(0.0, -1.0)
    assert j.dy == ElComplex(1.0, 0.0)


@pytest.mark.parametrize("f", builtins(), ids=repr)
def test_jets_match_finite_differences(f):
    rng = np.random.default_rng(3)
    for p in random_params(rng, 4) + [make_params(*ab) for ab in PARAM_SET]:
        # |z| <= 10; high powers are restricted to the unit square
        z = ElComplex(rng.uniform(-7, 7, 50), rng.uniform(-7, 7, 50))
        if isinstance(f, TildePower) and f.n >= 3:
            z = z * (1.0 / 7.0)  # FD truncation and cancellation exceed 1e-8 at |z| ~ 10
        j = eval_jet(f, z, p)
        dx, dy = fd_jet(f, z, p)
        # absolute 1e-8, relaxed in proportion to |f| once |f| > 1 (FD cancellation)
        tol = 1e-8 * max(1.0, float(np.max(np.hypot(j.value.re, j.value.im))))
        assert np.max(np.hypot(j.dx.re - dx.re, j.dx.im - dx.im)) <= tol
        assert np.max(np.hypot(j.dy.re - dy.re, j.dy.im - dy.im)) <= tol


def test_tilde_power_two_fd_tight():
    for ab in PARAM_SET:
        p = make_params(*ab)
        z = ElComplex(0.8, -1.3)
        j = eval_jet(TildePower(2), z, p)
        dx, dy = fd_jet(TildePower(2), z, p)
        assert math.hypot(j.dx.re - dx.re, j.dx.im - dx.im) <= 1e-8
        assert math.hypot(j.dy.re - dy.re, j.dy.im - dy.im) <= 1e-8


def test_kernel_pole_raises():
    pole = ElComplex(0.25, 0.5)
    with pytest.raises(PoleEvaluation):
        eval_jet(Kernel(pole), pole, make_params(1, 0))
    with pytest.raises(PoleEvaluation):
        Kernel(pole)(ElComplex(np.array([0.0, 0.25]), np.array([0.0, 0.5])), make_params(1, 0))


def test_kernel_value():
    p = make_params(2, 1)
    z = ElComplex(1.0, 2.0)
    w = Kernel(ElComplex(0.5, 0.5))(z, p)
    prod = mul(w, tilde(ElComplex(0.5, 1.5)), p)
    assert prod.re == pytest.approx(1.0, abs=1e-15) and prod.im == pytest.approx(0.0, abs=1e-15)


def test_cr_apply_examples():
    for ab in PARAM_SET:
        p = make_params(*ab)
        z = ElComplex(0.3, -0.9)
        r = cr_apply(eval_jet(Constant(ElComplex(4, 4)), z, p), p)
        assert r == ElComplex(0.0, 0.0)
        r = cr_apply(eval_jet(TildePower(1), z, p), p)
        assert r.re == 0.0 and r.im == 0.0
    classical = make_params(1, 0)
    r = cr_apply(eval_jet(SmoothNonHolo("zbar"), ElComplex(2, 3), classical), classical)
    assert r == ElComplex(1.0, 0.0)


@pytest.mark.parametrize("name", SmoothNonHolo.CATALOG)
def test_smooth_dbar_matches_hand_formula(name):
    f = SmoothNonHolo(name)
    rng = np.random.default_rng(5)
    for p in random_params(rng, 10):
        z = random_elements(rng, 100, 3.0)
        got = cr_apply(f.jet(z, p), p)
        want = f.dbar_exact(z, p)
        assert np.allclose(got.re, want.re, atol=1e-14) and np.allclose(got.im, want.im, atol=1e-14)


def test_cr_system_residual_examples():
    p = make_params(3, 0.5)
    z = ElComplex(1.1, 0.2)
    r1, r2 = cr_system_residual(eval_jet(SmoothNonHolo("z"), z, p), p)
    assert r1 == pytest.approx(0.5 * (1 - 3))
    assert r2 == pytest.approx(-0.25)
    for f in (TildePower(2), TildePower(4), Kernel(ElComplex(5, 5))):
        r1, r2 = cr_system_residual(eval_jet(f, z, p), p)
        assert abs(r1) <= 1e-12 and abs(r2) <= 1e-12


def test_cr_system_agrees_with_operator():
    rng = np.random.default_rng(11)
    for p in random_params(rng, 20):
        j = Jet(random_elements(rng, 200, 5), random_elements(rng, 200, 5), random_elements(rng, 200, 5))
        r1, r2 = cr_system_residual(j, p)
        c = cr_apply(j, p)
        assert np.max(np.abs(c.re - r1)) <= 1e-14 * (1 + p.alpha) * 10
        assert np.max(np.abs(c.im - r2)) <= 1e-14 * (1 + abs(p.beta)) * 10


def test_kernel_holomorphic_away_from_pole():
    rng = np.random.default_rng(2)
    for p in random_params(rng, 5) + [make_params(*ab) for ab in PARAM_SET]:
        zeta = ElComplex(0.3, -0.4)
        r = rng.uniform(0.1, 3.0, 1000)
        t = rng.uniform(0, 2 * np.pi, 1000)
        z = ElComplex(zeta.re + r * np.cos(t), zeta.im + r * np.sin(t))
        c = cr_apply(Kernel(zeta).jet(z, p), p)
        assert np.max(np.hypot(c.re, c.im)) <= 1e-10


def test_linearity_of_cr():
    rng = np.random.default_rng(8)
    p = make_params(2.5, 1.5)
    z = random_elements(rng, 50, 2)
    a, b = SmoothNonHolo("x2_plus_iy").jet(z, p), TildePower(3).jet(z, p)
    lhs = cr_apply(jet_add(a, b), p)
    rhs = cr_apply(a, p) + cr_apply(b, p)
    assert np.allclose(lhs.re, rhs.re, atol=1e-14) and np.allclose(lhs.im, rhs.im, atol=1e-14)
    s = -3.25
    scaled = cr_apply(Jet(a.value * s, a.dx * s, a.dy * s), p)
    assert np.allclose(scaled.re, s * cr_apply(a, p).re, atol=1e-13)


def test_product_rule():
    rng = np.random.default_rng(4)
    fs = builtins()
    for _ in range(200):
        p = random_params(rng, 1)[0]
        f1, f2 = fs[rng.integers(len(fs))], fs[rng.integers(len(fs))]
        z = random_elements(rng, 5, 1.5)
        lhs = cr_apply(Product(f1, f2).jet(z, p), p)
        rhs = mul(cr_apply(f1.jet(z, p), p), f2(z, p), p) + mul(f1(z, p), cr_apply(f2.jet(z, p), p), p)
        scale = 1 + np.max(np.hypot(rhs.re, rhs.im))
        assert np.max(np.hypot(lhs.re - rhs.re, lhs.im - rhs.im)) <= 1e-10 * scale


def test_poly_jet_exact():
    # u = 1 + 2x + 3xy, v = y^2
    f = Poly([[1.0, 0.0], [2.0, 3.0]], [[0.0, 0.0, 1.0]])
    j = f.jet(ElComplex(2.0, -1.0), make_params(1, 0))
    assert j.value == ElComplex(1 + 4 - 6, 1.0)
    assert j.dx == ElComplex(2 + 3 * -1.0, 0.0)
    assert j.dy == ElComplex(3 * 2.0, -2.0)


@pytest.mark.parametrize("f", builtins() + [Product(TildePower(2), SmoothNonHolo("zbar"))], ids=repr)
def test_function_json_roundtrip(f):
    g = function_from_json(f.to_json())
    p = make_params(2, 1)
    z = ElComplex(0.3, 0.7)
    assert g(z, p) == f(z, p)


def test_function_from_json_rejects_unknown():
    with pytest.raises(ValueError):
        function_from_json({"kind": "sine"})
    with pytest.raises(ValueError):
        TildePower(-1)
    with pytest.raises(ValueError):
        SmoothNonHolo("cosh")


def test_z_holomorphic_only_classically():
    f = SmoothNonHolo("z")
    z = ElComplex(0.1, 0.2)
    assert cr_apply(f.jet(z, make_params(1, 0)), make_params(1, 0)) == ElComplex(0.0, 0.0)
    p = make_params(2, 1)
    c = cr_apply(f.jet(z, p), p)
    assert (c.re, c.im) == (-0.5, -0.5)
