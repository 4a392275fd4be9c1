"""First-order jets and the generalized Cauchy-Riemann operator.

A :class:`Jet` carries ``(f, df/dx, df/dy)`` at a point (or a batch of
points).  The built-in test functions return exact jets, propagated through
algebra products and inverses by the usual product and quotient rules; no
finite differences are involved.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .algebra import ONE, ZERO, AlgebraParams, ElComplex, I, inv, mul, tilde
from .errors import PoleEvaluation

__all__ = [
    "Jet",
    "jet_add",
    "jet_mul",
    "jet_inv",
    "cr_apply",
    "cr_system_residual",
    "eval_jet",
    "TestFunction",
    "Constant",
    "TildePower",
    "Kernel",
    "SmoothNonHolo",
    "Poly",
    "Product",
    "function_from_json",
]


@dataclass(frozen=True)
class Jet:
    value: ElComplex
    dx: ElComplex
    dy: ElComplex


def jet_add(a: Jet, b: Jet) -> Jet:
    return Jet(a.value + b.value, a.dx + b.dx, a.dy + b.dy)


def jet_mul(a: Jet, b: Jet, p: AlgebraParams) -> Jet:
    return Jet(
        mul(a.value, b.value, p),
        mul(a.dx, b.value, p) + mul(a.value, b.dx, p),
        mul(a.dy, b.value, p) + mul(a.value, b.dy, p),
    )


def jet_inv(a: Jet, p: AlgebraParams) -> Jet:
    v = inv(a.value, p)
    v2 = mul(v, v, p)
    return Jet(v, -mul(v2, a.dx, p), -mul(v2, a.dy, p))


def cr_apply(j: Jet, p: AlgebraParams) -> ElComplex:
    """Apply the Cauchy-Riemann operator ``(d/dx + i d/dy) / 2``."""
    return (j.dx + mul(I, j.dy, p)) * 0.5


def cr_system_residual(j: Jet, p: AlgebraParams):
    """The two real equations whose joint vanishing means holomorphy.

    With ``f = u + iv`` these are ``(u_x - alpha v_y)/2`` and
    ``(u_y + v_x - beta v_y)/2``.
    """
    ux, vx = j.dx.re, j.dx.im
    uy, vy = j.dy.re, j.dy.im
    return 0.5 * (ux - p.alpha * vy), 0.5 * (uy + vx - p.beta * vy)


def _like(c: ElComplex, z: ElComplex) -> ElComplex:
    # broadcast a constant to the batch shape of z
    zero = np.zeros_like(np.asarray(z.re, dtype=float)) if np.ndim(z.re) else 0.0
    return ElComplex(c.re + zero, c.im + zero)


class TestFunction:
    """An algebra-valued function of ``z = x + iy`` with an exact jet.

    ``holomorphic`` is True/False when known for every parameter choice and
    None when it depends on ``(alpha, beta)``.
    """

    __test__ = False  # keep pytest from collecting this class
    holomorphic: bool | None = None

    def jet(self, z: ElComplex, p: AlgebraParams) -> Jet:
        raise NotImplementedError

    def __call__(self, z: ElComplex, p: AlgebraParams) -> ElComplex:
        return self.jet(z, p).value

    def dbar(self, z: ElComplex, p: AlgebraParams) -> ElComplex:
        return cr_apply(self.jet(z, p), p)

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.to_json()})"


class Constant(TestFunction):
    holomorphic = True

    def __init__(self, c: ElComplex):
        self.c = c

    def jet(self, z, p):
        return Jet(_like(self.c, z), _like(ZERO, z), _like(ZERO, z))

    def to_json(self):
        return {"kind": "constant", "c": self.c.to_json()}


def _tilde_jet(z: ElComplex, center: ElComplex = ZERO) -> Jet:
    # d/dx (y - ix) = -i, d/dy (y - ix) = 1
    return Jet(tilde(z - center), _like(ElComplex(0.0, -1.0), z), _like(ONE, z))


class TildePower(TestFunction):
    """``z~ ** n`` by repeated algebra products."""

    holomorphic = True

    def __init__(self, n: int):
        if int(n) != n or n < 0:
            raise ValueError(f"TildePower needs a nonnegative integer, got {n!r}")
        self.n = int(n)

    def jet(self, z, p):
        base = _tilde_jet(z)
        out = Jet(_like(ONE, z), _like(ZERO, z), _like(ZERO, z))
        for _ in range(self.n):
            out = jet_mul(out, base, p)
        return out

    def to_json(self):
        return {"kind": "tilde_power", "n": self.n}


class Kernel(TestFunction):
    """The Cauchy kernel ``1 / (z - pole)~``."""

    holomorphic = True

    def __init__(self, pole: ElComplex):
        self.pole = pole

    def jet(self, z, p):
        at_pole = np.logical_and(np.equal(z.re, self.pole.re), np.equal(z.im, self.pole.im))
        if np.any(at_pole):
            raise PoleEvaluation(f"kernel evaluated at its pole {self.pole!r}")
        return jet_inv(_tilde_jet(z, self.pole), p)

    def to_json(self):
        return {"kind": "kernel", "pole": self.pole.to_json()}


class SmoothNonHolo(TestFunction):
    """Catalog of smooth functions with hand-derived dbar.

    ``"z"``: f = x + iy, dbar = ((1 - alpha)/2, -beta/2)
    ``"zbar"``: f = x - iy, dbar = ((1 + alpha)/2, beta/2)
    ``"x2_plus_iy"``: f = x**2 + iy, dbar = (x - alpha/2, -beta/2)
    """

    holomorphic = False
    CATALOG = ("z", "zbar", "x2_plus_iy")

    def __init__(self, name: str):
        if name not in self.CATALOG:
            raise ValueError(f"unknown smooth function {name!r}; choose from {self.CATALOG}")
        self.name = name

    def jet(self, z, p):
        x, y = z.re, z.im
        if self.name == "z":
            return Jet(ElComplex(x, y), _like(ONE, z), _like(I, z))
        if self.name == "zbar":
            return Jet(ElComplex(x, -y), _like(ONE, z), _like(ElComplex(0.0, -1.0), z))
        return Jet(ElComplex(x * x, y), ElComplex(2.0 * x, 0.0 * x), _like(I, z))

    def dbar_exact(self, z: ElComplex, p: AlgebraParams) -> ElComplex:
        if self.name == "z":
            c = ElComplex(0.5 * (1.0 - p.alpha), -0.5 * p.beta)
        elif self.name == "zbar":
            c = ElComplex(0.5 * (1.0 + p.alpha), 0.5 * p.beta)
        else:
            return ElComplex(z.re - 0.5 * p.alpha, -0.5 * p.beta + 0.0 * z.re)
        return _like(c, z)

    def to_json(self):
        return {"kind": "smooth", "id": self.name}


def _coeff_grid(rows):
    # ragged rows are zero-padded on the right
    if isinstance(rows, np.ndarray):
        return np.atleast_2d(rows.astype(float))
    rows = [list(np.atleast_1d(r)) for r in rows] or [[0.0]]
    width = max(len(r) for r in rows) or 1
    out = np.zeros((len(rows), width))
    for a, r in enumerate(rows):
        out[a, :len(r)] = r
    return out


class Poly(TestFunction):
    """``u(x, y) + i v(x, y)`` with ``u = sum u[a][b] x**a y**b`` (same for v)."""

    def __init__(self, u, v):
        self.u = _coeff_grid(u)
        self.v = _coeff_grid(v)
        self._ux = npoly.polyder(self.u, axis=0)
        self._uy = npoly.polyder(self.u, axis=1)
        self._vx = npoly.polyder(self.v, axis=0)
        self._vy = npoly.polyder(self.v, axis=1)
        self.holomorphic = None

    @staticmethod
    def _ev(c, x, y):
        if c.size == 0:
            return 0.0 * x
        return npoly.polyval2d(x, y, c) + 0.0 * x

    def jet(self, z, p):
        x, y = z.re, z.im
        ev = self._ev
        return Jet(
            ElComplex(ev(self.u, x, y), ev(self.v, x, y)),
            ElComplex(ev(self._ux, x, y), ev(self._vx, x, y)),
            ElComplex(ev(self._uy, x, y), ev(self._vy, x, y)),
        )

    def to_json(self):
        return {"kind": "poly", "u": self.u.tolist(), "v": self.v.tolist()}


class Product(TestFunction):
    """Pointwise algebra product of two test functions."""

    def __init__(self, f1: TestFunction, f2: TestFunction):
        self.f1 = f1
        self.f2 = f2
        h1, h2 = f1.holomorphic, f2.holomorphic
        self.holomorphic = True if (h1 and h2) else None

    def jet(self, z, p):
        return jet_mul(self.f1.jet(z, p), self.f2.jet(z, p), p)

    def to_json(self):
        return {"kind": "product", "factors": [self.f1.to_json(), self.f2.to_json()]}


def eval_jet(f: TestFunction, at: ElComplex, p: AlgebraParams) -> Jet:
    """Exact jet of ``f`` at ``at``; raises PoleEvaluation at a kernel pole."""
    return f.jet(at, p)


def function_from_json(obj) -> TestFunction:
    kind = obj.get("kind")
    if kind == "tilde_power":
        return TildePower(obj["n"])
    if kind == "kernel":
        return Kernel(ElComplex.from_json(obj["pole"]))
    if kind == "constant":
        return Constant(ElComplex.from_json(obj["c"]))
    if kind == "smooth":
        return SmoothNonHolo(obj["id"])
    if kind == "poly":
        return Poly(obj.get("u", [[0.0]]), obj.get("v", [[0.0]]))
    if kind == "product":
        a, b = obj["factors"]
        return Product(function_from_json(a), function_from_json(b))
    raise ValueError(f"unknown function kind {kind!r}")
