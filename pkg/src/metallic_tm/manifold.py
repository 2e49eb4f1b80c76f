"""Tensor calculus on a coordinate chart.

All operations are dimension generic: a chart is just an ordered tuple of
variables with optional domain constraints and a metric, so the same code
serves the base manifold (n variables of base kind) and the tangent bundle
(2n variables, base plus fiber).  Components are ``exprs.Expr`` trees stored
in numpy object arrays; index order is contravariant slots first, covariant
slots after, and every derivative-type operation puts the new covariant
index first.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import exprs as E
from .exprs import Expr, Var


class GeometryError(ValueError):
    """Unsupported valence or inconsistent chart data."""


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out[...] = E.ZERO
    return out


def expr_array(nested) -> np.ndarray:
    arr = np.array(nested, dtype=object)
    flat = arr.reshape(-1)
    for i, e in enumerate(flat):
        if not isinstance(e, Expr):
            flat[i] = E.const(e)
    return flat.reshape(arr.shape)


def evaluate_array(arr: np.ndarray, point, mode: str = "exact") -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    it = np.nditer(arr, flags=["multi_index", "refs_ok"])
    for x in it:
        out[it.multi_index] = E.evaluate(x.item(), point, mode)
    return out


class ChartedManifold:
    """A single coordinate chart with a metric.

    ``variables`` fixes both the dimension and the differentiation order;
    ``domain`` is a list of expressions required to be strictly positive at
    admissible points.
    """

    def __init__(
        self,
        variables: Sequence[Var],
        metric=None,
        domain: Sequence[Expr] = (),
        coord_names: Optional[Sequence[str]] = None,
    ) -> None:
        self.variables = tuple(variables)
        self.n = len(self.variables)
        if self.n < 2:
            raise GeometryError("chart dimension must be at least 2")
        self.domain = tuple(domain)
        self.coord_names = tuple(coord_names) if coord_names else tuple(
            v.name for v in self.variables
        )
        if metric is None:
            self.metric = None
        else:
            self.metric = expr_array(metric)
            if self.metric.shape != (self.n, self.n):
                raise GeometryError(
                    f"metric shape {self.metric.shape} does not match dimension {self.n}"
                )

    def diff(self, e: Expr, i: int) -> Expr:
        return E.diff(e, self.variables[i])

    def point(self, coords) -> dict:
        if len(coords) != self.n:
            raise GeometryError(f"expected {self.n} coordinates, got {len(coords)}")
        return dict(zip(self.variables, coords))

    def admissible(self, point, mode: str = "exact") -> bool:
        for c in self.domain:
            if E.evaluate(c, point, mode) <= 0:
                return False
        return True


class TensorField:
    """A (k,l) tensor field on a chart, components in index order
    (contravariant..., covariant...)."""

    def __init__(self, base: ChartedManifold, valence, components) -> None:
        self.base = base
        self.valence = (int(valence[0]), int(valence[1]))
        k, l = self.valence
        self.components = expr_array(components)
        want = (base.n,) * (k + l)
        if self.components.shape != want:
            raise GeometryError(
                f"components shape {self.components.shape} does not match "
                f"valence {self.valence} in dimension {base.n}"
            )

    def evaluate(self, point, mode: str = "exact") -> np.ndarray:
        return evaluate_array(self.components, point, mode)

    def __repr__(self):
        return f"TensorField(valence={self.valence}, n={self.base.n})"


class Connection:
    """Linear connection, coefficients Gamma[k][i][j] meaning
    nabla_{d_i} d_j = Gamma^k_{ij} d_k."""

    def __init__(self, base: ChartedManifold, coefficients) -> None:
        self.base = base
        self.coefficients = expr_array(coefficients)
        n = base.n
        if self.coefficients.shape != (n, n, n):
            raise GeometryError("connection coefficients must have shape (n,n,n)")


# ----------------------------------------------------------------------
# metric geometry
# ----------------------------------------------------------------------

def _det(m: np.ndarray) -> Expr:
    n = m.shape[0]
    if n == 1:
        return m[0, 0]
    total = E.ZERO
    rest = m[1:, :]
    for j in range(n):
        entry = m[0, j]
        if E._is_const(entry, 0):
            continue
        minor = np.delete(rest, j, axis=1)
        term = E.mul(entry, _det(minor))
        total = E.add(total, term if j % 2 == 0 else E.mul(E.const(-1), term))
    return total


def det(m) -> Expr:
    """Determinant of a square Expr matrix by Laplace expansion."""
    arr = expr_array(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GeometryError("determinant needs a square matrix")
    return _det(arr)


def inverse_matrix(m) -> np.ndarray:
    """Symbolic inverse via adjugate over determinant."""
    arr = expr_array(m)
    n = arr.shape[0]
    d = det(arr)
    inv = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(arr, j, axis=0), i, axis=1)
            cof = _det(minor) if n > 1 else E.ONE
            if (i + j) % 2 == 1:
                cof = E.mul(E.const(-1), cof)
            inv[i, j] = E.div(cof, d)
    return inv


def christoffel(M: ChartedManifold) -> Connection:
    """Levi-Civita coefficients of the chart metric."""
    if M.metric is None:
        raise GeometryError("chart has no metric")
    n = M.n
    g = M.metric
    ginv = inverse_matrix(g)
    dg = np.empty((n, n, n), dtype=object)  # dg[k][i][j] = d_k g_ij
    for k, i, j in itertools.product(range(n), repeat=3):
        dg[k, i, j] = M.diff(g[i, j], k)
    gamma = zeros((n, n, n))
    half = E.const(Fraction(1, 2))
    for k, i, j in itertools.product(range(n), repeat=3):
        s = E.ZERO
        for l in range(n):
            if E._is_const(ginv[k, l], 0):
                continue
            s = E.add(s, E.mul(ginv[k, l], E.add(dg[i, j, l], dg[j, i, l], E.mul(E.const(-1), dg[l, i, j]))))
        gamma[k, i, j] = E.mul(half, s)
    return Connection(M, gamma)


def curvature(C: Connection) -> TensorField:
    """R[l][i][j][k] with R(d_i, d_j) d_k = R^l_{ijk} d_l."""
    M = C.base
    n = M.n
    G = C.coefficients
    R = zeros((n, n, n, n))
    for l, i, j, k in itertools.product(range(n), repeat=4):
        term = E.add(
            M.diff(G[l, j, k], i),
            E.mul(E.const(-1), M.diff(G[l, i, k], j)),
        )
        for m in range(n):
            term = E.add(
                term,
                E.mul(G[l, i, m], G[m, j, k]),
                E.mul(E.const(-1), G[l, j, m], G[m, i, k]),
            )
        R[l, i, j, k] = term
    return TensorField(M, (1, 3), R)


def torsion(C: Connection) -> TensorField:
    G = C.coefficients
    n = C.base.n
    T = zeros((n, n, n))
    for k, i, j in itertools.product(range(n), repeat=3):
        T[k, i, j] = E.add(G[k, i, j], E.mul(E.const(-1), G[k, j, i]))
    return TensorField(C.base, (1, 2), T)


# ----------------------------------------------------------------------
# brackets and derivatives
# ----------------------------------------------------------------------

def lie_bracket(X: TensorField, Y: TensorField) -> TensorField:
    if X.valence != (1, 0) or Y.valence != (1, 0):
        raise GeometryError("lie_bracket needs two vector fields")
    if X.base is not Y.base:
        raise GeometryError("vector fields live on different charts")
    M = X.base
    n = M.n
    out = zeros(n)
    for i in range(n):
        s = E.ZERO
        for j in range(n):
            s = E.add(
                s,
                E.mul(X.components[j], M.diff(Y.components[i], j)),
                E.mul(E.const(-1), Y.components[j], M.diff(X.components[i], j)),
            )
        out[i] = s
    return TensorField(M, (1, 0), out)


def covariant_derivative(C: Connection, T: TensorField) -> TensorField:
    """nabla T with the derivative index first among covariant slots."""
    M = C.base
    n = M.n
    G = C.coefficients
    k, l = T.valence
    comp = T.components
    if (k, l) == (1, 0):
        out = zeros((n, n))  # out[a][i]
        for a, i in itertools.product(range(n), repeat=2):
            s = M.diff(comp[a], i)
            for m in range(n):
                s = E.add(s, E.mul(G[a, i, m], comp[m]))
            out[a, i] = s
        return TensorField(M, (1, 1), out)
    if (k, l) == (0, 1):
        out = zeros((n, n))  # out[i][j]
        for i, j in itertools.product(range(n), repeat=2):
            s = M.diff(comp[j], i)
            for m in range(n):
                s = E.add(s, E.mul(E.const(-1), G[m, i, j], comp[m]))
            out[i, j] = s
        return TensorField(M, (0, 2), out)
    if (k, l) == (1, 1):
        out = zeros((n, n, n))  # out[a][i][j]
        for a, i, j in itertools.product(range(n), repeat=3):
            s = M.diff(comp[a, j], i)
            for m in range(n):
                s = E.add(
                    s,
                    E.mul(G[a, i, m], comp[m, j]),
                    E.mul(E.const(-1), G[m, i, j], comp[a, m]),
                )
            out[a, i, j] = s
        return TensorField(M, (1, 2), out)
    if (k, l) == (0, 2):
        out = zeros((n, n, n))  # out[i][j][k]
        for i, j, kk in itertools.product(range(n), repeat=3):
            s = M.diff(comp[j, kk], i)
            for m in range(n):
                s = E.add(
                    s,
                    E.mul(E.const(-1), G[m, i, j], comp[m, kk]),
                    E.mul(E.const(-1), G[m, i, kk], comp[j, m]),
                )
            out[i, j, kk] = s
        return TensorField(M, (0, 3), out)
    raise GeometryError(f"covariant_derivative does not support valence {T.valence}")


def cov_vec(C: Connection, U: TensorField, V: TensorField) -> TensorField:
    """Directional derivative nabla_U V of a vector field."""
    if U.valence != (1, 0) or V.valence != (1, 0):
        raise GeometryError("cov_vec needs two vector fields")
    M = C.base
    n = M.n
    G = C.coefficients
    out = zeros(n)
    for a in range(n):
        s = E.ZERO
        for i in range(n):
            s = E.add(s, E.mul(U.components[i], M.diff(V.components[a], i)))
            for j in range(n):
                s = E.add(s, E.mul(U.components[i], V.components[j], G[a, i, j]))
        out[a] = s
    return TensorField(M, (1, 0), out)


def lie_derivative(X: TensorField, T: TensorField) -> TensorField:
    if X.valence != (1, 0):
        raise GeometryError("lie_derivative direction must be a vector field")
    M = X.base
    n = M.n
    Xc = X.components
    if T.valence == (0, 1):
        eta = T.components
        out = zeros(n)
        for j in range(n):
            s = E.ZERO
            for m in range(n):
                s = E.add(
                    s,
                    E.mul(Xc[m], M.diff(eta[j], m)),
                    E.mul(eta[m], M.diff(Xc[m], j)),
                )
            out[j] = s
        return TensorField(M, (0, 1), out)
    if T.valence == (1, 1):
        F = T.components
        out = zeros((n, n))
        for k, j in itertools.product(range(n), repeat=2):
            s = E.ZERO
            for m in range(n):
                s = E.add(
                    s,
                    E.mul(Xc[m], M.diff(F[k, j], m)),
                    E.mul(E.const(-1), F[m, j], M.diff(Xc[k], m)),
                    E.mul(F[k, m], M.diff(Xc[m], j)),
                )
            out[k, j] = s
        return TensorField(M, (1, 1), out)
    raise GeometryError(f"lie_derivative does not support valence {T.valence}")


def _structurally_antisymmetric(comp: np.ndarray) -> bool:
    n = comp.shape[0]
    for i in range(n):
        if not E._is_const(comp[i, i], 0):
            return False
        for j in range(i + 1, n):
            a, b = comp[i, j], comp[j, i]
            if E._is_const(a, 0) and E._is_const(b, 0):
                continue
            if E.mul(E.const(-1), a) != b:
                return False
    return True


def exterior_derivative(T: TensorField) -> TensorField:
    """d on 1-forms (factor 1/2) and antisymmetric 2-forms (factor 1/3).

    The normalizations match the coboundary convention
    3 dPhi(X,Y,Z) = sum X Phi(Y,Z) - sum Phi([X,Y],Z) and its degree-one
    analogue 2 domega(X,Y) = X omega(Y) - Y omega(X) - omega([X,Y]).
    """
    M = T.base
    n = M.n
    if T.valence == (0, 1):
        w = T.components
        half = E.const(Fraction(1, 2))
        out = zeros((n, n))
        for i, j in itertools.product(range(n), repeat=2):
            out[i, j] = E.mul(half, E.add(M.diff(w[j], i), E.mul(E.const(-1), M.diff(w[i], j))))
        return TensorField(M, (0, 2), out)
    if T.valence == (0, 2):
        if not _structurally_antisymmetric(T.components):
            raise GeometryError("exterior_derivative needs an antisymmetric 2-form")
        P = T.components
        third = E.const(Fraction(1, 3))
        out = zeros((n, n, n))
        for i, j, k in itertools.product(range(n), repeat=3):
            out[i, j, k] = E.mul(
                third,
                E.add(M.diff(P[j, k], i), M.diff(P[k, i], j), M.diff(P[i, j], k)),
            )
        return TensorField(M, (0, 3), out)
    raise GeometryError(f"exterior_derivative does not support valence {T.valence}")


def coboundary_2form(T: TensorField) -> TensorField:
    """The 1/3-coboundary formula applied componentwise, with no
    antisymmetry gate.  Used where a fundamental form is fed in as built."""
    if T.valence != (0, 2):
        raise GeometryError("coboundary_2form needs a (0,2) tensor")
    M = T.base
    n = M.n
    P = T.components
    third = E.const(Fraction(1, 3))
    out = zeros((n, n, n))
    for i, j, k in itertools.product(range(n), repeat=3):
        out[i, j, k] = E.mul(
            third,
            E.add(M.diff(P[j, k], i), M.diff(P[k, i], j), M.diff(P[i, j], k)),
        )
    return TensorField(M, (0, 3), out)


def column_field(F: TensorField, j: int) -> TensorField:
    """The vector field F(d_j) from a (1,1) tensor."""
    return TensorField(F.base, (1, 0), F.components[:, j])


def apply_11(F: TensorField, X: TensorField) -> TensorField:
    """F(X) for a (1,1) tensor and a vector field."""
    n = F.base.n
    out = zeros(n)
    for a in range(n):
        s = E.ZERO
        for m in range(n):
            s = E.add(s, E.mul(F.components[a, m], X.components[m]))
        out[a] = s
    return TensorField(F.base, (1, 0), out)


def nijenhuis(F: TensorField) -> TensorField:
    """N_F(X,Y) = [FX,FY] - F[FX,Y] - F[X,FY] + F^2[X,Y] on coordinate pairs."""
    if F.valence != (1, 1):
        raise GeometryError("nijenhuis needs a (1,1) tensor")
    M = F.base
    n = M.n
    basis = [
        TensorField(M, (1, 0), [E.ONE if a == i else E.ZERO for a in range(n)])
        for i in range(n)
    ]
    cols = [column_field(F, j) for j in range(n)]
    out = zeros((n, n, n))
    for i in range(n):
        for j in range(i + 1, n):
            b1 = lie_bracket(cols[i], cols[j])
            b2 = apply_11(F, lie_bracket(cols[i], basis[j]))
            b3 = apply_11(F, lie_bracket(basis[i], cols[j]))
            # [d_i, d_j] = 0, so the F^2 term drops
            for a in range(n):
                val = E.add(
                    b1.components[a],
                    E.mul(E.const(-1), b2.components[a]),
                    E.mul(E.const(-1), b3.components[a]),
                )
                out[a, i, j] = val
                out[a, j, i] = E.mul(E.const(-1), val)
    return TensorField(M, (1, 2), out)
