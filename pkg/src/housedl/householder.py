"""Householder reflectors kept as vectors, plus products of reflectors.

A reflector is H = I - 2 u u^T for a unit vector u; applying it to a vector
costs O(n) and to an n-by-p matrix O(np). Products V = H1 H2 ... Hm are stored
as the ordered tuple of their vectors, so V or V^T can be applied in O(nmp)
without ever forming an n-by-n matrix. Dense forms are materialized only by
``to_dense`` (and by test oracles).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIT_TOL = 1e-12
_KEEP_TOL = 1e-13  # already unit to roundoff: keep bits (construction idempotent)


def _vector(v) -> np.ndarray:
    u = np.asarray(v, dtype=float)
    if u.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got array of shape {u.shape}")
    return u


@dataclass(frozen=True, eq=False)
class HouseholderFactor:
    """Unit vector u standing for the reflector H = I - 2 u u^T.

    Construction accepts vectors whose norm has drifted from 1 by at most
    1e-12 and snaps them back to exact unit norm; anything farther off is
    rejected (normalize arbitrary vectors with :func:`make_factor`). The
    stored array is read-only, so factors are safe to share across threads.
    """

    u: np.ndarray

    def __post_init__(self) -> None:
        u = _vector(self.u)
        if u.size < 2:
            raise ValueError("reflectors need dimension n >= 2")
        norm = float(np.linalg.norm(u))
        if not np.isfinite(norm) or abs(norm - 1.0) > UNIT_TOL:
            raise ValueError(
                f"reflector vector has norm {norm!r}, more than {UNIT_TOL} from 1; "
                "use make_factor() to normalize"
            )
        if abs(norm - 1.0) > _KEEP_TOL:
            u = u / norm
        else:
            u = u.copy()
        u.flags.writeable = False
        object.__setattr__(self, "u", u)

    @property
    def n(self) -> int:
        return self.u.size


@dataclass(frozen=True, eq=False)
class OrthogonalProduct:
    """Ordered reflectors H1 H2 ... Hm; the empty product acts as the identity."""

    factors: tuple[HouseholderFactor, ...] = ()

    def __post_init__(self) -> None:
        factors = tuple(self.factors)
        dims = {f.n for f in factors}
        if len(dims) > 1:
            raise ValueError(f"factors have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "factors", factors)

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def n(self) -> int | None:
        """Dimension, or None for the empty (dimension-agnostic) product."""
        return self.factors[0].n if self.factors else None


def make_factor(v) -> HouseholderFactor:
    """Normalize a nonzero vector into a HouseholderFactor."""
    u = _vector(v)
    norm = float(np.linalg.norm(u))
    if norm == 0.0:
        raise ValueError("cannot make a reflector from the zero vector")
    return HouseholderFactor(u / norm)


def apply_factor(h: HouseholderFactor, x) -> np.ndarray:
    """Compute H x = x - 2 u (u^T x) in O(n)."""
    x = _vector(x)
    if x.size != h.n:
        raise ValueError(f"dimension mismatch: factor has n={h.n}, vector has {x.size}")
    return x - (2.0 * float(h.u @ x)) * h.u


def apply_factor_matrix(h: HouseholderFactor, Y) -> np.ndarray:
    """Compute H Y = Y - 2 u (u^T Y) column-wise, in O(np) for n-by-p Y."""
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 2 or Y.shape[0] != h.n:
        raise ValueError(
            f"dimension mismatch: factor has n={h.n}, matrix has shape {Y.shape}"
        )
    return Y - np.outer(2.0 * h.u, h.u @ Y)


def apply_product(V: OrthogonalProduct, Y, transpose: bool = False) -> np.ndarray:
    """Apply V = H1 H2 ... Hm (or V^T) to a vector or matrix.

    ``transpose=False`` computes H1 (H2 (... (Hm Y))); ``transpose=True``
    computes Hm (... (H1 Y)), which equals V^T Y since every reflector is
    symmetric. Cost is O(nmp) for an n-by-p argument.
    """
    Y = np.asarray(Y, dtype=float)
    vec = Y.ndim == 1
    if vec:
        Y = Y[:, None]
    if V.factors and Y.shape[0] != V.n:
        raise ValueError(
            f"dimension mismatch: product has n={V.n}, argument has shape "
            f"{Y.shape if not vec else (Y.shape[0],)}"
        )
    out = Y.copy()
    for f in (V.factors if transpose else reversed(V.factors)):
        out = apply_factor_matrix(f, out)
    return out[:, 0] if vec else out


def to_dense(V: OrthogonalProduct, n: int | None = None) -> np.ndarray:
    """Materialize the dense n-by-n matrix; the caller pays the O(n^2 m)."""
    dim = V.n if V.n is not None else n
    if dim is None:
        raise ValueError("empty product has no intrinsic dimension; pass n")
    if n is not None and V.n is not None and n != V.n:
        raise ValueError(f"n={n} disagrees with the product dimension {V.n}")
    return apply_product(V, np.eye(dim))


def equivalent_product_pair(
    u,
) -> tuple[HouseholderFactor, HouseholderFactor, HouseholderFactor]:
    """Build u1, u2, u3 with H(u) H(u1) = H(u2) H(u3).

    Products of reflectors do not factor uniquely; this constructs a witness.
    u1 is u's orthogonal complement of the best-conditioned coordinate
    direction (some |u_j| <= 1/sqrt(n), so projecting e_j never degenerates),
    u2 = (u + u1)/sqrt(2) and u3 = (u - u1)/sqrt(2). Both pairs multiply to
    I - 2 u u^T - 2 u1 u1^T.
    """
    uf = make_factor(u)
    uv = uf.u
    j = int(np.argmin(np.abs(uv)))
    w = -uv[j] * uv
    w = w.copy()
    w[j] += 1.0
    u1 = make_factor(w)
    u2 = make_factor((uv + u1.u) / np.sqrt(2.0))
    u3 = make_factor((uv - u1.u) / np.sqrt(2.0))
    return u1, u2, u3
