"""Flat complex subtori: I-complex subspaces with lattices, and their degrees.

A subvariety is the span of an even number of basis columns, invariant
under I, together with a lattice written in basis coordinates.  Degrees
are evaluated as (top coefficient of the restricted form power in an
oriented orthonormal frame) times the covolume; the top coefficient is
d!·Pf of the restricted matrix.  The frame is adapted to I in pairs
(u, I u) and oriented so the restricted omega_I has positive Pfaffian,
which makes the Kähler degree positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import exterior
from .exterior import (
    SkewMatrix,
    form_power,
    pfaffian,
    two_form_multivector,
    wedge,
)
from .spaces import QuaternionicSpace, TwoForm

RANK_RTOL = 1e-10
ICOMPLEX_TOL = 1e-10
TRIANALYTIC_TOL = 1e-9

DEGREE_STRATEGIES = ("pfaffian-of-omega-j", "complex-pfaffian", "oracle")
ORACLE_MAX_COMPLEX_DIM = 3

_ODD_DIM_MESSAGE = "symplectic degree undefined for odd complex dimension"


def g_orthonormal_columns(g, B):
    """A g-orthonormal basis of the column space of B."""
    L = np.linalg.cholesky(g)
    Q, _ = np.linalg.qr(L.T @ B)
    return np.linalg.solve(L.T, Q)


def subspace_residual(g, Q, W):
    """Largest g-norm left after projecting W's columns onto span(Q).

    Q must be g-orthonormal; W is expected to carry unit columns, so the
    value reads as a relative residual.
    """
    R = W - Q @ (Q.T @ (g @ W))
    norms = np.einsum("ij,ij->j", R, g @ R)
    return float(np.sqrt(max(norms.max(), 0.0)))


class Subvariety:
    """I-complex linear subspace plus a lattice: a flat complex subtorus.

    basis: 4n x 2d matrix whose columns span the subspace.
    lattice: 2d x 2d generators in basis coordinates (identity if omitted).
    """

    __slots__ = ("space", "basis", "lattice", "name", "_frame")

    def __init__(self, space: QuaternionicSpace, basis, lattice=None, name=""):
        if not isinstance(space, QuaternionicSpace):
            raise TypeError("space must be a QuaternionicSpace")
        B = np.array(basis, dtype=float)
        if B.ndim != 2 or B.shape[0] != space.dim:
            raise ValueError(
                f"basis must be {space.dim} x 2d for this space, got {B.shape}"
            )
        cols = B.shape[1]
        if cols == 0 or cols % 2:
            raise ValueError("basis must span an even-dimensional subspace")
        sv = np.linalg.svd(B, compute_uv=False)
        if sv[-1] <= RANK_RTOL * sv[0]:
            raise ValueError("basis columns are linearly dependent")
        Q = g_orthonormal_columns(space.g, B)
        residual = subspace_residual(space.g, Q, space.I @ Q)
        if residual > ICOMPLEX_TOL:
            raise ValueError(
                f"subspace is not I-complex (projection residual {residual:.3e})"
            )
        if lattice is None:
            lat = np.eye(cols)
        else:
            lat = np.array(lattice, dtype=float)
            if lat.shape != (cols, cols):
                raise ValueError(
                    f"lattice must be {cols} x {cols}, got {lat.shape}"
                )
        B.setflags(write=False)
        lat.setflags(write=False)
        self.space = space
        self.basis = B
        self.lattice = lat
        self.name = name
        self._frame = None

    @property
    def d(self) -> int:
        """Complex dimension."""
        return self.basis.shape[1] // 2

    @property
    def dim_real(self) -> int:
        return self.basis.shape[1]

    @property
    def frame(self) -> np.ndarray:
        """Oriented g-orthonormal frame in I-adapted pairs (u, I u)."""
        if self._frame is None:
            Q = _adapted_frame(self.space, self.basis)
            # adapted pairs give Pf(Q^T (g I) Q) = (+1) for even d already;
            # the correction below only ever fires for odd pair counts
            A = Q.T @ self.space._gI @ Q
            if self.dim_real % 2 == 0 and exterior.pfaffian(SkewMatrix(A)) < 0.0:
                Q = Q.copy()
                Q[:, -1] = -Q[:, -1]
            Q.setflags(write=False)
            self._frame = Q
        return self._frame

    @property
    def complex_frame(self) -> np.ndarray:
        """First vector of each adapted pair; a complex basis for (V, I)."""
        return self.frame[:, 0::2]

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Subvariety(d={self.d}, n={self.space.n}{label})"


def _adapted_frame(space, B):
    g, I = space.g, space.I
    target = B.shape[1]
    cols = []

    def off_span(v):
        w = np.array(v, dtype=float)
        for _ in range(2):  # re-orthogonalize for stability
            for u in cols:
                w = w - (u @ g @ w) * u
        return w

    for v in B.T:
        w = off_span(v)
        norm = math.sqrt(max(float(w @ g @ w), 0.0))
        ref = math.sqrt(max(float(v @ g @ v), 1e-300))
        if norm <= 1e-10 * ref:
            continue
        u = w / norm
        cols.append(u)
        iu = off_span(I @ u)
        iu_norm = math.sqrt(max(float(iu @ g @ iu), 0.0))
        if iu_norm <= 0.5:  # can only happen off an I-complex span
            raise ValueError("adapted frame failed; subspace is not I-complex")
        cols.append(iu / iu_norm)
        if len(cols) == target:
            break
    if len(cols) != target:
        raise ValueError("adapted frame failed; basis does not span 2d dimensions")
    return np.column_stack(cols)


def restrict_form(form, X: Subvariety, frame: str = "orthonormal") -> SkewMatrix:
    """Pull a constant 2-form back to the subspace.

    frame="orthonormal" restricts through the oriented orthonormal frame,
    frame="raw" through the stored basis columns.
    """
    if isinstance(form, TwoForm):
        A = form.matrix.entries
    elif isinstance(form, SkewMatrix):
        A = form.entries
    else:
        A = SkewMatrix(form).entries
    if A.shape[0] != X.space.dim:
        raise ValueError(
            f"form dimension {A.shape[0]} does not match ambient {X.space.dim}"
        )
    if frame == "orthonormal":
        Q = X.frame
    elif frame == "raw":
        Q = X.basis
    else:
        raise ValueError(f"unknown frame {frame!r}")
    return SkewMatrix(Q.T @ A @ Q)


def volume(X: Subvariety) -> float:
    """Covolume of the subtorus: sqrt det of the lattice Gram matrix."""
    gram = X.lattice.T @ (X.basis.T @ X.space.g @ X.basis) @ X.lattice
    det = float(np.linalg.det(gram))
    if not np.isfinite(det) or det <= 0.0:
        raise ValueError(f"degenerate lattice on {X.name!r} (Gram determinant {det})")
    return math.sqrt(det)


def _even_complex_dim(X: Subvariety) -> int:
    d = X.d
    if d % 2:
        raise ValueError(_ODD_DIM_MESSAGE)
    return d


def form_degree(X: Subvariety, form) -> float:
    """d!·Pf(form restricted to the oriented frame)·Vol(X); signed."""
    d = _even_complex_dim(X)
    return math.factorial(d) * pfaffian(restrict_form(form, X)) * volume(X)


def deg_omega(X: Subvariety) -> float:
    """Kähler degree: the integral of omega_I^d over the subtorus."""
    value = form_degree(X, X.space.omega_I)
    if value <= 0.0:
        raise ValueError(f"Kähler degree must be positive, got {value!r}")
    return value


def deg_Omega(X: Subvariety, strategy: str = "pfaffian-of-omega-j") -> float:
    """Symplectic degree, signed.

    Strategies: "pfaffian-of-omega-j" evaluates the omega_J degree;
    "complex-pfaffian" expands binom(d, d/2)·(Omega ^ conj(Omega) / 4)^{d/2}
    from the complexified restricted pair; "oracle" reads the top
    coefficient off the full wedge expansion of omega_J^d (d <= 3).  All
    routes agree within 1e-8 relative on I-complex subvarieties.
    """
    d = _even_complex_dim(X)
    if strategy == "pfaffian-of-omega-j":
        return form_degree(X, X.space.omega_J)
    if strategy == "complex-pfaffian":
        mv_j = two_form_multivector(restrict_form(X.space.omega_J, X))
        mv_k = two_form_multivector(restrict_form(X.space.omega_K, X))
        omega = mv_j + 1j * mv_k
        pairing = wedge(omega, omega.conjugate()) * 0.25
        power = pairing
        for _ in range(d // 2 - 1):
            power = wedge(power, pairing)
        top = power.coefficient(tuple(range(2 * d)))
        top = complex(top)
        return math.comb(d, d // 2) * top.real * volume(X)
    if strategy == "oracle":
        if d > ORACLE_MAX_COMPLEX_DIM:
            raise ValueError(
                f"oracle strategy limited to complex dimension {ORACLE_MAX_COMPLEX_DIM}"
            )
        mv = form_power(restrict_form(X.space.omega_J, X), d)
        top = float(mv.coefficient(tuple(range(2 * d))))
        return top * volume(X)
    raise ValueError(f"unknown strategy {strategy!r}; pick one of {DEGREE_STRATEGIES}")


def is_trianalytic(X: Subvariety, tol: float = TRIANALYTIC_TOL) -> bool:
    """J-invariance of the subspace.

    Together with the I-invariance built into the type, J-invariance
    forces invariance under every induced structure, so this single
    geometric test decides trianalyticity.
    """
    Q = X.frame
    residual = subspace_residual(X.space.g, Q, X.space.J @ Q)
    return residual <= tol


@dataclass(frozen=True)
class DegreeReport:
    """Degree invariants of one subvariety."""

    name: str
    d: int
    volume: float
    deg_omega: float
    deg_Omega: float
    deg_omega_J: float
    deg_omega_K: float
    wirtinger: float
    trianalytic: bool

    def to_dict(self):
        return {
            "name": self.name,
            "d": self.d,
            "volume": self.volume,
            "deg_omega": self.deg_omega,
            "deg_Omega": self.deg_Omega,
            "deg_omega_J": self.deg_omega_J,
            "deg_omega_K": self.deg_omega_K,
            "wirtinger": self.wirtinger,
            "trianalytic": self.trianalytic,
        }


def wirtinger_number(X: Subvariety) -> DegreeReport:
    """Assemble the degree report: degrees, W(X), and the trianalytic flag.

    W(X) = (|deg_Omega| / deg_omega)^{1/d}, at most 1, with equality
    exactly on trianalytic subspaces; the flag itself always comes from
    the geometric J-invariance test, never from W.
    """
    d = _even_complex_dim(X)
    if d < 2:
        raise ValueError("Wirtinger number needs complex dimension >= 2")
    vol = volume(X)
    factor = math.factorial(d) * vol
    pf_i = pfaffian(restrict_form(X.space.omega_I, X))
    pf_j = pfaffian(restrict_form(X.space.omega_J, X))
    pf_k = pfaffian(restrict_form(X.space.omega_K, X))
    deg_o = factor * pf_i
    if deg_o <= 0.0:
        raise ValueError(f"Kähler degree must be positive, got {deg_o!r}")
    deg_j = factor * pf_j
    deg_k = factor * pf_k
    w = (abs(deg_j) / deg_o) ** (1.0 / d)
    return DegreeReport(
        name=X.name,
        d=d,
        volume=vol,
        deg_omega=deg_o,
        deg_Omega=deg_j,
        deg_omega_J=deg_j,
        deg_omega_K=deg_k,
        wirtinger=w,
        trianalytic=is_trianalytic(X),
    )


def wirtinger_numbers(subvarieties) -> list:
    """Degree reports for a batch, in input order."""
    return [wirtinger_number(X) for X in subvarieties]


# ---------------------------------------------------------------------------
# constructors used by the generators, the scenes and the tests


def full_space(space: QuaternionicSpace, name: str = "M") -> Subvariety:
    return Subvariety(space, np.eye(space.dim), name=name)


def complex_span(space: QuaternionicSpace, vectors, name: str = "") -> Subvariety:
    """Subvariety spanned by (v, I v) pairs over the given vectors."""
    cols = []
    for v in np.atleast_2d(np.asarray(vectors, dtype=float)):
        cols.append(v)
        cols.append(space.I @ v)
    return Subvariety(space, _adapted_frame(space, np.column_stack(cols)), name=name)


def quaternionic_span(space: QuaternionicSpace, vectors, name: str = "") -> Subvariety:
    """Quaternion-invariant span of the given vectors; trianalytic by construction."""
    cols = []
    for v in np.atleast_2d(np.asarray(vectors, dtype=float)):
        for L in (None, space.I, space.J, space.K):
            cols.append(v if L is None else L @ v)
    return Subvariety(space, _adapted_frame(space, np.column_stack(cols)), name=name)


def interpolating_subspace(
    space: QuaternionicSpace, theta: float, coords=(0, 1), name: str = ""
) -> Subvariety:
    """The family V_theta joining a quaternionic line to a C^2-plane.

    Spanned by (e1)_a, I(e1)_a, u, I·u with
    u = cos(theta)·(e_j)_a + sin(theta)·(e1)_b for quaternionic
    coordinates a, b.  On the standard model W(V_theta) = cos(theta):
    theta = 0 recovers the quaternionic line of coordinate a, theta = pi/2
    the complex plane spanned over coordinates a and b.
    """
    a, b = coords
    if a == b or max(a, b) >= space.n:
        raise ValueError("coords must be two distinct quaternionic coordinates")
    e1a = np.zeros(space.dim)
    e1a[4 * a] = 1.0
    eja = np.zeros(space.dim)
    eja[4 * a + 2] = 1.0
    e1b = np.zeros(space.dim)
    e1b[4 * b] = 1.0
    u = math.cos(theta) * eja + math.sin(theta) * e1b
    basis = np.column_stack([e1a, space.I @ e1a, u, space.I @ u])
    return Subvariety(space, basis, name=name)


def random_subvariety(space: QuaternionicSpace, d: int, rng, name: str = "") -> Subvariety:
    """Random I-complex subvariety of complex dimension d.

    Draws a standard normal 4n x 2d matrix, replaces it by the I-complex
    span (v_1, I v_1, ..., v_d, I v_d) of its first d columns, and
    orthonormalizes.  The sampled frame covers the I-complex Grassmannian
    with full measure.
    """
    d = int(d)
    if not 1 <= d <= space.dim // 2:
        raise ValueError(f"complex dimension must be in [1, {space.dim // 2}]")
    while True:
        G = rng.standard_normal((space.dim, 2 * d))
        vectors = G[:, :d].T
        cols = []
        for v in vectors:
            cols.append(v)
            cols.append(space.I @ v)
        B = np.column_stack(cols)
        sv = np.linalg.svd(B, compute_uv=False)
        if sv[-1] > 1e-6 * sv[0]:
            return Subvariety(space, _adapted_frame(space, B), name=name)
