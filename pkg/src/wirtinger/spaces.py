"""Flat quaternionic vector spaces and their Kähler package.

Conventions fixed here and shared with the scene file format: the real
basis of each quaternionic coordinate is ordered (1, i, j, k), and the
structure endomorphisms I, J, K act by left multiplication by i, j, k.
Left multiplication gives the composition rule I∘J = -J∘I = K.

The Kähler form of a structure L is omega_L(x, y) = g(x, L y), with
coordinate matrix g·L, and the holomorphic symplectic form is the pair
Omega = omega_J + sqrt(-1)·omega_K.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exterior import SkewMatrix

#: identity residuals allowed for objects constructed by this module
CONSTRUCTION_TOL = 1e-12
#: identity residuals allowed for user-supplied or recovered structures
RECOVERY_TOL = 1e-8

_LEFT_I = np.array(
    [[0.0, -1.0, 0.0, 0.0],
     [1.0, 0.0, 0.0, 0.0],
     [0.0, 0.0, 0.0, -1.0],
     [0.0, 0.0, 1.0, 0.0]]
)
_LEFT_J = np.array(
    [[0.0, 0.0, -1.0, 0.0],
     [0.0, 0.0, 0.0, 1.0],
     [1.0, 0.0, 0.0, 0.0],
     [0.0, -1.0, 0.0, 0.0]]
)
_LEFT_K = np.array(
    [[0.0, 0.0, 0.0, -1.0],
     [0.0, 0.0, -1.0, 0.0],
     [0.0, 1.0, 0.0, 0.0],
     [1.0, 0.0, 0.0, 0.0]]
)


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _max_abs(a):
    return float(np.max(np.abs(a)))


def quaternionic_defects(I, J, K, g):
    """Residuals of every identity a quaternionic triple must satisfy.

    Returns (name, residual) pairs; residuals are entrywise max norms
    except for positive definiteness, which reports -min(eigenvalue) when
    the metric fails to be positive.
    """
    dim = g.shape[0]
    ident = np.eye(dim)
    out = [("g = g^T", _max_abs(g - g.T))]
    min_eig = float(np.linalg.eigvalsh((g + g.T) / 2.0).min())
    out.append(("g positive-definite", max(0.0, -min_eig) if min_eig <= 0 else 0.0))
    out.append(("I^2 = -Id", _max_abs(I @ I + ident)))
    out.append(("J^2 = -Id", _max_abs(J @ J + ident)))
    out.append(("K^2 = -Id", _max_abs(K @ K + ident)))
    out.append(("I J = K", _max_abs(I @ J - K)))
    out.append(("J I = -K", _max_abs(J @ I + K)))
    out.append(("I^T g I = g", _max_abs(I.T @ g @ I - g)))
    out.append(("J^T g J = g", _max_abs(J.T @ g @ J - g)))
    out.append(("K^T g K = g", _max_abs(K.T @ g @ K - g)))
    return out


class QuaternionicSpace:
    """R^{4n} with structure endomorphisms I, J, K and a compatible metric.

    All identities (squares, composition, Hermitian compatibility) are
    validated at construction; instances are immutable and freely
    shareable between threads.
    """

    __slots__ = ("I", "J", "K", "g", "_gI", "_gJ", "_gK")

    def __init__(self, I, J, K, g, *, tol=CONSTRUCTION_TOL):
        I, J, K, g = (np.array(m, dtype=float) for m in (I, J, K, g))
        dim = g.shape[0] if g.ndim == 2 else 0
        for m in (I, J, K, g):
            if m.ndim != 2 or m.shape != (dim, dim):
                raise ValueError("structure matrices must be square and equal-sized")
        if dim == 0 or dim % 4:
            raise ValueError(f"dimension must be a positive multiple of 4, got {dim}")
        name, residual = worst_defect(quaternionic_defects(I, J, K, g))
        if residual > tol:
            raise ValueError(
                f"not a quaternionic structure: {name} fails "
                f"(residual {residual:.3e} > {tol:.0e})"
            )
        self.I, self.J, self.K, self.g = map(_frozen, (I, J, K, g))
        self._gI = _frozen(g @ I)
        self._gJ = _frozen(g @ J)
        self._gK = _frozen(g @ K)

    @property
    def dim(self) -> int:
        return self.g.shape[0]

    @property
    def n(self) -> int:
        return self.dim // 4

    def structure_matrix(self, coeffs) -> np.ndarray:
        a, b, c = coeffs
        return a * self.I + b * self.J + c * self.K

    @property
    def omega_I(self) -> "TwoForm":
        return TwoForm(SkewMatrix(self._gI), "omega_I")

    @property
    def omega_J(self) -> "TwoForm":
        return TwoForm(SkewMatrix(self._gJ), "omega_J")

    @property
    def omega_K(self) -> "TwoForm":
        return TwoForm(SkewMatrix(self._gK), "omega_K")

    def __repr__(self):
        return f"QuaternionicSpace(n={self.n})"


def worst_defect(defects):
    name, residual = max(defects, key=lambda item: item[1])
    return name, residual


@dataclass(frozen=True)
class InducedStructure:
    """Complex structure a·I + b·J + c·K for a unit coefficient vector."""

    coeffs: tuple
    matrix: np.ndarray


@dataclass(frozen=True)
class TwoForm:
    """Constant real 2-form; ``matrix`` is its skew coordinate matrix."""

    matrix: SkewMatrix
    label: str = "other"

    @property
    def dim(self) -> int:
        return self.matrix.dim


@dataclass(frozen=True)
class ComplexTwoForm:
    """Complex-valued constant 2-form held as a (re, im) pair."""

    re: TwoForm
    im: TwoForm

    def __post_init__(self):
        if self.re.dim != self.im.dim:
            raise ValueError("re/im parts must share dimension")

    @property
    def dim(self) -> int:
        return self.re.dim

    def conjugate(self) -> "ComplexTwoForm":
        return ComplexTwoForm(self.re, TwoForm(SkewMatrix(-self.im.matrix.entries), self.im.label))

    def scaled(self, z: complex) -> "ComplexTwoForm":
        """The form z·Omega for a complex scalar z."""
        x, y = complex(z).real, complex(z).imag
        re = x * self.re.matrix.entries - y * self.im.matrix.entries
        im = y * self.re.matrix.entries + x * self.im.matrix.entries
        return ComplexTwoForm(TwoForm(SkewMatrix(re)), TwoForm(SkewMatrix(im)))

    def evaluate(self, x, y) -> complex:
        re = float(x @ self.re.matrix.entries @ y)
        im = float(x @ self.im.matrix.entries @ y)
        return complex(re, im)

    def allclose(self, other, tol=1e-10) -> bool:
        if self.dim != other.dim:
            return False
        scale = max(
            _max_abs(self.re.matrix.entries), _max_abs(self.im.matrix.entries),
            _max_abs(other.re.matrix.entries), _max_abs(other.im.matrix.entries),
            1.0,
        )
        dre = _max_abs(self.re.matrix.entries - other.re.matrix.entries)
        dim_ = _max_abs(self.im.matrix.entries - other.im.matrix.entries)
        return max(dre, dim_) <= tol * scale


def standard_space(n: int) -> QuaternionicSpace:
    """The flat model H^n: identity metric, blockwise left multiplication."""
    n = int(n)
    if n < 1:
        raise ValueError("need at least one quaternionic coordinate")
    eye = np.eye(n)
    return QuaternionicSpace(
        np.kron(eye, _LEFT_I),
        np.kron(eye, _LEFT_J),
        np.kron(eye, _LEFT_K),
        np.eye(4 * n),
    )


def induced_structure(space: QuaternionicSpace, coeffs) -> InducedStructure:
    """Unit combination of I, J, K; coefficients are normalized first."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (3,):
        raise ValueError("coefficients must be a 3-vector")
    norm = float(np.linalg.norm(c))
    if norm < 1e-15:
        raise ValueError("coefficient vector must be nonzero")
    c = c / norm
    L = space.structure_matrix(c)
    residual = _max_abs(L @ L + np.eye(space.dim))
    if residual > 1e-10:
        raise ValueError(f"L^2 = -Id fails (residual {residual:.3e})")
    return InducedStructure(coeffs=tuple(float(x) for x in c), matrix=_frozen(L))


def kahler_form(space: QuaternionicSpace, structure) -> TwoForm:
    """omega_L(x, y) = g(x, L y) for an induced structure L."""
    if isinstance(structure, InducedStructure):
        coeffs, L = structure.coeffs, structure.matrix
    else:
        induced = induced_structure(space, structure)
        coeffs, L = induced.coeffs, induced.matrix
    m = space.g @ L
    try:
        skew = SkewMatrix(m)
    except ValueError as err:
        raise ValueError(f"g*L is not a 2-form; incompatible inputs: {err}") from err
    label = "other"
    axes = {(1.0, 0.0, 0.0): "omega_I", (0.0, 1.0, 0.0): "omega_J", (0.0, 0.0, 1.0): "omega_K"}
    for axis, name in axes.items():
        if max(abs(coeffs[t] - axis[t]) for t in range(3)) <= 1e-12:
            label = name
    return TwoForm(skew, label)


def holomorphic_symplectic_form(space: QuaternionicSpace) -> ComplexTwoForm:
    """Omega = omega_J + sqrt(-1)·omega_K, nondegenerate by construction."""
    sign, _ = np.linalg.slogdet(space._gJ)
    if sign == 0:
        raise ValueError("degenerate omega_J; inconsistent space")
    return ComplexTwoForm(space.omega_J, space.omega_K)


def rotate_structure(space: QuaternionicSpace, lam: complex) -> QuaternionicSpace:
    """Rotate (J, K) by a unit complex number lam = a + b·sqrt(-1).

    Keeps I and g; J' = aJ + bK, K' = -bJ + aK.  The new holomorphic
    symplectic form is conj(lam)·Omega.
    """
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-10:
        raise ValueError(f"|lambda| must be 1, got {abs(lam)!r}")
    a, b = lam.real, lam.imag
    J2 = a * space.J + b * space.K
    K2 = -b * space.J + a * space.K
    return QuaternionicSpace(space.I, J2, K2, space.g, tol=1e-10)


@dataclass(frozen=True)
class RecoveryFailure:
    """Structured outcome when a (g, Omega, I) triple is not quaternionic."""

    violated: str
    residual: float
    tolerance: float

    def __str__(self):
        return (
            f"{self.violated} violated "
            f"(residual {self.residual:.3e} > {self.tolerance:.0e})"
        )


def recover_structure(g, Omega: ComplexTwoForm, I, *, tol=RECOVERY_TOL):
    """Rebuild (I, J, K, g) from the metric and the complex 2-form pair.

    J := g^{-1}·Re(Omega), K := g^{-1}·Im(Omega).  Returns the assembled
    QuaternionicSpace when every quaternionic identity holds within tol,
    otherwise a RecoveryFailure naming the worst violated identity.  The
    failure branch is informative output, consumed by the chain verifier.
    """
    g = np.asarray(g, dtype=float)
    I = np.asarray(I, dtype=float)
    dim = g.shape[0]
    if g.shape != (dim, dim) or I.shape != (dim, dim) or Omega.dim != dim:
        raise ValueError("inconsistent dimensions")
    if _max_abs(g - g.T) > tol * max(_max_abs(g), 1.0):
        raise ValueError("metric must be symmetric")
    try:
        np.linalg.cholesky((g + g.T) / 2.0)
    except np.linalg.LinAlgError as err:
        raise ValueError("metric must be positive-definite") from err
    if _max_abs(I @ I + np.eye(dim)) > tol:
        raise ValueError("I^2 = -Id fails for the supplied structure")
    if dim % 4:
        return RecoveryFailure("dimension multiple of 4", float(dim % 4), tol)
    J = np.linalg.solve(g, Omega.re.matrix.entries)
    K = np.linalg.solve(g, Omega.im.matrix.entries)
    name, residual = worst_defect(quaternionic_defects(I, J, K, g))
    if residual > tol:
        return RecoveryFailure(name, residual, tol)
    return QuaternionicSpace(I, J, K, g, tol=tol)
