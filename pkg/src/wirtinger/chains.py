"""Nested subvarieties, the linear hyperkähler certificate, and chain checks.

A link between nested subvarieties is a symplectic immersion when the
ambient complex 2-form stays nondegenerate on the inner subspace.  For
certified outer elements (those carrying a valid hyperkähler certificate)
the Wirtinger numbers along a chain must be nondecreasing; links whose
outer element has no certificate are reported as skipped, never asserted
either way.

The certificate rescales the restricted metric by W(X), which matches the
rescaled Kähler degree to |deg_Omega|, and attempts to rebuild a
quaternionic triple from (scaled metric, restricted Omega, restricted I).
Success or failure of the rebuild does not depend on a phase rotation of
the restricted form: rotating Omega by a unit scalar rotates the
candidate (J, K) pair inside the same quaternionic triple, so the
unrotated form is used and the phase of the restricted complex Pfaffian
is only recorded for diagnostics.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .exterior import SkewMatrix, complex_pfaffian
from .spaces import ComplexTwoForm, QuaternionicSpace, RecoveryFailure, TwoForm, recover_structure
from .subvariety import DegreeReport, Subvariety, subspace_residual, wirtinger_number

INCLUSION_TOL = 1e-10
SYMPLECTIC_TOL = 1e-10
CERTIFICATE_TOL = 1e-8
MONOTONE_TOL = 1e-9

_STATUS_PASS = "PASS"
_STATUS_FAIL = "FAIL"
_STATUS_SKIPPED = "SKIPPED-NO-CERTIFICATE"


def restricted_complex_form(X: Subvariety) -> np.ndarray:
    """Matrix of the ambient complex 2-form on a complex frame of X.

    S[p, q] = Omega(w_p, w_q) for the complex frame vectors w; complex
    skew of size d x d.
    """
    W = X.complex_frame
    space = X.space
    S = W.T @ space._gJ @ W + 1j * (W.T @ space._gK @ W)
    return (S - S.T) / 2.0


def _pfaffian_with_scale(S: np.ndarray):
    d = S.shape[0]
    if d % 2:
        return 0.0j, 0.0
    pf = complex_pfaffian(S)
    mag = float(np.max(np.abs(S))) if S.size else 0.0
    return pf, mag ** (d // 2)


@dataclass(frozen=True)
class ImmersionEdge:
    """One inclusion of subvarieties with its symplectic status."""

    inner: Subvariety
    outer: Subvariety
    symplectic: bool
    inclusion_residual: float
    pfaffian_magnitude: float


def is_symplectic_immersion(inner: Subvariety, outer: Subvariety) -> ImmersionEdge:
    """Check containment and nondegeneracy of the restricted complex form.

    Raises when the inner subspace is not contained in the outer one; the
    symplectic flag records whether the complex Pfaffian of the restricted
    form clears the degeneracy threshold.
    """
    if inner.space is not outer.space and not (
        np.array_equal(inner.space.g, outer.space.g)
        and np.array_equal(inner.space.I, outer.space.I)
        and np.array_equal(inner.space.J, outer.space.J)
        and np.array_equal(inner.space.K, outer.space.K)
    ):
        raise ValueError("subvarieties live in different ambient spaces")
    residual = subspace_residual(inner.space.g, outer.frame, inner.frame)
    if residual > INCLUSION_TOL:
        raise ValueError(
            f"{inner.name!r} is not contained in {outer.name!r} "
            f"(inclusion residual {residual:.3e})"
        )
    pf, scale = _pfaffian_with_scale(restricted_complex_form(inner))
    symplectic = abs(pf) > SYMPLECTIC_TOL * scale and scale > 0.0
    return ImmersionEdge(inner, outer, symplectic, residual, abs(pf))


@dataclass(frozen=True)
class HKCertificate:
    """Outcome of the linear hyperkähler certificate for one subvariety.

    scale is W(subject): the Kähler rescaling that matches the rescaled
    Kähler degree to |deg_Omega|.  recovered is the rebuilt quaternionic
    structure on the subspace, or the reason the rebuild failed.
    """

    subject: Subvariety
    scale: float
    recovered: object  # QuaternionicSpace | RecoveryFailure
    report: DegreeReport
    pfaffian_phase: float

    @property
    def valid(self) -> bool:
        return isinstance(self.recovered, QuaternionicSpace)

    @property
    def failure_reason(self):
        if isinstance(self.recovered, RecoveryFailure):
            return str(self.recovered)
        return None


def linear_calabi_yau(X: Subvariety, *, tol: float = CERTIFICATE_TOL) -> HKCertificate:
    """Attempt to rebuild a hyperkähler structure on the subspace.

    Works in the oriented orthonormal frame, where the restricted metric
    is the identity: the candidate metric is W(X)·Id, the form is the
    restricted Omega, the structure is the restricted I.  Raises when the
    restricted form is degenerate (the certificate does not apply);
    otherwise returns the certificate with the recovery outcome, valid or
    not.
    """
    d = X.d
    if d % 2:
        raise ValueError("certificate needs even complex dimension")
    S = restricted_complex_form(X)
    pf, scale_ref = _pfaffian_with_scale(S)
    if scale_ref == 0.0 or abs(pf) <= SYMPLECTIC_TOL * scale_ref:
        raise ValueError(
            f"restricted form on {X.name!r} is degenerate; certificate inapplicable"
        )
    report = wirtinger_number(X)
    w = report.wirtinger
    Q = X.frame
    space = X.space
    dim = 2 * d
    I_res = Q.T @ (space.g @ (space.I @ Q))
    omega_res = ComplexTwoForm(
        TwoForm(SkewMatrix(Q.T @ space._gJ @ Q)),
        TwoForm(SkewMatrix(Q.T @ space._gK @ Q)),
    )
    recovered = recover_structure(w * np.eye(dim), omega_res, I_res, tol=tol)
    return HKCertificate(
        subject=X,
        scale=w,
        recovered=recovered,
        report=report,
        pfaffian_phase=cmath.phase(pf),
    )


@dataclass(frozen=True)
class LinkResult:
    inner: str
    outer: str
    status: str
    w_inner: float
    w_outer: float
    reason: str = ""

    def to_dict(self):
        return {
            "inner": self.inner,
            "outer": self.outer,
            "status": self.status,
            "w_inner": self.w_inner,
            "w_outer": self.w_outer,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class ChainReport:
    """Per-element reports and per-link verdicts for one chain."""

    names: tuple
    reports: tuple
    certificates: tuple  # None for the first element
    links: tuple
    verdict: str

    @property
    def skipped(self) -> int:
        return sum(1 for link in self.links if link.status == _STATUS_SKIPPED)

    def to_dict(self):
        return {
            "names": list(self.names),
            "wirtinger": [r.wirtinger for r in self.reports],
            "links": [link.to_dict() for link in self.links],
            "verdict": self.verdict,
        }


def verify_chain(chain, *, tol: float = MONOTONE_TOL) -> ChainReport:
    """Check Wirtinger monotonicity along a chain of symplectic immersions.

    Every element needs even complex dimension >= 2 and every consecutive
    pair must be a symplectic immersion (raises otherwise, naming the
    link).  Certificates are computed for every element after the first;
    links whose outer element lacks a valid certificate are SKIPPED with
    the failure reason, and the verdict is PASS exactly when no certified
    link violates W(inner) <= W(outer) + tol.  On certified links with a
    trianalytic inner element the chain consequence is checked too:
    W(outer) = 1 and the outer element passes the trianalyticity test.
    """
    chain = list(chain)
    if not chain:
        raise ValueError("empty chain")
    for X in chain:
        if X.d % 2 or X.d < 2:
            raise ValueError(
                f"chain element {X.name!r} needs even complex dimension >= 2"
            )
    for inner, outer in zip(chain, chain[1:]):
        edge = is_symplectic_immersion(inner, outer)
        if not edge.symplectic:
            raise ValueError(
                f"link {inner.name!r} -> {outer.name!r} is not a symplectic immersion"
            )
    reports = [wirtinger_number(X) for X in chain]
    certificates = [None]
    for X in chain[1:]:
        try:
            certificates.append(linear_calabi_yau(X))
        except ValueError as err:
            certificates.append(
                HKCertificate(
                    subject=X,
                    scale=float("nan"),
                    recovered=RecoveryFailure(str(err), float("inf"), CERTIFICATE_TOL),
                    report=wirtinger_number(X),
                    pfaffian_phase=0.0,
                )
            )
    links = []
    for i in range(1, len(chain)):
        cert = certificates[i]
        w_in = reports[i - 1].wirtinger
        w_out = reports[i].wirtinger
        inner_name, outer_name = chain[i - 1].name, chain[i].name
        if cert.valid:
            status = _STATUS_PASS if w_in <= w_out + tol else _STATUS_FAIL
            reason = "" if status == _STATUS_PASS else "monotonicity violated"
            if reports[i - 1].trianalytic and w_in >= 1.0 - tol:
                if abs(w_out - 1.0) > tol or not reports[i].trianalytic:
                    status = _STATUS_FAIL
                    reason = "trianalytic inner element but outer is not trianalytic"
        else:
            status = _STATUS_SKIPPED
            reason = cert.failure_reason or "no certificate"
        links.append(
            LinkResult(
                inner=inner_name,
                outer=outer_name,
                status=status,
                w_inner=w_in,
                w_outer=w_out,
                reason=reason,
            )
        )
    verdict = _STATUS_PASS
    if any(link.status == _STATUS_FAIL for link in links):
        verdict = _STATUS_FAIL
    return ChainReport(
        names=tuple(X.name for X in chain),
        reports=tuple(reports),
        certificates=tuple(certificates),
        links=tuple(links),
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# chain population generator


_SPACE_CACHE = {}


def _standard(n):
    from .spaces import standard_space

    if n not in _SPACE_CACHE:
        _SPACE_CACHE[n] = standard_space(n)
    return _SPACE_CACHE[n]


def _right_multiplication(q):
    # Matrix of x -> x·q on one quaternionic coordinate, basis (1, i, j, k).
    a, b, c, d = q
    return np.array(
        [[a, -b, -c, -d],
         [b, a, d, -c],
         [c, -d, a, b],
         [d, c, -b, a]]
    )


def _structure_preserving_mix(space, rng):
    """Random orthogonal map commuting with I, J, K.

    Blockwise right multiplication by unit quaternions composed with a
    permutation of the quaternionic coordinates.
    """
    n = space.n
    blocks = []
    for _ in range(n):
        q = rng.standard_normal(4)
        q /= np.linalg.norm(q)
        blocks.append(_right_multiplication(q))
    perm = rng.permutation(n)
    R = np.zeros((space.dim, space.dim))
    for src, dst in enumerate(perm):
        R[4 * dst:4 * dst + 4, 4 * src:4 * src + 4] = blocks[src]
    return R


def _random_quaternionic_tower(space, rng, prefix):
    from .subvariety import full_space, quaternionic_span

    w1 = rng.standard_normal(space.dim)
    w2 = rng.standard_normal(space.dim)
    line = quaternionic_span(space, [w1], name=f"{prefix}-line")
    plane = quaternionic_span(space, [w1, w2], name=f"{prefix}-plane")
    return [line, plane, full_space(space, name=f"{prefix}-full")]


def _interpolating_chain(space, rng, prefix):
    from .subvariety import Subvariety, full_space, interpolating_subspace, quaternionic_span

    theta = rng.uniform(0.15, 1.40)
    R = _structure_preserving_mix(space, rng)
    v_theta = interpolating_subspace(space, theta, coords=(0, 1))
    inner = Subvariety(space, R @ v_theta.basis, name=f"{prefix}-vtheta")
    e8 = np.zeros(space.dim)
    e8[8] = 1.0
    quat = quaternionic_span(space, [R @ e8])
    middle = Subvariety(
        space, np.column_stack([inner.basis, quat.basis]), name=f"{prefix}-vtheta+quat"
    )
    return [inner, middle, full_space(space, name=f"{prefix}-full")]


def _corollary_chain(space, rng, prefix):
    from .subvariety import full_space, quaternionic_span

    w = rng.standard_normal(space.dim)
    line = quaternionic_span(space, [w], name=f"{prefix}-line")
    if rng.integers(2):
        return [line, full_space(space, name=f"{prefix}-full")]
    w2 = rng.standard_normal(space.dim)
    plane = quaternionic_span(space, [w, w2], name=f"{prefix}-plane")
    return [line, plane, full_space(space, name=f"{prefix}-full")]


def _mixed_chain(space, rng, prefix):
    # Middle element is a direct sum of a quaternionic line and an
    # interpolating block: its Wirtinger number sits strictly between the
    # two and the certificate fails, exercising the skipped-link path.
    from .subvariety import Subvariety, full_space, interpolating_subspace, quaternionic_span

    theta = rng.uniform(0.3, 1.2)
    R = _structure_preserving_mix(space, rng)
    e0 = np.zeros(space.dim)
    e0[0] = 1.0
    line = quaternionic_span(space, [R @ e0], name=f"{prefix}-line")
    v_theta = interpolating_subspace(space, theta, coords=(1, 2))
    middle = Subvariety(
        space,
        np.column_stack([line.basis, R @ v_theta.basis]),
        name=f"{prefix}-mixed",
    )
    return [line, middle, full_space(space, name=f"{prefix}-full")]


def _certified_pair_chain(rng, prefix):
    # Outer element: two interpolating blocks with the same angle; its
    # certificate succeeds with scale cos(theta) < 1.  Inner element: a
    # random I-complex plane inside it (kept away from degeneracy).
    from .subvariety import Subvariety, full_space, interpolating_subspace

    space = _standard(4)
    theta = rng.uniform(0.2, 1.2)
    block_a = interpolating_subspace(space, theta, coords=(0, 1))
    block_b = interpolating_subspace(space, theta, coords=(2, 3))
    outer = Subvariety(
        space,
        np.column_stack([block_a.basis, block_b.basis]),
        name=f"{prefix}-double-vtheta",
    )
    while True:
        coeffs = rng.standard_normal((8, 2))
        v = outer.basis @ coeffs[:, 0]
        w = outer.basis @ coeffs[:, 1]
        B = np.column_stack([v, space.I @ v, w, space.I @ w])
        sv = np.linalg.svd(B, compute_uv=False)
        if sv[-1] <= 1e-3 * sv[0]:
            continue
        inner = Subvariety(space, B, name=f"{prefix}-inner")
        pf, scale = _pfaffian_with_scale(restricted_complex_form(inner))
        if scale > 0.0 and abs(pf) > 0.05 * scale:
            break
    return [inner, outer, full_space(space, name=f"{prefix}-full")]


def generate_chain_suite(seed: int, count: int):
    """Deterministic chain population for the monotonicity checks.

    Cycles through trianalytic towers, interpolating families, chain
    consequence instances with a trianalytic inner element, mixed middles
    that are expected to lack certificates, and certified outer elements
    with W < 1.  Every consecutive pair is nested by construction, and at
    least one chain in ten is fully trianalytic.
    """
    count = int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    chains = []
    for idx in range(count):
        prefix = f"c{idx}"
        kind = idx % 5
        if kind == 0:
            chains.append(_random_quaternionic_tower(_standard(3), rng, prefix))
        elif kind == 1:
            chains.append(_interpolating_chain(_standard(3), rng, prefix))
        elif kind == 2:
            chains.append(_corollary_chain(_standard(3), rng, prefix))
        elif kind == 3:
            chains.append(_mixed_chain(_standard(3), rng, prefix))
        else:
            chains.append(_certified_pair_chain(rng, prefix))
    return chains
