"""Named property suites and the seeded runner behind `wirtinger properties`.

Each property draws its own deterministic generator from (seed, name),
checks `size`-many random instances, and reports pass/fail together with
a counterexample snippet on failure.  Subvariety-level counterexamples
are full scene documents that re-parse and reproduce the failure;
matrix-level ones carry the raw matrix and the name of the check, which
``reproduce_counterexample`` can replay.
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import chains as chains_mod
from . import exterior, spaces, subvariety


@dataclass
class PropertyResult:
    name: str
    passed: bool
    cases: int
    message: str = ""
    counterexample: dict | None = None


@dataclass
class PropertiesReport:
    seed: int
    size: int
    results: list = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            suffix = f" -- {r.message}" if r.message else ""
            lines.append(f"{status} {r.name} ({r.cases} cases){suffix}")
            if r.counterexample is not None:
                lines.append("  counterexample: " + json.dumps(r.counterexample))
        lines.append(
            f"{sum(r.passed for r in self.results)}/{len(self.results)} properties passed"
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "seed": self.seed,
            "size": self.size,
            "results": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "cases": r.cases,
                    "message": r.message,
                    "counterexample": r.counterexample,
                }
                for r in self.results
            ],
        }
        return json.dumps(payload, indent=2)


def _rng(seed, name):
    # crc32 keeps the per-property stream stable across processes
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def _random_skew(rng, dim):
    b = rng.standard_normal((dim, dim))
    return exterior.SkewMatrix(b - b.T)


def _skew_counterexample(matrix, check):
    return {"kind": "skew-matrix", "check": check, "matrix": matrix.entries.tolist()}


def _scene_counterexample(check, n, X, chain=None):
    scene = {
        "space": {"n": n, "structure": "standard"},
        "subvarieties": [{"name": X.name or "X", "basis": X.basis.T.tolist()}],
    }
    if chain:
        scene["subvarieties"] = [
            {"name": Y.name, "basis": Y.basis.T.tolist()} for Y in chain
        ]
        scene["chains"] = [[Y.name for Y in chain]]
    return {"kind": "scene", "check": check, "scene": scene}


def _random_population(rng, size, *, ns=(2, 3), d=2):
    out = []
    for i in range(size):
        n = ns[i % len(ns)]
        space = chains_mod._standard(n)
        out.append(subvariety.random_subvariety(space, d, rng, name=f"random-{i}"))
    return out


# --- exterior kernel properties -------------------------------------------


def _prop_pfaffian_fast_vs_oracle(seed, size, tol):
    rng = _rng(seed, "pfaffian-fast-vs-oracle")
    cases = 0
    for _ in range(size):
        dim = 2 * int(rng.integers(1, 7))
        a = _random_skew(rng, dim)
        fast = exterior.pfaffian(a)
        slow = exterior.pfaffian_oracle(a)
        cases += 1
        if abs(fast - slow) > 1e-10 * (1.0 + abs(slow)):
            return PropertyResult(
                "pfaffian-fast-vs-oracle", False, cases,
                f"fast {fast!r} vs oracle {slow!r}",
                _skew_counterexample(a, "fast-vs-oracle"),
            )
    return PropertyResult("pfaffian-fast-vs-oracle", True, cases)


def _prop_pfaffian_square_det(seed, size, tol):
    rng = _rng(seed, "pfaffian-square-det")
    cases = 0
    for _ in range(size):
        dim = 2 * int(rng.integers(1, 7))
        a = _random_skew(rng, dim)
        pf = exterior.pfaffian(a)
        det = float(np.linalg.det(a.entries))
        cases += 1
        if abs(pf * pf - det) > 1e-9 * (1.0 + abs(det)):
            return PropertyResult(
                "pfaffian-square-det", False, cases,
                f"Pf^2 {pf * pf!r} vs det {det!r}",
                _skew_counterexample(a, "square-det"),
            )
    return PropertyResult("pfaffian-square-det", True, cases)


def _prop_pfaffian_congruence(seed, size, tol):
    rng = _rng(seed, "pfaffian-congruence")
    cases = 0
    for _ in range(size):
        dim = 2 * int(rng.integers(1, 5))
        a = _random_skew(rng, dim)
        while True:
            b = rng.standard_normal((dim, dim))
            det_b = float(np.linalg.det(b))
            if abs(det_b) > 1e-3:
                break
        lhs = exterior.pfaffian(exterior.SkewMatrix(b.T @ a.entries @ b))
        rhs = det_b * exterior.pfaffian(a)
        cases += 1
        if abs(lhs - rhs) > 1e-9 * (1.0 + abs(rhs)):
            return PropertyResult(
                "pfaffian-congruence", False, cases,
                f"Pf(B^T A B) {lhs!r} vs det(B) Pf(A) {rhs!r}",
                _skew_counterexample(a, "congruence"),
            )
    return PropertyResult("pfaffian-congruence", True, cases)


def _prop_form_power_top(seed, size, tol):
    rng = _rng(seed, "form-power-top-coefficient")
    cases = 0
    for _ in range(size):
        d = int(rng.integers(1, 5))
        a = _random_skew(rng, 2 * d)
        fast = exterior.top_coefficient(a, d)
        slow = exterior.form_power(a, d).coefficient(tuple(range(2 * d)))
        cases += 1
        if abs(fast - slow) > 1e-10 * (1.0 + abs(slow)):
            return PropertyResult(
                "form-power-top-coefficient", False, cases,
                f"d!*Pf {fast!r} vs expansion {slow!r}",
                _skew_counterexample(a, "form-power-top"),
            )
    return PropertyResult("form-power-top-coefficient", True, cases)


def _random_multivector(rng, dim, grade):
    terms = {}
    for _ in range(int(rng.integers(1, 4))):
        key = tuple(sorted(rng.choice(dim, size=grade, replace=False).tolist()))
        terms[key] = float(rng.uniform(-2.0, 2.0))
    return exterior.Multivector(dim, terms)


def _prop_wedge_laws(seed, size, tol):
    rng = _rng(seed, "wedge-laws")
    cases = 0
    for _ in range(size):
        dim = int(rng.integers(4, 9))
        p, q, r = (int(rng.integers(1, 3)) for _ in range(3))
        a = _random_multivector(rng, dim, p)
        b = _random_multivector(rng, dim, q)
        c = _random_multivector(rng, dim, r)
        assoc_l = exterior.wedge(exterior.wedge(a, b), c)
        assoc_r = exterior.wedge(a, exterior.wedge(b, c))
        ab = exterior.wedge(a, b)
        ba = exterior.wedge(b, a) * float((-1.0) ** (p * q))
        cases += 1
        if not assoc_l.allclose(assoc_r, tol=1e-12) or not ab.allclose(ba, tol=1e-12):
            return PropertyResult("wedge-laws", False, cases, "wedge law violated")
    return PropertyResult("wedge-laws", True, cases)


# --- hyperkähler structure properties --------------------------------------


def _random_unit(rng, k=3):
    while True:
        v = rng.standard_normal(k)
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            return v / norm


def _prop_kahler_compatibility(seed, size, tol):
    rng = _rng(seed, "kahler-form-compatibility")
    cases = 0
    for _ in range(size):
        space = chains_mod._standard(int(rng.integers(1, 4)))
        L = spaces.induced_structure(space, _random_unit(rng))
        omega = spaces.kahler_form(space, L).matrix.entries
        x = rng.standard_normal(space.dim)
        y = rng.standard_normal(space.dim)
        lhs = float((L.matrix @ x) @ omega @ (L.matrix @ y))
        rhs = float(x @ omega @ y)
        cases += 1
        if abs(lhs - rhs) > 1e-10 * (1.0 + abs(rhs)):
            return PropertyResult(
                "kahler-form-compatibility", False, cases,
                f"omega(Lx, Ly) {lhs!r} vs omega(x, y) {rhs!r}",
            )
    return PropertyResult("kahler-form-compatibility", True, cases)


def _prop_rotation_composition(seed, size, tol):
    rng = _rng(seed, "rotation-composition")
    cases = 0
    for _ in range(size):
        space = chains_mod._standard(int(rng.integers(1, 3)))
        l1 = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        l2 = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        two_step = spaces.rotate_structure(spaces.rotate_structure(space, l1), l2)
        one_step = spaces.rotate_structure(space, l1 * l2)
        residual = max(
            float(np.max(np.abs(two_step.J - one_step.J))),
            float(np.max(np.abs(two_step.K - one_step.K))),
        )
        cases += 1
        if residual > 1e-10:
            return PropertyResult(
                "rotation-composition", False, cases, f"residual {residual!r}"
            )
    return PropertyResult("rotation-composition", True, cases)


def _prop_rotation_conjugates_omega(seed, size, tol):
    rng = _rng(seed, "rotation-conjugates-omega")
    cases = 0
    for _ in range(size):
        space = chains_mod._standard(int(rng.integers(1, 3)))
        lam = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        rotated = spaces.rotate_structure(space, lam)
        omega = spaces.holomorphic_symplectic_form(space)
        expected = omega.scaled(lam.conjugate())
        actual = spaces.holomorphic_symplectic_form(rotated)
        cases += 1
        if not actual.allclose(expected, tol=1e-10):
            return PropertyResult("rotation-conjugates-omega", False, cases)
    return PropertyResult("rotation-conjugates-omega", True, cases)


def _prop_recovery_roundtrip(seed, size, tol):
    rng = _rng(seed, "structure-recovery-roundtrip")
    cases = 0
    for _ in range(size):
        base = chains_mod._standard(int(rng.integers(1, 3)))
        lam = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        space = spaces.rotate_structure(base, lam)
        recovered = spaces.recover_structure(
            space.g, spaces.holomorphic_symplectic_form(space), space.I
        )
        cases += 1
        if isinstance(recovered, spaces.RecoveryFailure):
            return PropertyResult(
                "structure-recovery-roundtrip", False, cases, str(recovered)
            )
        residual = max(
            float(np.max(np.abs(recovered.J - space.J))),
            float(np.max(np.abs(recovered.K - space.K))),
        )
        if residual > 1e-10:
            return PropertyResult(
                "structure-recovery-roundtrip", False, cases, f"residual {residual!r}"
            )
    return PropertyResult("structure-recovery-roundtrip", True, cases)


def _prop_su2_invariance(seed, size, tol):
    rng = _rng(seed, "su2-top-power-invariance")
    cases = 0
    for n in (1, 2):
        space = chains_mod._standard(n)
        reference = exterior.top_coefficient(space.omega_I.matrix, 2 * n)
        for _ in range(size):
            L = spaces.induced_structure(space, _random_unit(rng))
            value = exterior.top_coefficient(
                spaces.kahler_form(space, L).matrix, 2 * n
            )
            cases += 1
            if abs(value - reference) > 1e-9 * abs(reference):
                return PropertyResult(
                    "su2-top-power-invariance", False, cases,
                    f"top coefficient {value!r} vs {reference!r} at n={n}",
                )
    return PropertyResult("su2-top-power-invariance", True, cases)


# --- subvariety properties --------------------------------------------------


def _prop_wirtinger_inequality(seed, size, tol):
    rng = _rng(seed, "wirtinger-inequality")
    cases = 0
    for X in _random_population(rng, size):
        # raw signed degrees: a broken Pfaffian shows up here instead of
        # being masked by the positivity gate in deg_omega
        deg_o = subvariety.form_degree(X, X.space.omega_I)
        deg_s = subvariety.deg_Omega(X)
        cases += 1
        if deg_o < abs(deg_s) - tol * deg_o:
            return PropertyResult(
                "wirtinger-inequality", False, cases,
                f"deg_omega {deg_o!r} < |deg_Omega| {abs(deg_s)!r}",
                _scene_counterexample("wirtinger-inequality", X.space.n, X),
            )
    return PropertyResult("wirtinger-inequality", True, cases)


def _prop_equality_iff_trianalytic(seed, size, tol):
    rng = _rng(seed, "wirtinger-equality-iff-trianalytic")
    cases = 0
    population = _random_population(rng, size)
    for i in range(max(size // 4, 1)):
        n = (2, 3)[i % 2]
        space = chains_mod._standard(n)
        population.append(
            subvariety.quaternionic_span(
                space, [rng.standard_normal(space.dim)], name=f"quat-{i}"
            )
        )
    for X in population:
        report = subvariety.wirtinger_number(X)
        cases += 1
        near_one = report.wirtinger >= 1.0 - tol
        if near_one != report.trianalytic:
            return PropertyResult(
                "wirtinger-equality-iff-trianalytic", False, cases,
                f"W {report.wirtinger!r} but trianalytic={report.trianalytic}",
                _scene_counterexample("equality-iff-trianalytic", X.space.n, X),
            )
    return PropertyResult("wirtinger-equality-iff-trianalytic", True, cases)


def _prop_degree_strategy_agreement(seed, size, tol):
    rng = _rng(seed, "degree-strategy-agreement")
    cases = 0
    for X in _random_population(rng, size):
        via_j = subvariety.deg_Omega(X, strategy="pfaffian-of-omega-j")
        via_k = subvariety.form_degree(X, X.space.omega_K)
        via_pair = subvariety.deg_Omega(X, strategy="complex-pfaffian")
        via_oracle = subvariety.deg_Omega(X, strategy="oracle")
        scale = max(abs(via_j), abs(via_k), subvariety.deg_omega(X))
        cases += 1
        spread = max(via_j, via_k, via_pair, via_oracle) - min(
            via_j, via_k, via_pair, via_oracle
        )
        if spread > 1e-8 * scale:
            return PropertyResult(
                "degree-strategy-agreement", False, cases,
                f"spread {spread!r} across strategies",
                _scene_counterexample("degree-strategy-agreement", X.space.n, X),
            )
    return PropertyResult("degree-strategy-agreement", True, cases)


def _prop_degree_volume(seed, size, tol):
    rng = _rng(seed, "kahler-degree-volume")
    cases = 0
    for X in _random_population(rng, size):
        deg_o = subvariety.deg_omega(X)
        expected = math.factorial(X.d) * subvariety.volume(X)
        cases += 1
        if abs(deg_o - expected) > tol * abs(expected):
            return PropertyResult(
                "kahler-degree-volume", False, cases,
                f"deg_omega {deg_o!r} vs d!*Vol {expected!r}",
                _scene_counterexample("kahler-degree-volume", X.space.n, X),
            )
    return PropertyResult("kahler-degree-volume", True, cases)


def _prop_lattice_invariance(seed, size, tol):
    rng = _rng(seed, "lattice-index-invariance")
    cases = 0
    for X in _random_population(rng, size):
        k = 2 * X.d
        while True:
            S = rng.integers(-2, 3, size=(k, k)).astype(float)
            if abs(np.linalg.det(S)) >= 1.0:
                break
        sub = subvariety.Subvariety(
            X.space, X.basis, lattice=X.lattice @ S, name=X.name
        )
        w0 = subvariety.wirtinger_number(X).wirtinger
        w1 = subvariety.wirtinger_number(sub).wirtinger
        cases += 1
        if abs(w0 - w1) > 1e-10 * max(1.0, w0):
            return PropertyResult(
                "lattice-index-invariance", False, cases,
                f"W changed {w0!r} -> {w1!r} under a finite-index sublattice",
                _scene_counterexample("lattice-index-invariance", X.space.n, X),
            )
    return PropertyResult("lattice-index-invariance", True, cases)


def _prop_rotation_degree_invariance(seed, size, tol):
    rng = _rng(seed, "rotation-degree-invariance")
    cases = 0
    for X in _random_population(rng, size):
        lam = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        rotated_space = spaces.rotate_structure(X.space, lam)
        rotated = subvariety.Subvariety(
            rotated_space, X.basis, lattice=X.lattice, name=X.name
        )
        d0 = abs(subvariety.deg_Omega(X))
        d1 = abs(subvariety.deg_Omega(rotated))
        cases += 1
        if abs(d0 - d1) > tol * max(d0, subvariety.deg_omega(X)):
            return PropertyResult(
                "rotation-degree-invariance", False, cases,
                f"|deg_Omega| changed {d0!r} -> {d1!r} under rotation",
                _scene_counterexample("rotation-degree-invariance", X.space.n, X),
            )
    return PropertyResult("rotation-degree-invariance", True, cases)


# --- chain properties --------------------------------------------------------


def _prop_chain_monotonicity(seed, size, tol):
    suite = chains_mod.generate_chain_suite(seed, max(size, 10))
    cases = 0
    for chain in suite:
        report = chains_mod.verify_chain(chain)
        for link in report.links:
            if link.status == "SKIPPED-NO-CERTIFICATE":
                continue
            cases += 1
            if link.w_inner > link.w_outer + tol:
                return PropertyResult(
                    "chain-monotonicity-certified", False, cases,
                    f"W({link.inner}) {link.w_inner!r} > W({link.outer}) {link.w_outer!r}",
                    _scene_counterexample(
                        "chain-monotonicity", chain[0].space.n, chain[0], chain=chain
                    ),
                )
    return PropertyResult("chain-monotonicity-certified", True, cases)


def _prop_chain_corollary(seed, size, tol):
    suite = chains_mod.generate_chain_suite(seed + 1, max(size, 10))
    cases = 0
    for chain in suite:
        report = chains_mod.verify_chain(chain)
        for i, link in enumerate(report.links):
            inner_report = report.reports[i]
            cert = report.certificates[i + 1]
            if not (cert and cert.valid):
                continue
            if not (inner_report.trianalytic and inner_report.wirtinger >= 1.0 - tol):
                continue
            outer_report = report.reports[i + 1]
            cases += 1
            if abs(outer_report.wirtinger - 1.0) > tol or not outer_report.trianalytic:
                return PropertyResult(
                    "chain-corollary-certified", False, cases,
                    f"certified outer {link.outer} above a trianalytic element "
                    f"has W {outer_report.wirtinger!r}",
                    _scene_counterexample(
                        "chain-corollary", chain[0].space.n, chain[0], chain=chain
                    ),
                )
    return PropertyResult("chain-corollary-certified", True, cases)


def _prop_certificate_soundness(seed, size, tol):
    suite = chains_mod.generate_chain_suite(seed + 2, max(size, 10))
    cases = 0
    for chain in suite:
        for X in chain[1:]:
            try:
                cert = chains_mod.linear_calabi_yau(X)
            except ValueError:
                continue
            if not cert.valid:
                continue
            cases += 1
            space = cert.recovered
            name, residual = spaces.worst_defect(
                spaces.quaternionic_defects(space.I, space.J, space.K, space.g)
            )
            if residual > 1e-8:
                return PropertyResult(
                    "certificate-soundness", False, cases,
                    f"{name} residual {residual!r} on recovered structure",
                )
            Q = X.frame
            restricted_re = Q.T @ X.space._gJ @ Q
            restricted_im = Q.T @ X.space._gK @ Q
            re_res = float(np.max(np.abs(space._gJ - restricted_re)))
            im_res = float(np.max(np.abs(space._gK - restricted_im)))
            scale = max(float(np.max(np.abs(restricted_re))), 1.0)
            if max(re_res, im_res) > 1e-8 * scale:
                return PropertyResult(
                    "certificate-soundness", False, cases,
                    "recovered form does not match the restricted form",
                )
            kahler_res = float(
                np.max(np.abs(space._gI - cert.scale * (Q.T @ X.space._gI @ Q)))
            )
            if kahler_res > 1e-8:
                return PropertyResult(
                    "certificate-soundness", False, cases,
                    "certificate Kähler form does not match scale * restricted omega_I",
                )
    return PropertyResult("certificate-soundness", True, cases)


def _prop_certificate_scale(seed, size, tol):
    suite = chains_mod.generate_chain_suite(seed + 3, max(size, 10))
    cases = 0
    for chain in suite:
        for X in chain[1:]:
            try:
                cert = chains_mod.linear_calabi_yau(X)
            except ValueError:
                continue
            if not cert.valid:
                continue
            d = X.d
            # rescaled Kähler degree: d! * Pf(scale * restricted omega_I) * Vol
            A = exterior.SkewMatrix(
                cert.scale * (X.frame.T @ X.space._gI @ X.frame)
            )
            value = math.factorial(d) * exterior.pfaffian(A) * subvariety.volume(X)
            target = abs(cert.report.deg_Omega)
            cases += 1
            if abs(value - target) > 1e-8 * max(target, cert.report.deg_omega):
                return PropertyResult(
                    "certificate-scale-matches-degree", False, cases,
                    f"rescaled degree {value!r} vs |deg_Omega| {target!r}",
                )
    return PropertyResult("certificate-scale-matches-degree", True, cases)


def _prop_degree_scaling_law(seed, size, tol):
    rng = _rng(seed, "degree-scaling-law")
    cases = 0
    for X in _random_population(rng, size):
        c = float(rng.uniform(0.2, 2.5))
        base = subvariety.form_degree(X, X.space.omega_I)
        scaled_form = exterior.SkewMatrix(c * X.space._gI)
        scaled = subvariety.form_degree(X, scaled_form)
        cases += 1
        if abs(scaled - (c ** X.d) * base) > 1e-10 * max(abs(scaled), abs(base)):
            return PropertyResult(
                "degree-scaling-law", False, cases,
                f"deg under c*omega {scaled!r} vs c^d * deg {(c ** X.d) * base!r}",
                _scene_counterexample("degree-scaling-law", X.space.n, X),
            )
    return PropertyResult("degree-scaling-law", True, cases)


PROPERTIES = {
    "pfaffian-fast-vs-oracle": _prop_pfaffian_fast_vs_oracle,
    "pfaffian-square-det": _prop_pfaffian_square_det,
    "pfaffian-congruence": _prop_pfaffian_congruence,
    "form-power-top-coefficient": _prop_form_power_top,
    "wedge-laws": _prop_wedge_laws,
    "kahler-form-compatibility": _prop_kahler_compatibility,
    "rotation-composition": _prop_rotation_composition,
    "rotation-conjugates-omega": _prop_rotation_conjugates_omega,
    "structure-recovery-roundtrip": _prop_recovery_roundtrip,
    "su2-top-power-invariance": _prop_su2_invariance,
    "wirtinger-inequality": _prop_wirtinger_inequality,
    "wirtinger-equality-iff-trianalytic": _prop_equality_iff_trianalytic,
    "degree-strategy-agreement": _prop_degree_strategy_agreement,
    "kahler-degree-volume": _prop_degree_volume,
    "lattice-index-invariance": _prop_lattice_invariance,
    "rotation-degree-invariance": _prop_rotation_degree_invariance,
    "chain-monotonicity-certified": _prop_chain_monotonicity,
    "chain-corollary-certified": _prop_chain_corollary,
    "certificate-soundness": _prop_certificate_soundness,
    "certificate-scale-matches-degree": _prop_certificate_scale,
    "degree-scaling-law": _prop_degree_scaling_law,
}


def run_properties(seed: int, size: int, *, tolerance: float = 1e-9) -> PropertiesReport:
    """Run every named property at the given seed and population size."""
    if size < 1:
        raise ValueError("size must be >= 1")
    report = PropertiesReport(seed=seed, size=size)
    for name, prop in PROPERTIES.items():
        report.results.append(prop(seed, size, tolerance))
    return report


def reproduce_counterexample(snippet: dict) -> bool:
    """Re-run the failed check from a counterexample dump.

    Returns True when the failure reproduces.  Scene snippets re-parse
    through the scene pipeline; skew-matrix snippets replay the matrix
    identity.
    """
    from .scene import parse_scene

    kind = snippet.get("kind")
    check = snippet.get("check")
    if kind == "skew-matrix":
        a = exterior.SkewMatrix(snippet["matrix"])
        if check == "fast-vs-oracle":
            fast, slow = exterior.pfaffian(a), exterior.pfaffian_oracle(a)
            return abs(fast - slow) > 1e-10 * (1.0 + abs(slow))
        if check == "square-det":
            pf, det = exterior.pfaffian(a), float(np.linalg.det(a.entries))
            return abs(pf * pf - det) > 1e-9 * (1.0 + abs(det))
        raise ValueError(f"cannot replay skew-matrix check {check!r}")
    if kind == "scene":
        scene = parse_scene(snippet["scene"])
        space = scene.space()
        built = scene.build_subvarieties(space)
        if check == "wirtinger-inequality":
            X = next(iter(built.values()))
            deg_o = subvariety.form_degree(X, X.space.omega_I)
            return deg_o < abs(subvariety.deg_Omega(X)) - 1e-9 * deg_o
        if check == "equality-iff-trianalytic":
            X = next(iter(built.values()))
            report = subvariety.wirtinger_number(X)
            return (report.wirtinger >= 1.0 - 1e-9) != report.trianalytic
        raise ValueError(f"cannot replay scene check {check!r}")
    raise ValueError(f"unknown counterexample kind {kind!r}")
