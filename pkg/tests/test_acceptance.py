"""Acceptance criteria, one test per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL
line per criterion.  All tolerances are pinned here.
"""

import json
import math
import time

import numpy as np
import pytest

import wirtinger as w
from wirtinger.spaces import quaternionic_defects, worst_defect

POPULATION_SEED = 20260810
POPULATION_SIZE = 1000


def _verdict(name, ok):
    print(f"{'PASS' if ok else 'FAIL'}: {name}")
    assert ok, name


@pytest.fixture(scope="module")
def spaces():
    return {2: w.standard_space(2), 3: w.standard_space(3)}


@pytest.fixture(scope="module")
def population(spaces):
    """Seed-fixed random population: 1000 I-complex subvarieties, d = 2."""
    rng = np.random.default_rng(POPULATION_SEED)
    subs = []
    for i in range(POPULATION_SIZE):
        n = 2 if i % 2 else 3
        subs.append(w.random_subvariety(spaces[n], 2, rng, name=f"pop-{i}"))
    return subs


def test_criterion_01_wirtinger_inequality(spaces):
    start = time.perf_counter()
    rng = np.random.default_rng(POPULATION_SEED)
    violations = 0
    for i in range(POPULATION_SIZE):
        n = 2 if i % 2 else 3
        X = w.random_subvariety(spaces[n], 2, rng, name=f"pop-{i}")
        deg_o = w.deg_omega(X)
        deg_s = w.deg_Omega(X)
        if deg_o < abs(deg_s) - 1e-9 * deg_o:
            violations += 1
    elapsed = time.perf_counter() - start
    ok = violations == 0 and elapsed < 10.0
    print(f"  {POPULATION_SIZE} subvarieties, {violations} violations, {elapsed:.2f}s")
    _verdict("criterion 1: Wirtinger inequality on 1000 random subvarieties", ok)


def test_criterion_02_equality_iff_trianalytic(spaces, population):
    rng = np.random.default_rng(POPULATION_SEED + 1)
    extended = list(population)
    for i in range(50):
        n = 2 if i % 2 else 3
        extended.append(
            w.quaternionic_span(
                spaces[n], [rng.standard_normal(spaces[n].dim)], name=f"quat-{i}"
            )
        )
    misclassified = 0
    for X in extended:
        report = w.wirtinger_number(X)
        near_one = report.wirtinger >= 1.0 - 1e-9
        j_invariant = w.is_trianalytic(X)
        if near_one != j_invariant:
            misclassified += 1
    print(f"  {len(extended)} subvarieties, {misclassified} misclassifications")
    _verdict("criterion 2: W = 1 iff J-invariant, zero misclassifications",
             misclassified == 0)


def test_criterion_03_degree_identity_and_expansion(population):
    worst = 0.0
    for X in population[:200]:
        via_j = w.deg_Omega(X, strategy="pfaffian-of-omega-j")
        via_k = w.form_degree(X, X.space.omega_K)
        via_pair = w.deg_Omega(X, strategy="complex-pfaffian")
        scale = max(abs(via_j), w.deg_omega(X))
        spread = max(via_j, via_k, via_pair) - min(via_j, via_k, via_pair)
        worst = max(worst, spread / scale)
    agree = worst <= 1e-8

    # symbolic d = 2 expansion: 2 * (Omega ^ conj(Omega) / 4) equals the
    # top (that is, (2,2)) part of omega_J^2 on every restricted 4-space
    expansion_ok = True
    for X in population[:50]:
        mv_j = w.two_form_multivector(w.restrict_form(X.space.omega_J, X))
        mv_k = w.two_form_multivector(w.restrict_form(X.space.omega_K, X))
        omega = mv_j + 1j * mv_k
        lhs = w.wedge(omega, omega.conjugate()) * (2.0 / 4.0)
        rhs = w.wedge(mv_j, mv_j).grade_part(4)
        scale = max(lhs.max_abs(), rhs.max_abs(), 1.0)
        top = tuple(range(4))
        delta = abs(complex(lhs.coefficient(top)) - complex(rhs.coefficient(top)))
        if delta > 1e-12 * scale:
            expansion_ok = False
    print(f"  worst strategy spread {worst:.2e}; d=2 expansion ok: {expansion_ok}")
    _verdict("criterion 3: degree identity with the /4 normalization", agree and expansion_ok)


def test_criterion_04_degree_equals_factorial_volume(population):
    worst = 0.0
    for X in population:
        deg_o = w.deg_omega(X)
        expected = math.factorial(X.d) * w.volume(X)
        worst = max(worst, abs(deg_o - expected) / expected)
    print(f"  worst relative deviation {worst:.2e}")
    _verdict("criterion 4: deg_omega = d! * Vol", worst <= 1e-9)


def test_criterion_05_pfaffian_cross_checks():
    start = time.perf_counter()
    rng = np.random.default_rng(POPULATION_SEED + 2)
    ok = True
    for _ in range(500):
        dim = 2 * int(rng.integers(1, 7))  # dims 2..12
        b = rng.standard_normal((dim, dim))
        a = w.SkewMatrix(b - b.T)
        fast = w.pfaffian(a)
        slow = w.pfaffian_oracle(a)
        if abs(fast - slow) > 1e-10 * (1.0 + abs(slow)):
            ok = False
        det = np.linalg.det(a.entries)
        if abs(fast * fast - det) > 1e-9 * (1.0 + abs(det)):
            ok = False
    for _ in range(100):
        dim = 2 * int(rng.integers(2, 5))  # dims 4..8
        b = rng.standard_normal((dim, dim))
        a = w.SkewMatrix(b - b.T)
        m = rng.standard_normal((dim, dim))
        lhs = w.pfaffian(w.SkewMatrix(m.T @ a.entries @ m))
        rhs = np.linalg.det(m) * w.pfaffian(a)
        if abs(lhs - rhs) > 1e-9 * (1.0 + abs(rhs)):
            ok = False
    elapsed = time.perf_counter() - start
    print(f"  600 matrices in {elapsed:.2f}s")
    _verdict("criterion 5: Pfaffian fast path vs oracle, det and congruence laws",
             ok and elapsed < 5.0)


def test_criterion_06_rotation_mechanism():
    rng = np.random.default_rng(POPULATION_SEED + 3)
    base = w.standard_space(2)
    omega = w.holomorphic_symplectic_form(base)
    ok = True
    for _ in range(100):
        lam = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        rotated = w.rotate_structure(base, lam)
        _, residual = worst_defect(
            quaternionic_defects(rotated.I, rotated.J, rotated.K, rotated.g)
        )
        if residual > 1e-10:
            ok = False
        if not w.holomorphic_symplectic_form(rotated).allclose(
            omega.scaled(lam.conjugate()), tol=1e-10
        ):
            ok = False
    # composition law
    for _ in range(20):
        l1 = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        l2 = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        twice = w.rotate_structure(w.rotate_structure(base, l1), l2)
        once = w.rotate_structure(base, l1 * l2)
        if max(
            float(np.max(np.abs(twice.J - once.J))),
            float(np.max(np.abs(twice.K - once.K))),
        ) > 1e-10:
            ok = False
    _verdict("criterion 6: rotation invariants, conj(lambda) law, composition", ok)


def test_criterion_07_su2_invariance():
    rng = np.random.default_rng(POPULATION_SEED + 4)
    ok = True
    for n in (1, 2):
        space = w.standard_space(n)
        reference = w.top_coefficient(space.omega_I.matrix, 2 * n)
        for _ in range(100):
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            value = w.top_coefficient(
                w.kahler_form(space, tuple(v)).matrix, 2 * n
            )
            if abs(value - reference) > 1e-9 * abs(reference):
                ok = False
    _verdict("criterion 7: SU(2)-invariance of top powers on the standard torus", ok)


def test_criterion_08_chain_monotonicity():
    suite = w.generate_chain_suite(POPULATION_SEED + 5, 200)
    certified = 0
    skipped = 0
    violations = 0
    reasons = {}
    for chain in suite:
        report = w.verify_chain(chain)
        for link in report.links:
            if link.status == "SKIPPED-NO-CERTIFICATE":
                skipped += 1
                reasons[link.reason] = reasons.get(link.reason, 0) + 1
            else:
                certified += 1
                if link.w_inner > link.w_outer + 1e-9:
                    violations += 1
    total = certified + skipped
    print(
        f"  {len(suite)} chains, {certified} certified links, {skipped} skipped "
        f"({100.0 * skipped / total:.1f}% skip rate), {violations} violations"
    )
    for reason, count in sorted(reasons.items()):
        print(f"    skipped {count}x: {reason}")
    _verdict("criterion 8: monotonicity on certified links over 200 chains",
             violations == 0 and len(suite) >= 200)


def test_criterion_09_chain_consequence():
    suite = w.generate_chain_suite(POPULATION_SEED + 6, 200)
    instances = 0
    failures = 0
    for chain in suite:
        report = w.verify_chain(chain)
        for i in range(len(report.links)):
            cert = report.certificates[i + 1]
            inner = report.reports[i]
            if not (cert and cert.valid and inner.trianalytic
                    and inner.wirtinger >= 1.0 - 1e-9):
                continue
            instances += 1
            outer = report.reports[i + 1]
            if abs(outer.wirtinger - 1.0) > 1e-9 or not outer.trianalytic:
                failures += 1
    print(f"  {instances} certified instances above a trianalytic element, "
          f"{failures} failures")
    _verdict("criterion 9: certified outer above trianalytic inner is trianalytic",
             instances > 0 and failures == 0)


def test_criterion_10_endpoint_fixtures():
    # minimal full-torus scene
    doc = {
        "space": {"n": 1, "structure": "standard"},
        "subvarieties": [{"name": "M", "basis": np.eye(4).tolist()}],
    }
    row = w.run_scene(w.parse_scene(doc)).subvarieties[0]
    ok = (
        abs(row["deg_omega"] - 2.0) <= 1e-9
        and abs(row["deg_Omega"] - 2.0) <= 1e-9
        and abs(row["wirtinger"] - 1.0) <= 1e-9
    )

    # the complex plane inside H^2
    basis = np.zeros((4, 8))
    basis[0, 0] = 1.0
    basis[1, 1] = 1.0
    basis[2, 4] = 1.0
    basis[3, 5] = 1.0
    doc = {
        "space": {"n": 2, "structure": "standard"},
        "subvarieties": [{"name": "plane", "basis": basis.tolist()}],
    }
    row = w.run_scene(w.parse_scene(doc)).subvarieties[0]
    ok = ok and abs(row["wirtinger"]) <= 1e-12

    # interpolating family: frozen oracle values, strict interior, monotone
    frozen = {
        math.pi / 8: 0.9238795325112867,
        math.pi / 4: 0.7071067811865476,
        3 * math.pi / 8: 0.3826834323650898,
    }
    s2 = w.standard_space(2)
    values = []
    for theta, expected in frozen.items():
        got = w.wirtinger_number(w.interpolating_subspace(s2, theta)).wirtinger
        values.append(got)
        if abs(got - expected) > 1e-9 or not 0.0 < got < 1.0:
            ok = False
    if not all(a >= b - 1e-12 for a, b in zip(values, values[1:])):
        ok = False
    print(f"  family values {[f'{v:.12f}' for v in values]}")
    _verdict("criterion 10: endpoint fixtures and the interpolating family", ok)


def test_criterion_11_determinism(tmp_path):
    from wirtinger.cli import main

    line = w.quaternionic_span(w.standard_space(2), [np.eye(8)[0]], name="line")
    doc = {
        "space": {"n": 2, "structure": "standard"},
        "subvarieties": [
            {"name": "line", "basis": line.basis.T.tolist()},
            {"name": "M", "basis": np.eye(8).tolist()},
        ],
        "chains": [["line", "M"]],
        "options": {"seed": 12, "tolerance": 1e-9},
    }
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(doc))

    import contextlib
    import io

    outputs = []
    for _ in range(2):
        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = main(["compute", str(path), "--format", "json"])
        assert code == 0
        outputs.append(buffer.getvalue())
    identical = outputs[0] == outputs[1] and len(outputs[0]) > 0
    _verdict("criterion 11: byte-identical structured output across runs", identical)
