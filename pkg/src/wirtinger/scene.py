"""Scene documents and the batch runner.

A scene is a JSON object describing one ambient space, named subvarieties
(basis rows are ambient coordinates of spanning vectors) and optional
chains.  Parsing validates everything eagerly with error paths; running a
scene produces a deterministic report, byte-identical for identical
scene + seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .chains import verify_chain
from .spaces import QuaternionicSpace, standard_space
from .subvariety import (
    DEGREE_STRATEGIES,
    ORACLE_MAX_COMPLEX_DIM,
    Subvariety,
    deg_Omega,
    wirtinger_number,
)

DEFAULT_TOLERANCE = 1e-9


class SceneError(ValueError):
    """Scene document violation; ``path`` locates the offending entry."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def _require(condition, message, path):
    if not condition:
        raise SceneError(message, path)


def _matrix(value, rows, cols, path):
    _require(isinstance(value, list) and len(value) == rows,
             f"expected {rows} rows", path)
    out = np.zeros((rows, cols))
    for r, row in enumerate(value):
        _require(isinstance(row, list) and len(row) == cols,
                 f"expected {cols} numbers", f"{path}[{r}]")
        for c, x in enumerate(row):
            _require(isinstance(x, (int, float)) and not isinstance(x, bool),
                     "expected a number", f"{path}[{r}][{c}]")
            out[r, c] = float(x)
    return out


@dataclass
class SubvarietySpec:
    name: str
    basis: np.ndarray   # columns span the subspace
    lattice: np.ndarray | None

    def __eq__(self, other):
        if not isinstance(other, SubvarietySpec):
            return NotImplemented
        if self.name != other.name or not np.array_equal(self.basis, other.basis):
            return False
        if (self.lattice is None) != (other.lattice is None):
            return False
        return self.lattice is None or np.array_equal(self.lattice, other.lattice)


@dataclass
class Scene:
    """Validated scene document."""

    n: int
    structure: str | dict  # "standard" or {"I","J","K","g"} arrays
    subvarieties: list
    chains: list
    options: dict
    warnings: list = field(default_factory=list, compare=False)

    def __eq__(self, other):
        if not isinstance(other, Scene):
            return NotImplemented
        if (self.n, self.chains, self.options) != (other.n, other.chains, other.options):
            return False
        if isinstance(self.structure, str) != isinstance(other.structure, str):
            return False
        if isinstance(self.structure, str):
            if self.structure != other.structure:
                return False
        else:
            for key in ("I", "J", "K", "g"):
                if not np.array_equal(self.structure[key], other.structure[key]):
                    return False
        return self.subvarieties == other.subvarieties

    def space(self) -> QuaternionicSpace:
        if isinstance(self.structure, str):
            return standard_space(self.n)
        return QuaternionicSpace(
            self.structure["I"], self.structure["J"], self.structure["K"],
            self.structure["g"], tol=1e-8,
        )

    def build_subvarieties(self, space=None) -> dict:
        space = space or self.space()
        out = {}
        for spec in self.subvarieties:
            out[spec.name] = Subvariety(
                space, spec.basis, lattice=spec.lattice, name=spec.name
            )
        return out


def parse_scene(document) -> Scene:
    """Parse and validate a scene document (JSON text or an object)."""
    if isinstance(document, (str, bytes)):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as err:
            raise SceneError(f"invalid JSON: {err}", "$") from None
    else:
        data = document
    _require(isinstance(data, dict), "scene must be an object", "$")
    allowed = {"space", "subvarieties", "chains", "options"}
    for key in data:
        _require(key in allowed, f"unknown key {key!r}", "$")
    _require("space" in data, "missing key 'space'", "$")
    _require("subvarieties" in data, "missing key 'subvarieties'", "$")

    space_obj = data["space"]
    _require(isinstance(space_obj, dict), "expected an object", "$.space")
    for key in space_obj:
        _require(key in {"n", "structure"}, f"unknown key {key!r}", "$.space")
    n = space_obj.get("n")
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 1,
             "'n' must be a positive integer", "$.space.n")
    dim = 4 * n
    structure = space_obj.get("structure", "standard")
    if structure != "standard":
        _require(isinstance(structure, dict), "expected \"standard\" or an object",
                 "$.space.structure")
        for key in ("I", "J", "K", "g"):
            _require(key in structure, f"missing matrix {key!r}", "$.space.structure")
        structure = {
            key: _matrix(structure[key], dim, dim, f"$.space.structure.{key}")
            for key in ("I", "J", "K", "g")
        }

    warnings = []
    subs = data["subvarieties"]
    _require(isinstance(subs, list) and subs, "expected a nonempty list", "$.subvarieties")
    specs = []
    names = set()
    for idx, entry in enumerate(subs):
        path = f"$.subvarieties[{idx}]"
        _require(isinstance(entry, dict), "expected an object", path)
        for key in entry:
            _require(key in {"name", "basis", "lattice"}, f"unknown key {key!r}", path)
        name = entry.get("name")
        _require(isinstance(name, str) and name, "missing or empty 'name'", path)
        _require(name not in names, f"duplicate name {name!r}", path)
        names.add(name)
        rows = entry.get("basis")
        _require(isinstance(rows, list) and rows, "missing 'basis' rows", f"{path}.basis")
        basis = _matrix(rows, len(rows), dim, f"{path}.basis").T
        lattice = None
        if "lattice" in entry:
            k = basis.shape[1]
            lattice = _matrix(entry["lattice"], k, k, f"{path}.lattice")
        specs.append(SubvarietySpec(name=name, basis=basis, lattice=lattice))
        if basis.shape[1] % 2 == 0 and (basis.shape[1] // 2) % 2:
            warnings.append(
                f"subvariety {name!r} has odd complex dimension; "
                "degree computations will fail"
            )

    chains = []
    for idx, chain in enumerate(data.get("chains", [])):
        path = f"$.chains[{idx}]"
        _require(isinstance(chain, list) and chain, "expected a nonempty list of names", path)
        for j, member in enumerate(chain):
            _require(isinstance(member, str), "expected a name", f"{path}[{j}]")
            _require(member in names, f"unresolved name {member}", f"{path}[{j}]")
        chains.append(list(chain))

    options = {"seed": 0, "tolerance": DEFAULT_TOLERANCE}
    raw_options = data.get("options", {})
    _require(isinstance(raw_options, dict), "expected an object", "$.options")
    for key, value in raw_options.items():
        _require(key in options, f"unknown option {key!r}", "$.options")
        if key == "seed":
            _require(isinstance(value, int) and not isinstance(value, bool),
                     "'seed' must be an integer", "$.options.seed")
            options["seed"] = value
        else:
            _require(isinstance(value, (int, float)) and not isinstance(value, bool)
                     and value > 0, "'tolerance' must be a positive number",
                     "$.options.tolerance")
            options["tolerance"] = float(value)

    scene = Scene(
        n=n, structure=structure, subvarieties=specs, chains=chains,
        options=options, warnings=warnings,
    )
    # eager validation of the geometry, with entry names in the errors
    try:
        space = scene.space()
    except ValueError as err:
        raise SceneError(str(err), "$.space.structure") from None
    for spec in specs:
        try:
            Subvariety(space, spec.basis, lattice=spec.lattice, name=spec.name)
        except ValueError as err:
            raise SceneError(str(err), f"$.subvarieties[{spec.name!r}]") from None
    return scene


def scene_to_dict(scene: Scene) -> dict:
    out = {"space": {"n": scene.n}}
    if isinstance(scene.structure, str):
        out["space"]["structure"] = scene.structure
    else:
        out["space"]["structure"] = {
            key: scene.structure[key].tolist() for key in ("I", "J", "K", "g")
        }
    out["subvarieties"] = []
    for spec in scene.subvarieties:
        entry = {"name": spec.name, "basis": spec.basis.T.tolist()}
        if spec.lattice is not None:
            entry["lattice"] = spec.lattice.tolist()
        out["subvarieties"].append(entry)
    if scene.chains:
        out["chains"] = [list(chain) for chain in scene.chains]
    out["options"] = dict(scene.options)
    return out


def serialize_scene(scene: Scene) -> str:
    """Scene back to JSON text; parse_scene(serialize_scene(s)) == s."""
    return json.dumps(scene_to_dict(scene), indent=2)


@dataclass
class Report:
    """Deterministic result of running one scene."""

    metadata: dict
    subvarieties: list
    chains: list
    violations: list
    warnings: list

    def to_json(self) -> str:
        payload = {
            "metadata": self.metadata,
            "subvarieties": self.subvarieties,
            "chains": self.chains,
            "violations": self.violations,
            "warnings": self.warnings,
        }
        return json.dumps(payload, indent=2)

    def to_table(self) -> str:
        lines = []
        header = (
            f"{'name':<20} {'d':>2} {'volume':>12} {'deg_omega':>12} "
            f"{'deg_Omega':>12} {'W':>10} {'trianalytic':>11}"
        )
        lines.append(header)
        lines.append("-" * len(header))
        for row in self.subvarieties:
            lines.append(
                f"{row['name']:<20} {row['d']:>2} {row['volume']:>12.6g} "
                f"{row['deg_omega']:>12.6g} {row['deg_Omega']:>12.6g} "
                f"{row['wirtinger']:>10.6g} {str(row['trianalytic']):>11}"
            )
        for chain in self.chains:
            lines.append("")
            lines.append(f"chain {' -> '.join(chain['names'])}: {chain['verdict']}")
            for link in chain["links"]:
                extra = f" ({link['reason']})" if link["reason"] else ""
                lines.append(
                    f"  {link['inner']} -> {link['outer']}: {link['status']} "
                    f"[W {link['w_inner']:.6g} vs {link['w_outer']:.6g}]{extra}"
                )
        for message in self.warnings:
            lines.append(f"warning: {message}")
        for violation in self.violations:
            lines.append(f"VIOLATION: {violation}")
        return "\n".join(lines) + "\n"


def run_scene(scene: Scene, *, oracle: bool = False, tolerance: float | None = None) -> Report:
    """Degree reports and chain verdicts for every entry of the scene.

    With oracle=True every degree strategy is evaluated (within its
    cutoff) and disagreements are reported as violations.  Deterministic:
    identical scene + seed gives identical structured output.
    """
    tol = tolerance if tolerance is not None else scene.options["tolerance"]
    space = scene.space()
    built = scene.build_subvarieties(space)
    rows = []
    violations = []
    for spec in scene.subvarieties:
        X = built[spec.name]
        try:
            report = wirtinger_number(X)
        except ValueError as err:
            raise SceneError(str(err), f"$.subvarieties[{spec.name!r}]") from None
        row = report.to_dict()
        if report.wirtinger > 1.0 + tol:
            violations.append(f"subvariety {spec.name!r}: Wirtinger number exceeds 1")
        if abs(report.deg_Omega) > report.deg_omega * (1.0 + tol):
            violations.append(
                f"subvariety {spec.name!r}: |deg_Omega| exceeds deg_omega"
            )
        near_one = report.wirtinger >= 1.0 - tol
        if near_one != report.trianalytic:
            violations.append(
                f"subvariety {spec.name!r}: Wirtinger equality and "
                "trianalyticity disagree"
            )
        if oracle:
            strategies = {}
            for strategy in DEGREE_STRATEGIES:
                if strategy == "oracle" and X.d > ORACLE_MAX_COMPLEX_DIM:
                    strategies[strategy] = None
                    continue
                strategies[strategy] = deg_Omega(X, strategy=strategy)
            values = [v for v in strategies.values() if v is not None]
            scale = max(max(abs(v) for v in values), report.deg_omega)
            agree = max(values) - min(values) <= 1e-8 * scale
            row["strategies"] = strategies
            row["strategies_agree"] = agree
            if not agree:
                violations.append(
                    f"subvariety {spec.name!r}: degree strategies disagree"
                )
        rows.append(row)
    chain_rows = []
    for idx, chain_names in enumerate(scene.chains):
        chain = [built[name] for name in chain_names]
        try:
            chain_report = verify_chain(chain, tol=tol)
        except ValueError as err:
            raise SceneError(str(err), f"$.chains[{idx}]") from None
        chain_rows.append(chain_report.to_dict())
        for link in chain_report.links:
            if link.status == "FAIL":
                violations.append(
                    f"chain {idx}: link {link.inner!r} -> {link.outer!r} "
                    f"failed ({link.reason})"
                )
    metadata = {
        "tool": "wirtinger",
        "version": __version__,
        "seed": scene.options["seed"],
        "tolerance": tol,
        "oracle": oracle,
    }
    return Report(
        metadata=metadata,
        subvarieties=rows,
        chains=chain_rows,
        violations=violations,
        warnings=list(scene.warnings),
    )
