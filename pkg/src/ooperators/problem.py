"""JSON problem files.

Layout (every scalar is a rational string such as ``"-3/2"``; integers are
also accepted on input)::

    {
      "format_version": 1,
      "name": "poly3_R",
      "algebra":   {"dim": 3, "labels": ["1", "x", "x^2"],
                    "mu": [[i, j, k, "c"], ...]},           # e_i e_j has c e_k
      "bimodule":  {"kind": "adjoint" | "coadjoint" | "left" | "right" | "explicit",
                    "dim": m, "left": [[i, u, v, "c"], ...],
                    "right": [[u, i, v, "c"], ...]},         # explicit only
      "operator":  {"matrix": [[...], ...]},                 # rows A, columns M
      "deformation": {"terms": [matrix, ...]},               # T_1, T_2, ...
      "target_deformation": {"terms": [...]},                # for deform equiv
      "equivalence": {"element": [...], "phi_tail": [...], "psi_tail": [...]},
      "r_matrix":   {"entries": [[i, j, "c"], ...]},         # i < j
      "r_matrix_2": {"entries": [...]},
      "morphism":  {"phi": matrix, "psi": matrix},
      "task": {"degree_cap": 3, "order_cap": 4, "weight": "0",
               "nijenhuis_candidates": {"name": vector, ...}}
    }

All sections except ``algebra`` are optional.  A missing bimodule means the
adjoint one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .algebra import Algebra, Bimodule, adjoint_bimodule, coadjoint_bimodule, one_sided_bimodule
from .exactla import rational_str, to_rational
from .operators import Operator
from .rmatrix import Wedge2
from .tensor import equal, nonzero_entries, qarray, zeros

FORMAT_VERSION = 1
BIMODULE_KINDS = ("adjoint", "coadjoint", "left", "right", "explicit")


class ProblemError(ValueError):
    """Malformed problem file; ``field`` names the offending location."""

    def __init__(self, field_path: str, message: str):
        super().__init__(f"{field_path}: {message}")
        self.field = field_path


def _rat(x, where):
    try:
        return to_rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ProblemError(where, f"not a rational: {x!r}") from exc


def _index(x, bound, where):
    if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < bound:
        raise ProblemError(where, f"index {x!r} outside 0..{bound - 1}")
    return x


def _sparse(entries, shape, where):
    out = zeros(shape)
    if not isinstance(entries, list):
        raise ProblemError(where, "expected a list of entries")
    for n, e in enumerate(entries):
        w = f"{where}[{n}]"
        if not isinstance(e, list) or len(e) != len(shape) + 1:
            raise ProblemError(w, f"expected {len(shape)} indices and a value")
        idx = tuple(_index(i, b, w) for i, b in zip(e[:-1], shape))
        out[idx] += _rat(e[-1], w)
    return out


def _dense_matrix(rows, shape, where):
    if not isinstance(rows, list) or len(rows) != shape[0]:
        raise ProblemError(where, f"expected {shape[0]} rows")
    out = zeros(shape)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise ProblemError(f"{where}[{i}]", f"expected {shape[1]} columns")
        for j, x in enumerate(row):
            out[i, j] = _rat(x, f"{where}[{i}][{j}]")
    return out


def _vector(v, n, where):
    if not isinstance(v, list) or len(v) != n:
        raise ProblemError(where, f"expected a vector of length {n}")
    return qarray([_rat(x, f"{where}[{i}]") for i, x in enumerate(v)])


def _sparse_out(t):
    return [[*map(int, idx), rational_str(v)] for idx, v in nonzero_entries(t)]


def _dense_out(m):
    return [[rational_str(x) for x in row] for row in m]


@dataclass(eq=False)
class ProblemFile:
    algebra: Algebra
    bimodule_kind: str = "adjoint"
    bimodule: Bimodule | None = None
    operator: np.ndarray | None = None
    deformation: list = field(default_factory=list)
    target_deformation: list | None = None
    equivalence: dict | None = None
    r_matrix: Wedge2 | None = None
    r_matrix_2: Wedge2 | None = None
    phi: np.ndarray | None = None
    psi: np.ndarray | None = None
    task: dict = field(default_factory=dict)
    name: str | None = None

    def __post_init__(self):
        if self.bimodule is None:
            self.bimodule = standard_bimodule(self.algebra, self.bimodule_kind)

    # -- accessors used by the CLI ------------------------------------------

    def require_operator(self) -> Operator:
        if self.operator is None:
            raise ProblemError("operator", "section missing")
        return Operator(self.bimodule, self.operator)

    def candidates(self) -> dict[str, np.ndarray]:
        return dict(self.task.get("nijenhuis_candidates", {}))

    # -- (de)serialization -------------------------------------------------

    @classmethod
    def from_json(cls, data) -> "ProblemFile":
        if not isinstance(data, dict):
            raise ProblemError("<root>", "expected a JSON object")
        version = data.get("format_version", FORMAT_VERSION)
        if version != FORMAT_VERSION:
            raise ProblemError("format_version", f"unsupported version {version!r}")
        alg = _parse_algebra(data.get("algebra"))
        n = alg.dim
        bm = data.get("bimodule") or {"kind": "adjoint"}
        kind = bm.get("kind", "adjoint")
        if kind not in BIMODULE_KINDS:
            raise ProblemError("bimodule.kind", f"unknown kind {kind!r}")
        if kind == "explicit":
            m = bm.get("dim")
            if not isinstance(m, int) or m < 0:
                raise ProblemError("bimodule.dim", "expected a non-negative integer")
            left = _sparse(bm.get("left", []), (n, m, m), "bimodule.left")
            right = _sparse(bm.get("right", []), (m, n, m), "bimodule.right")
            labels = bm.get("labels")
            mod = Bimodule(alg, left, right, tuple(labels) if labels else None)
        else:
            mod = standard_bimodule(alg, kind)
        m = mod.dim
        out = cls(alg, kind, mod, name=data.get("name"))
        if "operator" in data:
            out.operator = _dense_matrix(data["operator"].get("matrix"), (n, m), "operator.matrix")
        for key, attr in (("deformation", "deformation"), ("target_deformation", "target_deformation")):
            if key in data:
                terms = data[key].get("terms", [])
                if not isinstance(terms, list):
                    raise ProblemError(f"{key}.terms", "expected a list of matrices")
                setattr(out, attr, [_dense_matrix(t, (n, m), f"{key}.terms[{i}]")
                                    for i, t in enumerate(terms)])
        if "equivalence" in data:
            eq = data["equivalence"]
            out.equivalence = {
                "element": _vector(eq.get("element"), n, "equivalence.element"),
                "phi_tail": [_dense_matrix(p, (n, n), f"equivalence.phi_tail[{i}]")
                             for i, p in enumerate(eq.get("phi_tail", []))],
                "psi_tail": [_dense_matrix(p, (m, m), f"equivalence.psi_tail[{i}]")
                             for i, p in enumerate(eq.get("psi_tail", []))],
            }
        for key in ("r_matrix", "r_matrix_2"):
            if key in data:
                setattr(out, key, _parse_wedge(alg, data[key], key))
        if "morphism" in data:
            mor = data["morphism"]
            out.phi = _dense_matrix(mor.get("phi"), (n, n), "morphism.phi")
            if "psi" in mor:
                rows = len(mor["psi"]) if isinstance(mor["psi"], list) else 0
                out.psi = _dense_matrix(mor["psi"], (rows, rows), "morphism.psi")
        out.task = _parse_task(data.get("task", {}), n)
        return out

    def to_json(self) -> dict:
        alg = self.algebra
        data = {"format_version": FORMAT_VERSION}
        if self.name:
            data["name"] = self.name
        data["algebra"] = {"dim": alg.dim, "mu": _sparse_out(alg.mu)}
        if alg.labels:
            data["algebra"]["labels"] = list(alg.labels)
        bm = {"kind": self.bimodule_kind}
        if self.bimodule_kind == "explicit":
            bm.update(dim=self.bimodule.dim, left=_sparse_out(self.bimodule.left),
                      right=_sparse_out(self.bimodule.right))
            if self.bimodule.labels:
                bm["labels"] = list(self.bimodule.labels)
        data["bimodule"] = bm
        if self.operator is not None:
            data["operator"] = {"matrix": _dense_out(self.operator)}
        if self.deformation:
            data["deformation"] = {"terms": [_dense_out(t) for t in self.deformation]}
        if self.target_deformation is not None:
            data["target_deformation"] = {"terms": [_dense_out(t) for t in self.target_deformation]}
        if self.equivalence is not None:
            eq = self.equivalence
            data["equivalence"] = {
                "element": [rational_str(x) for x in eq["element"]],
                "phi_tail": [_dense_out(p) for p in eq.get("phi_tail", [])],
                "psi_tail": [_dense_out(p) for p in eq.get("psi_tail", [])],
            }
        for key in ("r_matrix", "r_matrix_2"):
            r = getattr(self, key)
            if r is not None:
                data[key] = {"entries": [[i, j, rational_str(v)] for i, j, v in r.triples()]}
        if self.phi is not None:
            data["morphism"] = {"phi": _dense_out(self.phi)}
            if self.psi is not None:
                data["morphism"]["psi"] = _dense_out(self.psi)
        task = {k: v for k, v in self.task.items() if k != "nijenhuis_candidates"}
        if "weight" in task:
            task["weight"] = rational_str(task["weight"])
        if self.task.get("nijenhuis_candidates"):
            task["nijenhuis_candidates"] = {
                k: [rational_str(x) for x in v] for k, v in self.task["nijenhuis_candidates"].items()}
        if task:
            data["task"] = task
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ProblemFile":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProblemError(f"line {exc.lineno}", exc.msg) from exc
        return cls.from_json(data)

    @classmethod
    def load(cls, path) -> "ProblemFile":
        return cls.loads(Path(path).read_text())

    def dump(self, path):
        Path(path).write_text(self.dumps())

    def __eq__(self, other):
        if not isinstance(other, ProblemFile):
            return NotImplemented
        return self.to_json() == other.to_json()


def standard_bimodule(alg: Algebra, kind: str) -> Bimodule:
    if kind == "adjoint":
        return adjoint_bimodule(alg)
    if kind == "coadjoint":
        return coadjoint_bimodule(alg)
    if kind in ("left", "right"):
        return one_sided_bimodule(alg, kind)
    raise ProblemError("bimodule.kind", f"kind {kind!r} needs explicit tensors")


def _parse_algebra(sec) -> Algebra:
    if not isinstance(sec, dict):
        raise ProblemError("algebra", "section missing")
    n = sec.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ProblemError("algebra.dim", "expected a non-negative integer")
    mu = _sparse(sec.get("mu", []), (n, n, n), "algebra.mu")
    labels = sec.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise ProblemError("algebra.labels", f"expected {n} labels")
    return Algebra(mu, tuple(labels) if labels else None)


def _parse_wedge(alg, sec, where) -> Wedge2:
    entries = sec.get("entries", []) if isinstance(sec, dict) else None
    if not isinstance(entries, list):
        raise ProblemError(f"{where}.entries", "expected a list of [i, j, value]")
    triples = []
    for k, e in enumerate(entries):
        w = f"{where}.entries[{k}]"
        if not isinstance(e, list) or len(e) != 3:
            raise ProblemError(w, "expected [i, j, value]")
        i, j = _index(e[0], alg.dim, w), _index(e[1], alg.dim, w)
        if i >= j:
            raise ProblemError(w, "entries need i < j")
        triples.append((i, j, _rat(e[2], w)))
    return Wedge2.from_triples(alg, triples)


def _parse_task(sec, n) -> dict:
    if not isinstance(sec, dict):
        raise ProblemError("task", "expected an object")
    out = {}
    for key in ("degree_cap", "order_cap"):
        if key in sec:
            if not isinstance(sec[key], int) or sec[key] < 0:
                raise ProblemError(f"task.{key}", "expected a non-negative integer")
            out[key] = sec[key]
    if "weight" in sec:
        out["weight"] = _rat(sec["weight"], "task.weight")
    cands = sec.get("nijenhuis_candidates", {})
    if not isinstance(cands, dict):
        raise ProblemError("task.nijenhuis_candidates", "expected an object of named vectors")
    if cands:
        out["nijenhuis_candidates"] = {
            k: _vector(v, n, f"task.nijenhuis_candidates.{k}") for k, v in cands.items()}
    return out


def problem_from_operator(op: Operator, kind: str, name: str | None = None, **extra) -> ProblemFile:
    pf = ProblemFile(op.algebra, kind, op.bimodule, op.matrix, name=name)
    for k, v in extra.items():
        setattr(pf, k, v)
    return pf


def same_problem(a: ProblemFile, b: ProblemFile) -> bool:
    """Structural equality of the parsed contents."""
    return (equal(a.algebra.mu, b.algebra.mu) and a.bimodule == b.bimodule
            and a.to_json() == b.to_json())
