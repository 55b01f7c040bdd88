"""JSON documents for algebras and analysis verdicts (``"schema": 1``)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Optional

from .algebra import EvolutionAlgebra
from .errors import ParseError
from .field import FieldSpec, QQ
from .linalg import Subspace
from .render import format_subspace, format_vector

SCHEMA = 1


def field_to_json(f: FieldSpec):
    return "Q" if not f.is_prime else {"GF": f.p}


def field_from_json(obj) -> FieldSpec:
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"GF"} and isinstance(obj["GF"], int):
        try:
            return FieldSpec.gf(obj["GF"])
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f'field must be "Q" or {{"GF": p}}, got {obj!r}')


def scalar_to_json(f: FieldSpec, x):
    if f.is_prime:
        return int(x)
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f.format(x)


@dataclass(frozen=True)
class AlgebraDocument:
    field: FieldSpec
    matrix: tuple
    name: Optional[str] = None
    basis_labels: Optional[tuple] = None
    description: Optional[str] = None

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def algebra(self) -> EvolutionAlgebra:
        return EvolutionAlgebra(self.field, self.matrix, self.name)

    @classmethod
    def from_algebra(cls, a: EvolutionAlgebra, **extra) -> "AlgebraDocument":
        return cls(a.field, a.matrix, extra.pop("name", a.name), **extra)

    def to_json(self) -> dict:
        out: dict = {"schema": SCHEMA, "field": field_to_json(self.field), "dim": self.dim}
        if self.name is not None:
            out["name"] = self.name
        if self.description is not None:
            out["description"] = self.description
        out["matrix"] = [[scalar_to_json(self.field, x) for x in row] for row in self.matrix]
        if self.basis_labels is not None:
            out["basis_labels"] = list(self.basis_labels)
        return out

    def render(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, obj: Any) -> "AlgebraDocument":
        if not isinstance(obj, dict):
            raise ParseError("an algebra document must be a JSON object")
        schema = obj.get("schema", SCHEMA)
        if schema != SCHEMA:
            raise ParseError(f"unsupported schema {schema!r}")
        f = field_from_json(obj.get("field"))
        rows = obj.get("matrix")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError("matrix must be a list of rows")
        n = obj.get("dim", len(rows))
        if n != len(rows) or any(len(r) != n for r in rows):
            raise ParseError(f"matrix is not {n} x {n}")
        matrix = tuple(tuple(f.parse(x) for x in r) for r in rows)
        labels = obj.get("basis_labels")
        if labels is not None:
            if not isinstance(labels, list) or len(labels) != n:
                raise ParseError("basis_labels must list one label per basis vector")
            labels = tuple(str(x) for x in labels)
        return cls(f, matrix, obj.get("name"), labels, obj.get("description"))

    @classmethod
    def parse(cls, text: str) -> "AlgebraDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from None
        return cls.from_json(obj)


def load_document(path) -> AlgebraDocument:
    with open(path, encoding="utf-8") as fh:
        return AlgebraDocument.parse(fh.read())


def corpus_names() -> list:
    root = resources.files("evolab") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_corpus_entry(name: str) -> AlgebraDocument:
    root = resources.files("evolab") / "corpus"
    return AlgebraDocument.parse((root / f"{name}.json").read_text(encoding="utf-8"))


def load_corpus() -> dict:
    return {name: load_corpus_entry(name) for name in corpus_names()}


# -- verdicts -----------------------------------------------------------------

def witness_to_json(w, labels=None):
    """Subspaces become basis strings; containers are converted element-wise."""
    if isinstance(w, Subspace):
        return format_subspace(w, labels)
    if isinstance(w, EvolutionAlgebra):
        return AlgebraDocument.from_algebra(w).to_json()
    if isinstance(w, (list, tuple)):
        return [witness_to_json(x, labels) for x in w]
    if isinstance(w, Fraction):
        return str(w)
    return w


@dataclass
class VerdictDocument:
    """Everything ``analyze`` reports, in a stable key order."""

    name: Optional[str]
    field: FieldSpec
    dim: int
    flags: dict
    indices: dict
    series: dict
    normal_form: Optional[dict] = None
    lambda_pairs: Optional[list] = None
    subalgebra_counts: Optional[dict] = None
    lattice: Optional[dict] = None
    witnesses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "name": self.name,
            "field": field_to_json(self.field),
            "dim": self.dim,
            "flags": self.flags,
            "indices": self.indices,
            "series": self.series,
            "normal_form": self.normal_form,
            "lambda_pairs": self.lambda_pairs,
            "subalgebra_counts": self.subalgebra_counts,
            "lattice": self.lattice,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }

    def render(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def vector_to_json(f: FieldSpec, v, labels=None) -> str:
    return format_vector(f, v, labels)
