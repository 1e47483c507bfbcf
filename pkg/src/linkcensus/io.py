"""JSON formats for embeddings and reports.

Rationals are always strings, ``"p/q"`` or ``"p"``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .exact import DegenerateInput, Vec3Q
from .graphs import Embedding, Graph, MalformedGraph, build_graph


class ParseError(ValueError):
    """Malformed embedding file; the message names the offending line or field."""


class ExpectationMismatch(AssertionError):
    """A fixture's recorded expectations disagree with its census."""


@dataclass(frozen=True)
class EmbeddingFile:
    embedding: Embedding
    name: str | None = None
    expected_nontrivial_count: int | None = None
    expected_linked_triangles: tuple[str, ...] | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def metadata(self) -> dict:
        meta = dict(self.extra)
        if self.name is not None:
            meta["name"] = self.name
        if self.expected_nontrivial_count is not None:
            meta["expected_nontrivial_count"] = self.expected_nontrivial_count
        if self.expected_linked_triangles is not None:
            meta["expected_linked_triangles"] = list(self.expected_linked_triangles)
        return meta

    def to_json(self) -> dict:
        data = embedding_to_json(self.embedding)
        if self.metadata:
            data["metadata"] = self.metadata
        return data

    def verify(self) -> None:
        """Raise :class:`ExpectationMismatch` if the census disagrees."""
        from .graphs import TheoremViolation, census

        report = census(self.embedding)
        if isinstance(report, TheoremViolation):
            raise ExpectationMismatch(f"{self.name}: theorem violation {report.reasons}")
        if (
            self.expected_nontrivial_count is not None
            and report.nontrivial_count != self.expected_nontrivial_count
        ):
            raise ExpectationMismatch(
                f"{self.name}: {report.nontrivial_count} nontrivial links, "
                f"expected {self.expected_nontrivial_count}"
            )
        if self.expected_linked_triangles is not None and sorted(report.linked_triangles) != sorted(
            self.expected_linked_triangles
        ):
            raise ExpectationMismatch(
                f"{self.name}: linked triangles {sorted(report.linked_triangles)}, "
                f"expected {sorted(self.expected_linked_triangles)}"
            )


def embedding_to_json(emb: Embedding) -> dict:
    return {
        "graph": emb.graph.to_json(),
        "coords": {str(v): emb.coords[v].to_json() for v in emb.graph.vertices},
    }


def _graph_from_json(data: Any) -> Graph:
    if isinstance(data, str):
        try:
            return build_graph(data)
        except MalformedGraph as exc:
            raise ParseError(f"field 'graph': {exc}") from None
    if not isinstance(data, dict) or "edges" not in data:
        raise ParseError("field 'graph': expected a graph name or {vertices, edges}")
    try:
        return build_graph([tuple(e) for e in data["edges"]], data.get("vertices"))
    except (MalformedGraph, TypeError) as exc:
        raise ParseError(f"field 'graph': {exc}") from None


def embedding_from_json(data: Any) -> EmbeddingFile:
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    for key in ("graph", "coords"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    graph = _graph_from_json(data["graph"])
    raw = data["coords"]
    if not isinstance(raw, dict):
        raise ParseError("field 'coords': expected an object keyed by vertex id")
    coords = {}
    for key, triple in raw.items():
        try:
            vid = int(key)
        except ValueError:
            raise ParseError(f"field coords[{key!r}]: vertex id is not an integer") from None
        if not isinstance(triple, list) or len(triple) != 3:
            raise ParseError(f"field coords[{key!r}]: expected 3 rational strings")
        for i, c in enumerate(triple):
            if not isinstance(c, (str, int)) or isinstance(c, bool):
                raise ParseError(f"field coords[{key!r}][{i}]: expected a rational string")
        try:
            coords[vid] = Vec3Q.parse(triple)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"field coords[{key!r}]: {exc}") from None
    try:
        emb = Embedding(graph, coords)
    except DegenerateInput as exc:
        raise ParseError(f"field 'coords': not in general position ({exc})") from None
    except ValueError as exc:
        raise ParseError(f"field 'coords': {exc}") from None

    meta = dict(data.get("metadata") or {})
    name = meta.pop("name", None)
    count = meta.pop("expected_nontrivial_count", None)
    tris = meta.pop("expected_linked_triangles", None)
    return EmbeddingFile(
        emb,
        name=name,
        expected_nontrivial_count=count,
        expected_linked_triangles=None if tris is None else tuple(str(t) for t in tris),
        extra=meta,
    )


def read_embedding_file(path, verify: bool = False) -> EmbeddingFile:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        ef = embedding_from_json(data)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if verify:
        ef.verify()
    return ef


def load_embedding(path, verify: bool = False) -> Embedding:
    """Read an embedding file; ``verify`` checks any recorded expectations."""
    return read_embedding_file(path, verify).embedding


def save_embedding(emb: Embedding | EmbeddingFile, path) -> None:
    data = emb.to_json() if isinstance(emb, EmbeddingFile) else embedding_to_json(emb)
    dump_json(data, path)


def save_report(report, path) -> None:
    """Write anything with a ``to_json`` method (or plain JSON data) to ``path``."""
    data = report.to_json() if hasattr(report, "to_json") else report
    dump_json(data, path)


_SCALAR_LIST = re.compile(r"\[\s*((?:\"[^\"]*\"|-?\d+)(?:,\s*(?:\"[^\"]*\"|-?\d+))*)\s*\]")


def dumps(data) -> str:
    text = json.dumps(data, indent=2, sort_keys=True)
    # short scalar lists (coordinates, edges) stay on one line
    text = _SCALAR_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"


def dump_json(data, path) -> None:
    Path(path).write_text(dumps(data))
