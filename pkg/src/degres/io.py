"""Serialization: instance/portfolio files, reports, sweep tables, manifests.

All JSON payloads embed the run manifest that produced them; the sweep CSV
is paired with a JSON detail file carrying the same manifest, so every
emitted number can be traced back to a seed and a config snapshot. Floats
are written with Python's shortest round-trip repr, so parsing a value back
recovers the in-memory double exactly.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import yaml

from ._version import __version__
from .arq import AlgorithmDescriptor
from .errors import ValidationError
from .model import (
    DeploymentInstance,
    DissimilarityMatrix,
    Element,
    LayerTopology,
    StructuralSignature,
)
from .sweep import SweepResult

SWEEP_CSV_HEADER = ("metric", "target", "q", "mean", "std", "trials")


@dataclass(frozen=True)
class RunManifest:
    """Snapshot that makes a run replayable: seed, configs, tool version."""

    timestamp: str
    master_seed: int | None = None
    tool_version: str = __version__
    metric: dict | None = None
    sweep: dict | None = None
    generator: dict | None = None
    portfolio: dict | None = None

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
            "master_seed": self.master_seed,
            "metric": self.metric,
            "sweep": self.sweep,
            "generator": self.generator,
            "portfolio": self.portfolio,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RunManifest":
        allowed = {"tool_version", "timestamp", "master_seed", "metric", "sweep", "generator", "portfolio"}
        unknown = set(data) - allowed
        if unknown:
            raise ValidationError(f"unknown manifest key: {sorted(unknown)[0]}")
        return cls(**data)


def _write_json(path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _read_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON in {path}: {exc}") from None
    if not isinstance(payload, dict):
        raise ValidationError(f"expected a JSON object in {path}")
    return payload


def write_report(path, kind: str, manifest: RunManifest | None, body: Mapping) -> None:
    payload = {"kind": kind, "manifest": manifest.to_dict() if manifest else None}
    payload.update(body)
    _write_json(path, payload)


def _as_matrix(rows, n_cols: int) -> np.ndarray:
    """Rebuild a possibly empty dependency matrix from JSON row lists."""
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((len(rows), n_cols), dtype=np.int64)
    return arr


def save_instance(instance: DeploymentInstance, path, manifest: RunManifest | None = None) -> None:
    payload = {
        "kind": "instance",
        "manifest": manifest.to_dict() if manifest else None,
        "functions": list(instance.functions),
        "elements": [
            {
                "id": el.id,
                "layer": el.layer,
                "capacity": el.capacity,
                "load": el.load,
                "availability": el.availability,
                "mtbf": el.mtbf,
                "supports": sorted(el.supports),
                "signature": {
                    "categorical": list(el.signature.categorical),
                    "numeric": list(el.signature.numeric),
                },
            }
            for el in instance.elements
        ],
        "topology": {
            "b12": instance.topology.b12.tolist(),
            "b23": instance.topology.b23.tolist(),
        },
        "dissimilarity": instance.dissimilarity.values.tolist(),
    }
    _write_json(path, payload)


def load_instance(path) -> tuple[DeploymentInstance, dict | None]:
    payload = _read_json(path)
    if payload.get("kind") != "instance":
        raise ValidationError(f"{path} is not an instance file (kind={payload.get('kind')!r})")
    try:
        elements = tuple(
            Element(
                id=raw["id"],
                signature=StructuralSignature(
                    categorical=tuple(raw["signature"]["categorical"]),
                    numeric=tuple(raw["signature"]["numeric"]),
                ),
                capacity=raw["capacity"],
                load=raw["load"],
                availability=raw["availability"],
                mtbf=raw["mtbf"],
                layer=raw["layer"],
                supports=frozenset(raw["supports"]),
            )
            for raw in payload["elements"]
        )
        n1 = sum(1 for e in elements if e.layer == "L1")
        n2 = sum(1 for e in elements if e.layer == "L2")
        topology = LayerTopology(
            b12=_as_matrix(payload["topology"]["b12"], n1),
            b23=_as_matrix(payload["topology"]["b23"], n2),
        )
        dissimilarity = DissimilarityMatrix(values=np.asarray(payload["dissimilarity"], dtype=np.float64))
        instance = DeploymentInstance(
            elements=elements,
            functions=tuple(payload["functions"]),
            topology=topology,
            dissimilarity=dissimilarity,
        )
    except KeyError as exc:
        raise ValidationError(f"instance file {path} is missing key {exc}") from None
    return instance, payload.get("manifest")


def save_portfolio(portfolio: Sequence[AlgorithmDescriptor], path, manifest: RunManifest | None = None) -> None:
    payload = {
        "kind": "portfolio",
        "manifest": manifest.to_dict() if manifest else None,
        "algorithms": [
            {"id": a.id, "performance": list(a.performance), "structure": list(a.structure)}
            for a in portfolio
        ],
    }
    _write_json(path, payload)


def load_portfolio(path) -> tuple[list[AlgorithmDescriptor], dict | None]:
    payload = _read_json(path)
    if payload.get("kind") != "portfolio":
        raise ValidationError(f"{path} is not a portfolio file (kind={payload.get('kind')!r})")
    try:
        portfolio = [
            AlgorithmDescriptor(
                id=raw["id"],
                performance=tuple(raw["performance"]),
                structure=tuple(raw["structure"]),
            )
            for raw in payload["algorithms"]
        ]
    except KeyError as exc:
        raise ValidationError(f"portfolio file {path} is missing key {exc}") from None
    return portfolio, payload.get("manifest")


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_sweep_csv(result: SweepResult, path) -> None:
    """Plot-ready aggregate table, one row per (metric variant, q)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_CSV_HEADER)
        for row in result.aggregates:
            writer.writerow(
                [
                    row.metric,
                    result.target_label,
                    _fmt(row.q),
                    _fmt(row.mean),
                    _fmt(row.std),
                    row.trials,
                ]
            )


def write_sweep_detail(result: SweepResult, path, manifest: RunManifest | None) -> None:
    write_report(path, "sweep_result", manifest, result.to_dict())


def merge_sweep_csvs(paths: Sequence, out_path) -> int:
    """Concatenate sweep CSVs with identical headers; values pass through
    verbatim. Returns the merged data-row count."""
    header = None
    rows: list[str] = []
    for path in paths:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [line.rstrip("\n") for line in fh if line.strip()]
        if not lines:
            raise ValidationError(f"sweep CSV {path} is empty")
        if header is None:
            header = lines[0]
        elif lines[0] != header:
            raise ValidationError(f"sweep CSV {path} header does not match the first input")
        rows.extend(lines[1:])
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")
    return len(rows)


def write_matrix_csv(path, tables: Mapping[str, tuple[Sequence[str], np.ndarray]]) -> None:
    """Long-form (table, row, col, value) export for heatmap plotting."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("table", "row", "col", "value"))
        for name, (labels, matrix) in tables.items():
            for i, row_label in enumerate(labels):
                for j, col_label in enumerate(labels):
                    writer.writerow((name, row_label, col_label, _fmt(float(matrix[i, j]))))


def write_layer_csv(path, report) -> None:
    """Long-form per-layer table: degeneracy ratio, entropy, coverage."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("table", "layer", "key", "value"))
        for diag in report.per_layer:
            writer.writerow(("tau", diag.layer, "", _fmt(diag.tau)))
            writer.writerow(("entropy_raw", diag.layer, "", _fmt(diag.entropy_raw)))
            writer.writerow(("entropy_norm", diag.layer, "", _fmt(diag.entropy_norm)))
            for fid, frac in diag.coverage.items():
                writer.writerow(("coverage", diag.layer, fid, _fmt(frac)))


def load_config_file(path) -> dict:
    """Structured config: top-level sections metric / sweep / generator /
    portfolio, each a mapping. Unknown sections are rejected by name."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ValidationError(f"malformed config file {path}: {exc}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValidationError(f"config file {path} must contain a mapping")
    allowed = {"metric", "sweep", "generator", "portfolio"}
    unknown = set(data) - allowed
    if unknown:
        raise ValidationError(f"unknown config section: {sorted(unknown)[0]}")
    for section, value in data.items():
        if not isinstance(value, dict):
            raise ValidationError(f"config section {section} must be a mapping")
    return data
