"""JSON model files.

A model file looks like::

    {
      "dimension": 2,
      "measurements": {
        "A": {"yes": [[0.8333, 0.2887], [0.2887, 0.5]], "no": [[...], [...]]},
        "B": {"yes": ..., "no": ...}
      },
      "state": {"amplitudes": [1, 1]},
      "convention": "literal",
      "tolerance": 1e-10
    }

Matrix entries are numbers or ``[re, im]`` pairs. ``state`` holds either a
density matrix under ``rho`` or pure amplitudes under ``amplitudes``.
``convention`` and ``tolerance`` are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from .linalg import DimensionError, Tolerance
from .measurement import BinaryMeasurement, Convention, InvalidStateError, QuantumState

BUNDLED = ("paper.model",)


class ModelError(ValueError):
    """Malformed or inconsistent model file."""


@dataclass(frozen=True, eq=False)
class Model:
    dimension: int
    measurements: dict[str, BinaryMeasurement]
    state: QuantumState
    convention: Convention | None = None
    tolerance: Tolerance | None = None

    def pair(self, names: tuple[str, str] | None = None) -> tuple[BinaryMeasurement, BinaryMeasurement]:
        """The measurement pair ``(A, B)``; the first two entries unless named."""
        if names is None:
            if len(self.measurements) < 2:
                raise ModelError("model needs at least two measurements")
            names = tuple(self.measurements)[:2]
        try:
            return self.measurements[names[0]], self.measurements[names[1]]
        except KeyError as exc:
            raise ModelError(f"unknown measurement {exc.args[0]!r}") from None


def _entry(x: Any) -> complex:
    if isinstance(x, bool):
        raise ModelError(f"bad matrix entry {x!r}")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        return complex(x[0], x[1])
    raise ModelError(f"bad matrix entry {x!r}; expected a number or [re, im]")


def parse_matrix(rows: Any, dim: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise ModelError(f"{where}: expected {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ModelError(f"{where}: row {i} must have {dim} entries")
        for j, x in enumerate(row):
            out[i, j] = _entry(x)
    if not np.all(np.isfinite(out)):
        raise ModelError(f"{where}: non-finite entry")
    return out


def encode_matrix(m: np.ndarray) -> list:
    def enc(z: complex):
        return float(z.real) if z.imag == 0 else [float(z.real), float(z.imag)]

    return [[enc(complex(z)) for z in row] for row in np.asarray(m)]


def parse_model(doc: Any) -> Model:
    if not isinstance(doc, dict):
        raise ModelError("model must be a JSON object")
    missing = {"dimension", "measurements", "state"} - doc.keys()
    if missing:
        raise ModelError(f"missing keys: {sorted(missing)}")
    dim = doc["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ModelError(f"dimension must be a positive integer, got {dim!r}")

    tol = None
    if "tolerance" in doc:
        try:
            tol = Tolerance(float(doc["tolerance"]))
        except (TypeError, ValueError) as exc:
            raise ModelError(f"bad tolerance: {exc}") from None

    convention = None
    if doc.get("convention") is not None:
        try:
            convention = Convention(doc["convention"])
        except ValueError:
            raise ModelError(f"convention must be 'literal' or 'sqrt', got {doc['convention']!r}") from None

    ms = doc["measurements"]
    if not isinstance(ms, dict) or not ms:
        raise ModelError("measurements must be a non-empty object")
    measurements = {}
    for name, spec in ms.items():
        if not isinstance(spec, dict) or not {"yes", "no"} <= spec.keys():
            raise ModelError(f"measurement {name!r} needs 'yes' and 'no' matrices")
        yes = parse_matrix(spec["yes"], dim, f"{name}.yes")
        no = parse_matrix(spec["no"], dim, f"{name}.no")
        measurements[name] = BinaryMeasurement.from_matrices(yes, no, name=name)

    st = doc["state"]
    if not isinstance(st, dict) or len({"rho", "amplitudes"} & st.keys()) != 1:
        raise ModelError("state must contain exactly one of 'rho' or 'amplitudes'")
    try:
        if "rho" in st:
            state = QuantumState(parse_matrix(st["rho"], dim, "state.rho"), tol or Tolerance())
        else:
            amps = st["amplitudes"]
            if not isinstance(amps, list) or len(amps) != dim:
                raise ModelError(f"state.amplitudes must have {dim} entries")
            vec = np.array([_entry(a) for a in amps])
            # same convention as QuantumState.from_amplitudes
            state = QuantumState.from_vector(vec.conj(), tol)
    except (InvalidStateError, DimensionError) as exc:
        raise ModelError(f"invalid state: {exc}") from None

    return Model(dim, measurements, state, convention, tol)


def load_model(path: str | Path) -> Model:
    """Read a model file. Bundled names such as ``paper.model`` resolve to package data."""
    p = Path(path)
    try:
        if not p.exists() and p.name in BUNDLED and str(path) == p.name:
            text = resources.files("qqpovm").joinpath("data", p.name).read_text()
        else:
            text = p.read_text()
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: invalid JSON: {exc}") from None
    return parse_model(doc)


def model_to_dict(model: Model) -> dict:
    doc = {
        "dimension": model.dimension,
        "measurements": {
            name: {"yes": encode_matrix(m.yes.matrix), "no": encode_matrix(m.no.matrix)}
            for name, m in model.measurements.items()
        },
        "state": {"rho": encode_matrix(model.state.rho)},
    }
    if model.convention is not None:
        doc["convention"] = model.convention.value
    if model.tolerance is not None:
        doc["tolerance"] = model.tolerance.abs_eps
    return doc


def dump_model(model: Model, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n")
