"""Canonical file formats: quadrature datasets, tensor containers, reports.

Dataset format (magic ``QPTQ1``): one magic line, one JSON metadata line
(modes, cutoff, probes with complex amplitudes, phase sets, binned flag,
optional seed, embedded run manifest), then fixed-width binary records of

    probe index   uint32, little endian
    LO phases     M float64, little endian
    quadratures   M float64, little endian
    weight        float64, little endian

which streams millions of records without parsing overhead.  A CSV export
exists for inspection.

Tensor container (magic ``QPTT1``): one magic line, one JSON metadata line
(layout tag, convention tags, entry table, manifest), then for each entry
the Jamiolkowski matrix as row-major little-endian complex128, i.e.
interleaved (re, im) 8-byte floats.  A pure-JSON variant holds the same
content as nested arrays for small tensors, and a labeled CSV export (also
re-ingestable, lossy at the 1e-9 level) lists the nonzero elements.

All writers embed the caller's RunManifest dict verbatim; metadata is
serialized with sorted keys so identical runs produce byte-identical files.
"""

import json
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigError
from .fock import CoherentProbe, FockSpaceConfig, flat_index, multi_index
from .maxlik import QuadratureDataset
from .tensor import DensityMatrix, ProcessTensor

DATASET_MAGIC = b"QPTQ1"
TENSOR_MAGIC = b"QPTT1"

CONVENTION_TAGS = {
    "layout": "input-major",
    "quadrature_scaling": "vacuum-variance-1/2",
    "phase_factor": "exp(+i n theta)",
    "fidelity_default": "unsquared",
}

# published schema for bootstrap statistics files
BOOTSTRAP_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": [
        "replica_fidelities",
        "pairwise_fidelities",
        "mean_tensor_fidelity",
        "fidelity_mean",
        "fidelity_std",
        "pairwise_mean",
        "pairwise_std",
        "replica_seeds",
    ],
    "properties": {
        "replica_fidelities": {"type": "array", "items": {"type": "number"}, "minItems": 2},
        "pairwise_fidelities": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "mean_tensor_fidelity": {"type": "number"},
        "fidelity_mean": {"type": "number"},
        "fidelity_std": {"type": "number"},
        "pairwise_mean": {"type": "number"},
        "pairwise_std": {"type": "number"},
        "replica_seeds": {"type": "array", "items": {"type": "integer"}},
        "manifest": {"type": "object"},
    },
}


def _record_dtype(modes: int) -> np.dtype:
    return np.dtype(
        [
            ("probe", "<u4"),
            ("theta", "<f8", (modes,)),
            ("x", "<f8", (modes,)),
            ("weight", "<f8"),
        ]
    )


def _dumps(meta: dict) -> bytes:
    return json.dumps(meta, sort_keys=True, separators=(",", ":")).encode("utf-8")


def write_dataset(
    path: str,
    data: QuadratureDataset,
    seed: Optional[int] = None,
    manifest: Optional[dict] = None,
) -> None:
    """Write a dataset in the binary QPTQ1 format."""
    phase_sets = np.unique(data.thetas, axis=0) if data.n_records else np.empty((0, data.config.modes))
    meta = {
        "modes": data.config.modes,
        "cutoff": data.config.cutoff,
        "binned": bool(data.binned),
        "record_count": data.n_records,
        "probes": [
            {"label": p.label, "amplitudes": [[a.real, a.imag] for a in p.amplitudes]}
            for p in data.probes
        ],
        # phase sets are advisory metadata; omitted when too fragmented
        "phase_sets": phase_sets.tolist() if len(phase_sets) <= 64 else [],
        "manifest": manifest or {},
    }
    if seed is not None:
        meta["seed"] = int(seed)
    records = np.empty(data.n_records, dtype=_record_dtype(data.config.modes))
    records["probe"] = data.probe_ids
    records["theta"] = data.thetas
    records["x"] = data.quadratures
    records["weight"] = data.weights
    with open(path, "wb") as fh:
        fh.write(DATASET_MAGIC + b"\n")
        fh.write(_dumps(meta) + b"\n")
        fh.write(records.tobytes())


def read_dataset(path: str) -> Tuple[QuadratureDataset, dict]:
    """Read a QPTQ1 dataset; returns the dataset and its metadata dict.

    Raises:
        ConfigError: wrong magic or malformed header.
    """
    with open(path, "rb") as fh:
        magic = fh.readline().rstrip(b"\n")
        if magic != DATASET_MAGIC:
            raise ConfigError(f"{path}: expected magic {DATASET_MAGIC!r}, found {magic!r}")
        try:
            meta = json.loads(fh.readline().decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ConfigError(f"{path}: malformed metadata header: {exc}") from exc
        payload = fh.read()
    try:
        modes = int(meta["modes"])
        cutoff = int(meta["cutoff"])
        probes = [
            CoherentProbe(
                tuple(complex(re, im) for re, im in p["amplitudes"]),
                label=p.get("label", ""),
            )
            for p in meta["probes"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: metadata field error: {exc}") from exc
    records = np.frombuffer(payload, dtype=_record_dtype(modes))
    if meta.get("record_count") is not None and len(records) != meta["record_count"]:
        raise ConfigError(
            f"{path}: header promises {meta['record_count']} records, payload holds {len(records)}"
        )
    data = QuadratureDataset(
        probes=probes,
        probe_ids=records["probe"].copy(),
        thetas=records["theta"].reshape(-1, modes).copy(),
        quadratures=records["x"].reshape(-1, modes).copy(),
        weights=records["weight"].copy(),
        config=FockSpaceConfig(modes, cutoff),
        binned=bool(meta.get("binned", False)),
    )
    return data, meta


def dataset_to_csv(path: str, data: QuadratureDataset) -> None:
    """Inspection-only CSV export of a dataset (not re-ingestable)."""
    m = data.config.modes
    header = (
        ["probe"]
        + [f"theta_{i+1}" for i in range(m)]
        + [f"x_{i+1}" for i in range(m)]
        + ["weight"]
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(data.n_records):
            fields = [str(int(data.probe_ids[i]))]
            fields += [f"{t:.9e}" for t in data.thetas[i]]
            fields += [f"{x:.9e}" for x in data.quadratures[i]]
            fields += [f"{data.weights[i]:.9e}"]
            fh.write(",".join(fields) + "\n")


def write_tensors(
    path: str,
    tensors: Dict[str, ProcessTensor],
    fmt: str = "bin",
    manifest: Optional[dict] = None,
) -> None:
    """Write named tensors into one container file (bin, json, or csv)."""
    if not tensors:
        raise ValueError("no tensors to write")
    if fmt == "bin":
        _write_tensors_bin(path, tensors, manifest)
    elif fmt == "json":
        _write_tensors_json(path, tensors, manifest)
    elif fmt == "csv":
        _write_tensors_csv(path, tensors, manifest)
    else:
        raise ConfigError(f"unknown tensor format {fmt!r}")


def _entry_meta(name: str, t: ProcessTensor) -> dict:
    return {
        "name": name,
        "modes": t.config.modes,
        "cutoff": t.config.cutoff,
        "dim": t.jamiolkowski.shape[0],
    }


def _write_tensors_bin(path: str, tensors: Dict[str, ProcessTensor], manifest: Optional[dict]) -> None:
    meta = {
        "convention": CONVENTION_TAGS,
        "entries": [_entry_meta(n, t) for n, t in tensors.items()],
        "manifest": manifest or {},
    }
    with open(path, "wb") as fh:
        fh.write(TENSOR_MAGIC + b"\n")
        fh.write(_dumps(meta) + b"\n")
        for t in tensors.values():
            fh.write(np.ascontiguousarray(t.jamiolkowski, dtype="<c16").tobytes())


def _write_tensors_json(path: str, tensors: Dict[str, ProcessTensor], manifest: Optional[dict]) -> None:
    entries = []
    for name, t in tensors.items():
        e = _entry_meta(name, t)
        e["re"] = t.jamiolkowski.real.tolist()
        e["im"] = t.jamiolkowski.imag.tolist()
        entries.append(e)
    doc = {
        "format": TENSOR_MAGIC.decode(),
        "convention": CONVENTION_TAGS,
        "entries": entries,
        "manifest": manifest or {},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))


def _index_label(flat: int, config: FockSpaceConfig) -> str:
    return ".".join(str(d) for d in multi_index(flat, config))


def _write_tensors_csv(path: str, tensors: Dict[str, ProcessTensor], manifest: Optional[dict]) -> None:
    """Labeled CSV of nonzero elements; lossy at the 1e-9 level."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# QPTT1-CSV layout=input-major\n")
        for name, t in tensors.items():
            fh.write(f"# tensor name={name} modes={t.config.modes} cutoff={t.config.cutoff}\n")
        if manifest:
            fh.write("# manifest=" + json.dumps(manifest, sort_keys=True) + "\n")
        fh.write("tensor,in_row,out_row,in_col,out_col,re,im\n")
        for name, t in tensors.items():
            d = t.config.total_dim
            mat = t.jamiolkowski
            rows, cols = np.nonzero(mat)
            for r, c in zip(rows, cols):
                val = mat[r, c]
                fh.write(
                    f"{name},{_index_label(r // d, t.config)},{_index_label(r % d, t.config)},"
                    f"{_index_label(c // d, t.config)},{_index_label(c % d, t.config)},"
                    f"{val.real:.9e},{val.imag:.9e}\n"
                )


def read_tensors(path: str) -> Tuple[Dict[str, ProcessTensor], dict]:
    """Read a tensor container in any of the three formats (sniffed).

    Raises:
        ConfigError: unrecognized or malformed file.
    """
    with open(path, "rb") as fh:
        head = fh.read(6)
    if head.startswith(TENSOR_MAGIC):
        return _read_tensors_bin(path)
    stripped = head.lstrip()
    if stripped.startswith(b"{"):
        return _read_tensors_json(path)
    if stripped.startswith(b"#"):
        return _read_tensors_csv(path)
    raise ConfigError(f"{path}: not a recognized tensor container")


def _read_tensors_bin(path: str) -> Tuple[Dict[str, ProcessTensor], dict]:
    with open(path, "rb") as fh:
        fh.readline()
        try:
            meta = json.loads(fh.readline().decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ConfigError(f"{path}: malformed metadata header: {exc}") from exc
        out: Dict[str, ProcessTensor] = {}
        for entry in meta.get("entries", []):
            cfg = FockSpaceConfig(int(entry["modes"]), int(entry["cutoff"]))
            d2 = cfg.total_dim ** 2
            if int(entry["dim"]) != d2:
                raise ConfigError(f"{path}: entry {entry['name']!r} dim {entry['dim']} != {d2}")
            buf = fh.read(d2 * d2 * 16)
            if len(buf) != d2 * d2 * 16:
                raise ConfigError(f"{path}: truncated payload for entry {entry['name']!r}")
            mat = np.frombuffer(buf, dtype="<c16").reshape(d2, d2).astype(np.complex128)
            out[entry["name"]] = ProcessTensor(mat, cfg)
    return out, meta


def _read_tensors_json(path: str) -> Tuple[Dict[str, ProcessTensor], dict]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: malformed JSON: {exc}") from exc
    if doc.get("format") != TENSOR_MAGIC.decode():
        raise ConfigError(f"{path}: format tag {doc.get('format')!r} is not QPTT1")
    out: Dict[str, ProcessTensor] = {}
    for entry in doc.get("entries", []):
        cfg = FockSpaceConfig(int(entry["modes"]), int(entry["cutoff"]))
        mat = np.asarray(entry["re"], dtype=np.float64) + 1j * np.asarray(
            entry["im"], dtype=np.float64
        )
        out[entry["name"]] = ProcessTensor(mat, cfg)
    return out, doc


def _parse_label(label: str) -> Tuple[int, ...]:
    return tuple(int(s) for s in label.split("."))


def _read_tensors_csv(path: str) -> Tuple[Dict[str, ProcessTensor], dict]:
    configs: Dict[str, FockSpaceConfig] = {}
    meta: dict = {"entries": []}
    rows: List[Tuple[str, str, str, str, str, float, float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# tensor "):
                fields = dict(part.split("=", 1) for part in line[9:].split())
                cfg = FockSpaceConfig(int(fields["modes"]), int(fields["cutoff"]))
                configs[fields["name"]] = cfg
                meta["entries"].append(
                    {"name": fields["name"], "modes": cfg.modes, "cutoff": cfg.cutoff}
                )
            elif line.startswith("#") or line.startswith("tensor,") or not line:
                continue
            else:
                name, in_r, out_r, in_c, out_c, re, im = line.split(",")
                rows.append((name, in_r, out_r, in_c, out_c, float(re), float(im)))
    if not configs:
        raise ConfigError(f"{path}: no tensor header comments found")
    mats = {
        name: np.zeros((cfg.total_dim ** 2, cfg.total_dim ** 2), dtype=np.complex128)
        for name, cfg in configs.items()
    }
    for name, in_r, out_r, in_c, out_c, re, im in rows:
        if name not in configs:
            raise ConfigError(f"{path}: row references unknown tensor {name!r}")
        cfg = configs[name]
        d = cfg.total_dim
        row = flat_index(_parse_label(in_r), cfg) * d + flat_index(_parse_label(out_r), cfg)
        col = flat_index(_parse_label(in_c), cfg) * d + flat_index(_parse_label(out_c), cfg)
        mats[name][row, col] = re + 1j * im
    return {n: ProcessTensor(m, configs[n]) for n, m in mats.items()}, meta


def write_density_json(
    path: str, rho: DensityMatrix, manifest: Optional[dict] = None
) -> None:
    doc = {
        "modes": rho.config.modes,
        "cutoff": rho.config.cutoff,
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
        "trace": rho.trace,
        "manifest": manifest or {},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))


def read_density_json(path: str) -> Tuple[DensityMatrix, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    cfg = FockSpaceConfig(int(doc["modes"]), int(doc["cutoff"]))
    mat = np.asarray(doc["re"]) + 1j * np.asarray(doc["im"])
    return DensityMatrix(mat, cfg), doc
