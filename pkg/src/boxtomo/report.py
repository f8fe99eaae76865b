"""Analysis reports: transition tables, tensor heatmaps, summary metrics.

Everything renders to static files (CSV plus SVG via the Agg backend); the
outputs are publication-style figures, not an interactive console.
"""

import json
import os
from typing import Dict, List, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .fock import FockSpaceConfig, flat_index, multi_index
from .io import write_tensors
from .tensor import ProcessTensor, physicality_report


def state_labels(config: FockSpaceConfig) -> List[str]:
    """Dotted photon-number labels for every flat index, e.g. '1.2'."""
    return [
        ".".join(str(d) for d in multi_index(i, config))
        for i in range(config.total_dim)
    ]


def diagonal_transitions(tensor: ProcessTensor) -> np.ndarray:
    """Transition-probability table T[n, j] = E^{n,n}_{j,j}.

    These are the populations of the output state for each Fock input, the
    directly interpretable face of the tensor.
    """
    e4 = tensor.as_rank4()
    d = tensor.config.total_dim
    idx = np.arange(d)
    return np.real(e4[idx[:, None], idx[None, :], idx[:, None], idx[None, :]])


def hom_element(tensor: ProcessTensor) -> Optional[float]:
    """The |1,1> -> |1,1> transition probability, None if not representable."""
    if tensor.config.modes != 2 or tensor.config.cutoff < 1:
        return None
    i = flat_index((1, 1), tensor.config)
    return float(np.real(tensor.as_rank4()[i, i, i, i]))


def _heatmap(
    matrix: np.ndarray,
    row_labels: List[str],
    col_labels: List[str],
    title: str,
    path: str,
    annotate: bool = False,
) -> None:
    fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(col_labels)),
                                    max(3.5, 0.45 * len(row_labels))))
    vmax = float(np.abs(matrix).max()) or 1.0
    im = ax.imshow(matrix, cmap="RdBu_r", vmin=-vmax, vmax=vmax)
    ax.set_title(title)
    if len(col_labels) <= 32:
        ax.set_xticks(range(len(col_labels)))
        ax.set_xticklabels(col_labels, rotation=90, fontsize=7)
        ax.set_yticks(range(len(row_labels)))
        ax.set_yticklabels(row_labels, fontsize=7)
    else:
        ax.set_xticks([])
        ax.set_yticks([])
    if annotate and matrix.shape[0] <= 12:
        for i in range(matrix.shape[0]):
            for j in range(matrix.shape[1]):
                ax.text(j, i, f"{matrix[i, j]:.2f}", ha="center", va="center", fontsize=6)
    fig.colorbar(im, ax=ax, fraction=0.046)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def write_report(
    tensor: ProcessTensor,
    outdir: str,
    manifest: Optional[dict] = None,
    name: str = "report",
) -> Dict[str, str]:
    """Emit the full analysis bundle for one tensor into a directory.

    Files written:
        diagonal_transitions.csv / .svg: the input->output population table.
        tensor_elements.csv: labeled nonzero elements (lossy at 1e-9).
        tensor_real.svg / tensor_imag.svg: full-matrix heatmaps.
        summary.json: HOM element, physicality defects, manifest.

    Returns:
        Mapping of artifact kind to written path.
    """
    os.makedirs(outdir, exist_ok=True)
    labels = state_labels(tensor.config)
    paths: Dict[str, str] = {}

    table = diagonal_transitions(tensor)
    csv_path = os.path.join(outdir, "diagonal_transitions.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("input," + ",".join(labels) + "\n")
        for i, row in enumerate(table):
            fh.write(labels[i] + "," + ",".join(f"{v:.9e}" for v in row) + "\n")
    paths["diagonal_csv"] = csv_path

    svg_path = os.path.join(outdir, "diagonal_transitions.svg")
    _heatmap(table, labels, labels, f"{name}: transition probabilities", svg_path,
             annotate=True)
    paths["diagonal_svg"] = svg_path

    elements_path = os.path.join(outdir, "tensor_elements.csv")
    write_tensors(elements_path, {name: tensor}, fmt="csv", manifest=manifest)
    paths["elements_csv"] = elements_path

    mat = tensor.jamiolkowski
    real_path = os.path.join(outdir, "tensor_real.svg")
    imag_path = os.path.join(outdir, "tensor_imag.svg")
    _heatmap(mat.real, [], [], f"{name}: Re(E)", real_path)
    _heatmap(mat.imag, [], [], f"{name}: Im(E)", imag_path)
    paths["real_svg"] = real_path
    paths["imag_svg"] = imag_path

    summary = physicality_report(tensor)
    summary["hom_element"] = hom_element(tensor)
    summary["modes"] = tensor.config.modes
    summary["cutoff"] = tensor.config.cutoff
    summary["manifest"] = manifest or {}
    summary_path = os.path.join(outdir, "summary.json")
    with open(summary_path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, sort_keys=True, indent=2)
    paths["summary_json"] = summary_path
    return paths
