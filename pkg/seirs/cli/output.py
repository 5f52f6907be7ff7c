"""
CSV / JSON writers and the generated plotting script.

CSV: header row, LF line endings, 17 significant digits. JSON: sorted keys.
Identical inputs give byte-identical files.
"""

import json
import logging
import math
import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

import pandas as pd

from seirs.ode.models import Trajectory

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"

PathLike = Union[str, Path]


def _ensure_parent(path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_frame(frame: pd.DataFrame, path: PathLike) -> Path:
    path = _ensure_parent(Path(path))
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"[CLI] Wrote {path} ({len(frame)} rows)")
    return path


def write_trajectory_csv(trajectory: Trajectory, path: PathLike) -> Path:
    """Columns t, S, E, I, R, N"""
    return write_frame(trajectory.to_frame(), path)


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("Infinity" if value > 0 else "-Infinity")
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def write_json(document: Dict[str, Any], path: PathLike) -> Path:
    path = _ensure_parent(Path(path))
    text = json.dumps(_json_safe(document), indent=2, sort_keys=True, ensure_ascii=False)
    path.write_text(text + "\n", encoding="utf-8", newline="\n")
    logger.info(f"[CLI] Wrote {path}")
    return path


def key_value_lines(document: Dict[str, Any], prefix: str = "") -> List[str]:
    """Flatten a document into sorted `key: value` lines"""
    lines = []
    for key in sorted(document):
        value = document[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            lines.extend(key_value_lines(value, prefix=f"{name}."))
        elif isinstance(value, float):
            lines.append(f"{name}: {value:.10g}")
        else:
            lines.append(f"{name}: {value}")
    return lines


def write_text_report(document: Dict[str, Any], path: PathLike) -> Path:
    path = _ensure_parent(Path(path))
    path.write_text("\n".join(key_value_lines(document)) + "\n", encoding="utf-8", newline="\n")
    logger.info(f"[CLI] Wrote {path}")
    return path


# ==================== Plot script ====================

PLOT_TEMPLATE = '''"""
Generated by periodic-seirs: plots the trajectory CSVs listed below.
Run with `python {script_name}` (needs pandas and matplotlib).
"""

from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd

HERE = Path(__file__).resolve().parent
GROUPS = {groups}

for title, files in GROUPS.items():
    fig, (ax_i, ax_phase) = plt.subplots(1, 2, figsize=(11, 4))
    for name in files:
        frame = pd.read_csv(HERE / name)
        ax_i.plot(frame["t"], frame["I"], label=name)
        ax_phase.plot(frame["S"], frame["I"], label=name)
    ax_i.set_xlabel("t")
    ax_i.set_ylabel("I(t)")
    ax_phase.set_xlabel("S")
    ax_phase.set_ylabel("I")
    ax_i.legend(fontsize="small")
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(HERE / (title.replace(" ", "_").replace(",", "").replace("=", "") + ".png"), dpi=150)
'''


def write_plot_script(groups: Dict[str, Sequence[PathLike]], path: PathLike) -> Path:
    """Plotting script for `groups` (title -> CSV paths); never executed here"""
    path = _ensure_parent(Path(path))
    relative = {title: [os.path.relpath(f, path.parent) for f in files] for title, files in groups.items()}
    text = PLOT_TEMPLATE.format(script_name=path.name, groups=json.dumps(relative, indent=4, sort_keys=True))
    path.write_text(text, encoding="utf-8", newline="\n")
    logger.info(f"[CLI] Wrote plotting script {path}")
    return path


def frame_from_rows(rows: Iterable[Dict[str, Any]], columns: Sequence[str]) -> pd.DataFrame:
    return pd.DataFrame(list(rows), columns=list(columns))
