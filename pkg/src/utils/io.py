"""
Output helpers: deterministic JSON documents and CSV tables with a
provenance header.
"""

import json
import sys
import math
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd


def ensure_dir(p: Path):
    p.mkdir(parents=True, exist_ok=True)


def _plain(value: Any) -> Any:
    """Map numpy scalars/arrays and non-finite floats onto JSON-safe values"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_json(document: Dict[str, Any]) -> str:
    """Serialize with sorted keys so identical requests give identical bytes"""
    return json.dumps(_plain(document), indent=2, sort_keys=True) + "\n"


def render_csv(frame: pd.DataFrame, provenance: Optional[Dict[str, Any]] = None) -> str:
    """CSV with optional '# key=value' provenance lines before the header row"""
    lines = []
    for key in sorted(provenance or {}):
        lines.append(f"# {key}={json.dumps(_plain(provenance[key]), sort_keys=True)}\n")
    return "".join(lines) + frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")


def write_text(text: str, out: Optional[str]) -> None:
    """Write to a file path, or stdout when out is None or '-'"""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    ensure_dir(path.parent)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
