"""
Numeric settings

Every tolerance used by the toolkit lives here with its default, so that
output documents can echo the exact configuration they were produced with.
Settings files use the dotenv KEY=VALUE format; keys are the upper-case
field names (``ZERO_TOL=1e-9``, ``WINDOW=-2,2``).
"""

from dataclasses import dataclass, asdict, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple
import logging

from dotenv import dotenv_values

from .errors import UsageError

logger = logging.getLogger(__name__)

DEFAULT_K_MAX = 4


def truncation_order(k_max: int = DEFAULT_K_MAX) -> int:
    """Series order needed to read Belitskii moduli up to degeneracy k_max"""
    return max(2 * k_max + 2, 16)


@dataclass(frozen=True)
class Settings:
    """Tolerances and limits, defaults as documented per package"""

    # jets / classify
    max_order: int = truncation_order()
    zero_tol: float = 1e-9
    cinf_sign_rule: str = "stated"  # stated | orientation

    # quadrature / inversion
    quad_abs_tol: float = 1e-12
    quad_rel_tol: float = 1e-10
    quad_limit: int = 200
    invert_tol: float = 1e-12
    eps: float = 0.5

    # flows
    flow_rel_tol: float = 1e-10
    flow_abs_tol: float = 1e-12
    x_max: float = 1e6
    min_step: float = 1e-14

    # unfold
    window: Tuple[float, float] = (-2.0, 2.0)
    multiplicity_tol: float = 1e-7
    root_tol: float = 1e-12
    grid_cap: int = 1_000_000
    sweep_workers: int = 4

    def __post_init__(self):
        if self.cinf_sign_rule not in ("stated", "orientation"):
            raise UsageError(f"Unknown sign rule: {self.cinf_sign_rule}")
        if self.max_order < 1:
            raise UsageError("max_order must be at least 1")
        if self.zero_tol <= 0:
            raise UsageError("zero_tol must be positive")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for provenance headers"""
        data = asdict(self)
        data["window"] = list(self.window)
        return data

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Copy with the non-None overrides applied"""
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **clean) if clean else self


def _coerce(name: str, raw: str, default: Any) -> Any:
    try:
        if isinstance(default, tuple):
            lo, hi = (float(p) for p in raw.split(","))
            return (lo, hi)
        if isinstance(default, bool):
            return raw.strip().lower() in ("1", "true", "yes", "on")
        if isinstance(default, int):
            return int(float(raw))
        if isinstance(default, float):
            return float(raw)
        return raw.strip()
    except ValueError as e:
        raise UsageError(f"Bad value for {name}: {raw!r} ({e})")


def load_settings(path: Optional[str] = None, **overrides: Any) -> Settings:
    """
    Build settings from defaults, an optional settings file and overrides.

    Args:
        path: dotenv-format file with upper-case field names
        overrides: field values that win over the file (None is ignored)

    Returns:
        Frozen Settings instance
    """
    base = Settings()
    values: Dict[str, Any] = {}

    if path:
        p = Path(path)
        if not p.exists():
            raise UsageError(f"Settings file not found: {path}")
        raw = dotenv_values(p)
        known = {f.name: getattr(base, f.name) for f in fields(Settings)}
        for key, value in raw.items():
            name = key.lower()
            if name not in known:
                logger.warning(f"Ignoring unknown setting {key} in {path}")
                continue
            if value is None:
                continue
            values[name] = _coerce(key, value, known[name])
        logger.info(f"Loaded {len(values)} settings from {path}")

    values.update({k: v for k, v in overrides.items() if v is not None})
    return replace(base, **values) if values else base
