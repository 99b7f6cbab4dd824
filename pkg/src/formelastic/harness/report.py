"""Check records and the JSON suite report."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

SCHEMA = "formelastic.report/1"


@dataclass
class CheckRecord:
    check: str
    chart: str
    field: str
    point: List[float]
    max_abs_error: float
    max_rel_error: Optional[float]
    tolerance: float
    tolerance_kind: str
    samples: int
    passed: bool

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "chart": self.chart,
            "field": self.field,
            "point": self.point,
            "max_abs_error": self.max_abs_error,
            "max_rel_error": self.max_rel_error,
            "tolerance": self.tolerance,
            "tolerance_kind": self.tolerance_kind,
            "samples": self.samples,
            "passed": self.passed,
        }


def _finite_or_none(x: float) -> Optional[float]:
    return float(x) if math.isfinite(x) else None


class Recorder:
    """Collects comparisons, merging repeated (check, chart) keys into their worst case."""

    def __init__(self, suite: str):
        self.suite = suite
        self._records: Dict[tuple, CheckRecord] = {}

    def compare(
        self,
        check: str,
        chart: str,
        actual,
        expected,
        *,
        tol: float,
        kind: str = "rel",
        points: np.ndarray,
        labels: Optional[Sequence[str]] = None,
        label: str = "-",
        comp_ndim: int = 1,
    ) -> CheckRecord:
        """Compare two stacked component arrays sample by sample.

        ``actual`` and ``expected`` have shape ``S + C`` where ``C`` has
        ``comp_ndim`` axes and ``S`` is ``(P,)`` or ``(F, P)`` (the latter when
        ``labels`` names the F fields).  Per sample the error is the max-norm
        of the difference; the relative error divides by the larger max-norm
        of the two operands.
        """
        a, b = np.broadcast_arrays(np.asarray(actual, dtype=float), np.asarray(expected, dtype=float))
        batch_shape = a.shape[: a.ndim - comp_ndim]
        a = a.reshape(batch_shape + (-1,))
        b = b.reshape(batch_shape + (-1,))
        err = np.max(np.abs(a - b), axis=-1)
        scale = np.maximum(np.max(np.abs(a), axis=-1), np.max(np.abs(b), axis=-1))
        with np.errstate(divide="ignore", invalid="ignore"):
            rel = np.where(err == 0.0, 0.0, err / scale)
        bad_input = ~np.isfinite(err)
        err = np.where(bad_input, np.inf, err)
        rel = np.where(bad_input, np.inf, rel)

        metric = rel if kind == "rel" else err
        worst = np.unravel_index(int(np.argmax(metric)), metric.shape) if metric.ndim else ()
        pts = np.asarray(points, dtype=float)
        p_idx = worst[-1] if worst else 0
        point = [float(x) for x in (pts[p_idx] if pts.ndim == 2 else pts)]
        if labels is not None and len(worst) >= 2:
            fld = str(labels[worst[0]])
        else:
            fld = label
        max_abs = float(np.max(err))
        max_rel = float(np.max(rel))
        worst_metric = max_rel if kind == "rel" else max_abs
        rec = CheckRecord(
            check=check,
            chart=chart,
            field=fld,
            point=point,
            max_abs_error=max_abs if math.isfinite(max_abs) else float("nan"),
            max_rel_error=_finite_or_none(max_rel),
            tolerance=float(tol),
            tolerance_kind=kind,
            samples=int(np.prod(batch_shape)) if batch_shape else 1,
            passed=bool(math.isfinite(worst_metric) and worst_metric <= tol),
        )
        return self._merge(rec, worst_metric)

    def _merge(self, rec: CheckRecord, metric: float) -> CheckRecord:
        key = (rec.check, rec.chart)
        old = self._records.get(key)
        if old is None:
            self._records[key] = rec
            return rec
        old_metric = old.max_rel_error if old.tolerance_kind == "rel" else old.max_abs_error
        old_metric = math.inf if old_metric is None or not math.isfinite(old_metric) else old_metric
        keep = rec if metric > old_metric else old
        merged = CheckRecord(
            check=rec.check,
            chart=rec.chart,
            field=keep.field,
            point=keep.point,
            max_abs_error=max(old.max_abs_error, rec.max_abs_error),
            max_rel_error=(
                None if old.max_rel_error is None or rec.max_rel_error is None
                else max(old.max_rel_error, rec.max_rel_error)
            ),
            tolerance=rec.tolerance,
            tolerance_kind=rec.tolerance_kind,
            samples=old.samples + rec.samples,
            passed=old.passed and rec.passed,
        )
        self._records[key] = merged
        return merged

    def fail(self, check: str, chart: str, reason: str, tol: float, kind: str = "rel") -> CheckRecord:
        """Record a check that could not be evaluated (e.g. an exception)."""
        rec = CheckRecord(check, chart, reason, [], float("nan"), None, tol, kind, 0, False)
        self._records[(check, chart)] = rec
        return rec

    @property
    def records(self) -> List[CheckRecord]:
        return [self._records[k] for k in sorted(self._records)]


@dataclass
class SuiteReport:
    suite: str
    seed: int
    version: str
    config: dict
    records: List[CheckRecord] = field(default_factory=list)

    @property
    def n_failed(self) -> int:
        return sum(not r.passed for r in self.records)

    @property
    def passed(self) -> bool:
        return self.n_failed == 0

    def summary(self) -> dict:
        return {"checks": len(self.records), "passed": len(self.records) - self.n_failed, "failed": self.n_failed}

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool": "formelastic",
            "version": self.version,
            "suite": self.suite,
            "seed": self.seed,
            "config": self.config,
            "summary": self.summary(),
            "records": [r.as_dict() for r in self.records],
        }

    def to_json(self) -> str:
        # NaN is not valid JSON; unevaluable errors are written as null
        return json.dumps(_scrub(self.as_dict()), indent=2, allow_nan=False) + "\n"

    def format_table(self) -> str:
        lines = [f"suite {self.suite} (seed {self.seed})"]
        width = max([len(r.check) for r in self.records] + [5])
        for r in self.records:
            err = r.max_rel_error if r.tolerance_kind == "rel" else r.max_abs_error
            err_s = "n/a" if err is None or not math.isfinite(err) else f"{err:.2e}"
            status = "PASS" if r.passed else "FAIL"
            lines.append(
                f"  {status}  {r.check:<{width}}  {r.chart:<12} {r.tolerance_kind} err {err_s:>9}"
                f"  tol {r.tolerance:.0e}  n={r.samples}"
            )
        s = self.summary()
        lines.append(f"{s['passed']}/{s['checks']} checks passed")
        return "\n".join(lines)


def _scrub(obj):
    if isinstance(obj, dict):
        return {k: _scrub(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_scrub(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj
