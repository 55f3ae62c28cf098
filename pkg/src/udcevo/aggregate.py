"""Per-edition counts and their change across an edition series."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .mrf_ingest import EditionSnapshot
from .notation import COMMON_CODES, ClassificationMode, class_order


class EmptyEdition(ValueError):
    pass


class EmptyClass(ValueError):
    pass


class DuplicateLabel(ValueError):
    pass


@dataclass
class EditionStats:
    """Counts for one edition.

    ``total`` counts classificatory records only; the reserved ``~a``, ``~b``
    and ``~h`` records are tallied in ``metadata`` and ``common_by_kind``.
    Map keys are main-class codes ("0".."9", "01", "AUX") and MRF letters.
    """

    label: str
    mode: ClassificationMode = ClassificationMode.STANDARD
    total: int = 0
    by_main_class: dict[str, int] = field(default_factory=dict)
    special_by_class: dict[str, int] = field(default_factory=dict)
    common_by_kind: dict[str, int] = field(default_factory=dict)
    aux_bucket: int = 0
    metadata: int = 0

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "mode": ClassificationMode(self.mode).value,
            "total": self.total,
            "aux_bucket": self.aux_bucket,
            "metadata": self.metadata,
            "by_main_class": dict(self.by_main_class),
            "special_by_class": dict(self.special_by_class),
            "common_by_kind": dict(self.common_by_kind),
            "class_share_pct": {
                c: round(class_share(self, c), 2) if self.total else None
                for c in self.by_main_class
            },
            "special_aux_pct": {
                c: round(special_aux_pct(self, c), 2) if self.by_main_class[c] else None
                for c in self.by_main_class
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EditionStats":
        return cls(
            label=data["label"],
            mode=ClassificationMode(data.get("mode", "standard")),
            total=data["total"],
            by_main_class=dict(data["by_main_class"]),
            special_by_class=dict(data["special_by_class"]),
            common_by_kind=dict(data["common_by_kind"]),
            aux_bucket=data["aux_bucket"],
            metadata=data.get("metadata", 0),
        )


def _empty_buckets(mode: ClassificationMode) -> dict[str, int]:
    return {code: 0 for code in class_order(mode)}


def compute_stats(
    snapshot: EditionSnapshot, mode: ClassificationMode = ClassificationMode.STANDARD
) -> EditionStats:
    mode = ClassificationMode(mode)
    by_class = _empty_buckets(mode)
    special = _empty_buckets(mode)
    common = {code: 0 for code in COMMON_CODES}
    stats = EditionStats(snapshot.label, mode)
    for rec in snapshot.records:
        if rec.is_metadata:
            common[rec.mrf_code] += 1
            stats.metadata += 1
            continue
        cls = rec.main_class(mode)
        stats.total += 1
        by_class[cls] += 1
        aux_type = rec.aux_type
        if cls == "AUX":
            stats.aux_bucket += 1
            common[aux_type.mrf_code] += 1
        elif aux_type is not None and aux_type.is_special:
            special[cls] += 1
    stats.by_main_class = by_class
    stats.special_by_class = special
    stats.common_by_kind = common
    return stats


def class_share(stats: EditionStats, cls: str) -> float:
    """Percentage of the edition's records falling in main class ``cls``."""
    if stats.total == 0:
        raise EmptyEdition(f"edition {stats.label!r} has no records")
    return 100.0 * stats.by_main_class.get(cls, 0) / stats.total


def special_aux_pct(stats: EditionStats, cls: str) -> float:
    """Share of class ``cls`` taken by special-auxiliary records."""
    n = stats.by_main_class.get(cls, 0)
    if n == 0:
        raise EmptyClass(f"class {cls!r} is empty in edition {stats.label!r}")
    return 100.0 * stats.special_by_class.get(cls, 0) / n


def common_aux_total(stats: EditionStats) -> int:
    return sum(stats.common_by_kind.values())


def _diff_maps(a: dict[str, int], b: dict[str, int]) -> dict[str, int]:
    keys = list(a) + [k for k in b if k not in a]
    return {k: b.get(k, 0) - a.get(k, 0) for k in keys}


@dataclass
class EditionChange:
    from_label: str
    to_label: str
    total: int
    by_main_class: dict[str, int]
    special_by_class: dict[str, int]
    common_by_kind: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "from": self.from_label,
            "to": self.to_label,
            "total": self.total,
            "by_main_class": self.by_main_class,
            "special_by_class": self.special_by_class,
            "common_by_kind": self.common_by_kind,
        }


@dataclass
class TimeSeries:
    editions: list[EditionStats]

    def __post_init__(self) -> None:
        labels = [s.label for s in self.editions]
        dupes = [label for label, n in Counter(labels).items() if n > 1]
        if dupes:
            raise DuplicateLabel(f"duplicate edition labels: {dupes}")

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.editions]

    def deltas(self) -> list[EditionChange]:
        """Differences between each pair of consecutive editions."""
        out = []
        for a, b in zip(self.editions, self.editions[1:]):
            out.append(
                EditionChange(
                    a.label,
                    b.label,
                    b.total - a.total,
                    _diff_maps(a.by_main_class, b.by_main_class),
                    _diff_maps(a.special_by_class, b.special_by_class),
                    _diff_maps(a.common_by_kind, b.common_by_kind),
                )
            )
        return out

    def series(self, metric: str) -> dict[str, list[float]]:
        """Per-key values across editions.

        ``metric`` is one of ``classes``, ``special``, ``special-pct``,
        ``common``. Empty classes yield 0.0 for ``special-pct``.
        """
        if metric not in ("classes", "special", "special-pct", "common"):
            raise ValueError(f"unknown metric {metric!r}")
        keys: list[str] = []
        for s in self.editions:
            src = s.common_by_kind if metric == "common" else s.by_main_class
            keys += [k for k in src if k not in keys]
        if metric in ("special", "special-pct"):
            # the AUX bucket never carries special auxiliaries
            keys = [k for k in keys if k != "AUX"]
        out: dict[str, list[float]] = {k: [] for k in keys}
        for s in self.editions:
            for k in keys:
                if metric == "classes":
                    out[k].append(s.by_main_class.get(k, 0))
                elif metric == "special":
                    out[k].append(s.special_by_class.get(k, 0))
                elif metric == "special-pct":
                    out[k].append(special_aux_pct(s, k) if s.by_main_class.get(k) else 0.0)
                else:
                    out[k].append(s.common_by_kind.get(k, 0))
        return out

    def to_dict(self) -> dict:
        return {
            "editions": [s.to_dict() for s in self.editions],
            "deltas": [d.to_dict() for d in self.deltas()],
        }


def time_series(
    snapshots: Sequence[EditionSnapshot],
    mode: ClassificationMode = ClassificationMode.STANDARD,
) -> TimeSeries:
    if not snapshots:
        raise ValueError("time_series needs at least one snapshot")
    labels = [s.label for s in snapshots]
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(f"duplicate edition labels: {labels}")
    return TimeSeries([compute_stats(s, mode) for s in snapshots])


# --- serialization ---------------------------------------------------------


def stats_to_json(stats: Iterable[EditionStats] | TimeSeries) -> str:
    series = stats if isinstance(stats, TimeSeries) else TimeSeries(list(stats))
    return json.dumps(series.to_dict(), indent=2, ensure_ascii=False) + "\n"


def stats_from_json(text: str) -> list[EditionStats]:
    """Read stats written by :func:`stats_to_json` or a single stats object."""
    data = json.loads(text)
    if "editions" in data:
        return [EditionStats.from_dict(d) for d in data["editions"]]
    return [EditionStats.from_dict(data)]


def stats_to_tsv(stats: Iterable[EditionStats]) -> str:
    """Long-format table: one row per edition and class or kind."""
    lines = ["edition\tgroup\tkey\tcount\tspecial\tshare_pct\tspecial_pct"]
    for s in stats:
        for cls, n in s.by_main_class.items():
            share = f"{class_share(s, cls):.2f}" if s.total else ""
            pct = f"{special_aux_pct(s, cls):.2f}" if n else ""
            lines.append(f"{s.label}\tclass\t{cls}\t{n}\t{s.special_by_class.get(cls, 0)}\t{share}\t{pct}")
        for code, n in s.common_by_kind.items():
            lines.append(f"{s.label}\tcommon\t{code}\t{n}\t\t\t")
    return "\n".join(lines) + "\n"


def format_stats(stats: EditionStats, only: Optional[Iterable[str]] = None) -> str:
    """Human-readable table of one edition."""
    classes = list(only) if only is not None else list(stats.by_main_class)
    out = [f"edition {stats.label}  ({stats.total} records, {stats.metadata} metadata, mode {ClassificationMode(stats.mode).value})"]
    out.append(f"{'class':<6}{'records':>9}{'share%':>9}{'special':>9}{'special%':>10}")
    for cls in classes:
        n = stats.by_main_class.get(cls, 0)
        share = f"{class_share(stats, cls):.2f}" if stats.total else "-"
        pct = f"{special_aux_pct(stats, cls):.2f}" if n else "-"
        out.append(f"{cls:<6}{n:>9}{share:>9}{stats.special_by_class.get(cls, 0):>9}{pct:>10}")
    kinds = "  ".join(f"{k}={v}" for k, v in stats.common_by_kind.items())
    out.append(f"common auxiliaries: {common_aux_total(stats)}  ({kinds})")
    return "\n".join(out)
