"""Edition-to-edition change and per-notation lineage.

A record keeps its identity across editions through its canonical
notation. Between two editions a notation is stable, entered, exited or
redescribed; entered/exited pairs whose descriptions match exactly (after
normalization) are additionally reported as shifts.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .mrf_ingest import METADATA_TOKENS, EditionRecord, EditionSnapshot, normalize_description
from .notation import canonical


class Shift(NamedTuple):
    old_notation: str
    new_notation: str
    description: str
    old_class: Optional[str]
    new_class: Optional[str]

    @property
    def crosses_main_class(self) -> bool:
        return self.old_class != self.new_class


class AmbiguousShift(NamedTuple):
    description: str
    exited: tuple[str, ...]
    entered: tuple[str, ...]


class Redescription(NamedTuple):
    notation: str
    old_description: str
    new_description: str


@dataclass
class EditionDelta:
    from_label: str
    to_label: str
    entered: set[str] = field(default_factory=set)
    exited: set[str] = field(default_factory=set)
    description_changed: list[Redescription] = field(default_factory=list)
    shifted: list[Shift] = field(default_factory=list)
    ambiguous: list[AmbiguousShift] = field(default_factory=list)
    stable: set[str] = field(default_factory=set)

    @property
    def is_empty(self) -> bool:
        return not (self.entered or self.exited or self.description_changed)

    def to_dict(self) -> dict:
        return {
            "from": self.from_label,
            "to": self.to_label,
            "entered": sorted(self.entered),
            "exited": sorted(self.exited),
            "description_changed": [r._asdict() for r in self.description_changed],
            "shifted": [s._asdict() for s in self.shifted],
            "ambiguous_shifts": [
                {"description": a.description, "exited": list(a.exited), "entered": list(a.entered)}
                for a in self.ambiguous
            ],
            "stable": len(self.stable),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def report(self) -> str:
        head = f"{self.from_label} -> {self.to_label}"
        if self.is_empty:
            return f"{head}: no changes"
        lines = [
            f"{head}: {len(self.entered)} entered, {len(self.exited)} exited, "
            f"{len(self.description_changed)} redescribed, {len(self.shifted)} shifted, "
            f"{len(self.stable)} stable"
        ]
        lines += [f"  + {n}" for n in sorted(self.entered)]
        lines += [f"  - {n}" for n in sorted(self.exited)]
        for r in self.description_changed:
            lines.append(f"  ~ {r.notation}: {r.old_description!r} -> {r.new_description!r}")
        for s in self.shifted:
            lines.append(f"  > {s.old_notation} -> {s.new_notation} [{s.old_class}->{s.new_class}]: {s.description}")
        for a in self.ambiguous:
            lines.append(
                f"  ? {a.description!r}: exited {', '.join(a.exited)}; entered {', '.join(a.entered)}"
            )
        return "\n".join(lines)


def detect_shifts(
    exited_records: Iterable[EditionRecord], entered_records: Iterable[EditionRecord]
) -> tuple[list[Shift], list[AmbiguousShift]]:
    """Pair exited and entered records with identical normalized descriptions.

    A description shared by more than one record on either side is never
    paired; it is returned as an ambiguity instead. Empty descriptions never
    match.
    """
    old_by_desc: dict[str, list[EditionRecord]] = defaultdict(list)
    new_by_desc: dict[str, list[EditionRecord]] = defaultdict(list)
    for rec in exited_records:
        desc = rec.normalized_description
        if desc:
            old_by_desc[desc].append(rec)
    for rec in entered_records:
        desc = rec.normalized_description
        if desc:
            new_by_desc[desc].append(rec)

    shifts, ambiguous = [], []
    for desc in sorted(old_by_desc.keys() & new_by_desc.keys()):
        olds, news = old_by_desc[desc], new_by_desc[desc]
        if len(olds) == 1 and len(news) == 1:
            o, n = olds[0], news[0]
            shifts.append(Shift(o.key, n.key, desc, o.main_class(), n.main_class()))
        else:
            ambiguous.append(
                AmbiguousShift(desc, tuple(sorted(r.key for r in olds)), tuple(sorted(r.key for r in news)))
            )
    shifts.sort(key=lambda s: (s.old_notation, s.new_notation))
    return shifts, ambiguous


def diff(a: EditionSnapshot, b: EditionSnapshot) -> EditionDelta:
    keys_a, keys_b = set(a.index), set(b.index)
    delta = EditionDelta(a.label, b.label, entered=keys_b - keys_a, exited=keys_a - keys_b)
    for key in sorted(keys_a & keys_b):
        old, new = a.index[key].description, b.index[key].description
        if normalize_description(old) != normalize_description(new):
            delta.description_changed.append(Redescription(key, old, new))
        else:
            delta.stable.add(key)
    delta.shifted, delta.ambiguous = detect_shifts(
        (a.index[k] for k in sorted(delta.exited)),
        (b.index[k] for k in sorted(delta.entered)),
    )
    return delta


class EventKind(str, enum.Enum):
    APPEARED = "Appeared"
    DISAPPEARED = "Disappeared"
    REDESCRIBED = "Redescribed"


class LineageEvent(NamedTuple):
    kind: EventKind
    edition: str  # label of the edition where the new state is first seen
    previous: Optional[str]
    current: Optional[str]


@dataclass
class Lineage:
    notation: str
    states: list[tuple[str, Optional[str]]]  # (edition label, description or None when absent)
    unknown: bool = False

    @property
    def events(self) -> list[LineageEvent]:
        out = []
        for (_, prev), (label, cur) in zip(self.states, self.states[1:]):
            if prev is None and cur is not None:
                out.append(LineageEvent(EventKind.APPEARED, label, prev, cur))
            elif prev is not None and cur is None:
                out.append(LineageEvent(EventKind.DISAPPEARED, label, prev, cur))
            elif prev is not None and normalize_description(prev) != normalize_description(cur):
                out.append(LineageEvent(EventKind.REDESCRIBED, label, prev, cur))
        return out

    def to_dict(self) -> dict:
        return {
            "notation": self.notation,
            "unknown": self.unknown,
            "states": [
                {"edition": label, "present": desc is not None, "description": desc}
                for label, desc in self.states
            ],
            "events": [
                {"kind": e.kind.value, "edition": e.edition, "previous": e.previous, "current": e.current}
                for e in self.events
            ],
        }

    def report(self) -> str:
        lines = [f"lineage of {self.notation}" + ("  (absent from every edition)" if self.unknown else "")]
        for label, desc in self.states:
            lines.append(f"  {label}: " + ("-" if desc is None else desc))
        for e in self.events:
            lines.append(f"  {e.kind.value} in {e.edition}")
        return "\n".join(lines)


def history(notation: str, series: Sequence[EditionSnapshot]) -> Lineage:
    """Trace one notation through ``series`` (oldest first).

    The notation is canonicalized first, so an unparseable notation raises
    :class:`~udcevo.notation.NotationError`. A notation absent from every
    edition gives an all-absent lineage with ``unknown`` set.
    """
    if not series:
        raise ValueError("history needs at least one edition")
    token = notation.strip()
    key = token if token in METADATA_TOKENS else canonical(token)
    states = []
    for snap in series:
        rec = snap.get(key)
        states.append((snap.label, rec.description if rec is not None else None))
    return Lineage(key, states, unknown=all(d is None for _, d in states))
