"""Loading scheme editions into snapshots and writing the analysis table.

Two input formats are understood:

``canonical`` (CanonicalTsv)
    UTF-8, one ``notation<TAB>description`` per line. ``#label:<edition>``
    names the edition, other ``#`` lines are comments. Files written by
    :func:`export_tabular` are accepted as well.

``flat`` (FlatText)
    ``notation  description`` separated by at least two spaces; surrounding
    whitespace is ignored.

The combination-sign records ('a', 'b') and the non-UDC record ('h') have no
notation of their own and are written with the reserved tokens ``~a``,
``~b`` and ``~h``.
"""

from __future__ import annotations

import enum
import io
import logging
import re
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Union

from .notation import (
    AuxKind,
    ClassificationMode,
    MRF_CODE_KINDS,
    NotationError,
    UdcExpression,
    auxiliary_profile,
    main_class,
    parse,
)

log = logging.getLogger(__name__)

EXPORT_COLUMNS = ("notation", "description", "main_class", "aux_type", "aux_part")
EXPORT_HEADER = "\t".join(EXPORT_COLUMNS)
METADATA_TOKENS: dict[str, str] = {"~a": "a", "~b": "b", "~h": "h"}

PathLike = Union[str, Path]


class EditionFormat(str, enum.Enum):
    CANONICAL_TSV = "canonical"
    FLAT_TEXT = "flat"


class IngestError(Exception):
    """Raised when a strict load hits a bad line."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateNotation(IngestError):
    def __init__(self, notation: str, lines: list[int]):
        self.notation = notation
        self.lines = list(lines)
        super().__init__(self.lines[-1], f"duplicate notation {notation!r} on lines {self.lines}")


def normalize_description(text: str) -> str:
    """NFC-normalize and collapse runs of whitespace."""
    return " ".join(unicodedata.normalize("NFC", text).split())


@dataclass(frozen=True)
class EditionRecord:
    notation: str
    expression: Optional[UdcExpression]
    description: str = ""
    source_line: int = field(default=0, compare=False)
    mrf_code: Optional[str] = None  # set only for ~a / ~b / ~h records

    @classmethod
    def from_notation(cls, notation: str, description: str = "", source_line: int = 0) -> "EditionRecord":
        """Build a record, canonicalizing the notation.

        Raises :class:`~udcevo.notation.NotationError` on bad notation.
        """
        token = notation.strip()
        if token in METADATA_TOKENS:
            return cls(token, None, description, source_line, METADATA_TOKENS[token])
        if token.startswith("~"):
            raise NotationError(f"unknown reserved token {token!r}")
        expr = parse(token)
        return cls(expr.render(), expr, description, source_line)

    @property
    def key(self) -> str:
        return self.notation

    @property
    def is_metadata(self) -> bool:
        return self.expression is None

    @property
    def normalized_description(self) -> str:
        return normalize_description(self.description)

    def main_class(self, mode: ClassificationMode = ClassificationMode.STANDARD) -> Optional[str]:
        """Main-class code, or None for metadata records."""
        if self.expression is None:
            return None
        return main_class(self.expression, mode).code

    @cached_property
    def _profile(self):
        return auxiliary_profile(self.expression)

    @property
    def aux_type(self) -> Optional[AuxKind]:
        if self.expression is None:
            return MRF_CODE_KINDS[self.mrf_code]
        return self._profile.aux_type

    @property
    def aux_part(self) -> Optional[str]:
        if self.expression is None:
            return None
        return self._profile.aux_part

    @property
    def common_code(self) -> Optional[str]:
        """MRF letter of the record when it belongs to the common tables."""
        if self.mrf_code is not None:
            return self.mrf_code
        if self.main_class() != "AUX":
            return None
        return self.aux_type.mrf_code


@dataclass
class EditionSnapshot:
    label: str
    records: list[EditionRecord]
    index: dict[str, EditionRecord]

    @classmethod
    def build(cls, label: str, records: Iterable[EditionRecord]) -> "EditionSnapshot":
        """Sort records by key and index them; duplicates raise."""
        index: dict[str, EditionRecord] = {}
        for rec in records:
            if rec.key in index:
                raise DuplicateNotation(rec.key, [index[rec.key].source_line, rec.source_line])
            index[rec.key] = rec
        ordered = [index[k] for k in sorted(index)]
        return cls(label, ordered, {r.key: r for r in ordered})

    @classmethod
    def from_pairs(cls, label: str, pairs: Iterable[tuple[str, str]]) -> "EditionSnapshot":
        return cls.build(
            label,
            (EditionRecord.from_notation(n, d, i) for i, (n, d) in enumerate(pairs, 1)),
        )

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, key: str) -> bool:
        return key in self.index

    def __iter__(self):
        return iter(self.records)

    def get(self, key: str) -> Optional[EditionRecord]:
        return self.index.get(key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EditionSnapshot):
            return NotImplemented
        return self.label == other.label and self.records == other.records


@dataclass
class IngestReport:
    accepted: int = 0
    rejected: list[tuple[int, str]] = field(default_factory=list)
    warnings: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.rejected


_FLAT_SPLIT = re.compile(r"\s{2,}")


def _split_line(line: str, fmt: EditionFormat, exported: bool) -> tuple[str, str]:
    if fmt is EditionFormat.FLAT_TEXT:
        parts = _FLAT_SPLIT.split(line.strip(), maxsplit=1)
        return parts[0], parts[1] if len(parts) > 1 else ""
    if exported:
        cols = line.split("\t")
        return cols[0], cols[1] if len(cols) > 1 else ""
    notation, _, description = line.partition("\t")
    return notation, description


def read_edition(
    data: bytes,
    fmt: EditionFormat = EditionFormat.CANONICAL_TSV,
    label: Optional[str] = None,
    strict: bool = False,
) -> tuple[EditionSnapshot, IngestReport]:
    """Ingest edition bytes; see :func:`load_edition`."""
    fmt = EditionFormat(fmt)
    report = IngestReport()
    records: list[EditionRecord] = []
    seen: dict[str, int] = {}
    header_label = None
    exported = False

    def reject(lineno: int, reason: str) -> None:
        if strict:
            raise IngestError(lineno, reason)
        report.rejected.append((lineno, reason))

    for lineno, raw in enumerate(data.split(b"\n"), 1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            reject(lineno, f"invalid UTF-8: {exc.reason}")
            continue
        line = line.rstrip("\r")
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.startswith("#label:"):
                header_label = line[len("#label:"):].strip()
            continue
        if line == EXPORT_HEADER:
            exported = True
            continue
        notation, description = _split_line(line, fmt, exported)
        # tabs inside a description would break the exported table
        description = description.replace("\t", " ").strip()
        try:
            rec = EditionRecord.from_notation(notation, description, lineno)
        except NotationError as exc:
            reject(lineno, str(exc))
            continue
        if rec.key in seen:
            raise DuplicateNotation(rec.key, [seen[rec.key], lineno])
        seen[rec.key] = lineno
        if not description:
            report.warnings.append((lineno, f"empty description for {rec.key!r}"))
        records.append(rec)
        report.accepted += 1

    snapshot = EditionSnapshot.build(label or header_label or "", records)
    return snapshot, report


def load_edition(
    path: PathLike,
    fmt: EditionFormat = EditionFormat.CANONICAL_TSV,
    label: Optional[str] = None,
    strict: bool = False,
) -> tuple[EditionSnapshot, IngestReport]:
    """Load one edition file.

    Every non-blank, non-comment line becomes a record or a rejection.
    With ``strict`` the first rejection raises :class:`IngestError`.
    A repeated notation always raises :class:`DuplicateNotation`, since a
    snapshot holds one record per canonical notation.

    The label defaults to the file's ``#label:`` header, then its stem.
    """
    path = Path(path)
    data = path.read_bytes()
    snapshot, report = read_edition(data, fmt, label, strict)
    if not snapshot.label:
        snapshot.label = path.stem
    log.debug("loaded %s: %d records, %d rejected", path, report.accepted, len(report.rejected))
    return snapshot, report


def export_rows(
    snapshot: EditionSnapshot, mode: ClassificationMode = ClassificationMode.STANDARD
) -> list[tuple[str, str, str, str, str]]:
    rows = []
    for rec in sorted(snapshot.records, key=lambda r: r.key):
        aux_type = rec.aux_type
        rows.append(
            (
                rec.key,
                rec.description,
                rec.main_class(mode) or "",
                aux_type.value if aux_type is not None else "",
                rec.aux_part or "",
            )
        )
    return rows


def export_tabular(
    snapshot: EditionSnapshot,
    mode: ClassificationMode = ClassificationMode.STANDARD,
    out: Optional[PathLike] = None,
) -> str:
    """Render the analysis table and optionally write it to ``out``.

    Returns the text. Output is LF-terminated UTF-8 and depends only on the
    snapshot content, so repeated runs are byte-identical.
    """
    buf = io.StringIO(newline="")
    if snapshot.label:
        buf.write(f"#label:{snapshot.label}\n")
    buf.write(EXPORT_HEADER + "\n")
    for row in export_rows(snapshot, mode):
        buf.write("\t".join(row) + "\n")
    text = buf.getvalue()
    if out is not None:
        Path(out).write_bytes(text.encode("utf-8"))
    return text


def validate(snapshot: EditionSnapshot) -> IngestReport:
    """Re-check snapshot invariants without raising."""
    report = IngestReport()
    keys: dict[str, int] = {}
    for rec in snapshot.records:
        problem = None
        if rec.expression is None:
            if METADATA_TOKENS.get(rec.notation) != rec.mrf_code:
                problem = f"bad metadata record {rec.notation!r}"
        else:
            try:
                expr = parse(rec.notation)
            except NotationError as exc:
                problem = str(exc)
            else:
                if expr != rec.expression or expr.render() != rec.notation:
                    problem = f"notation {rec.notation!r} is not canonical for its expression"
        if problem is None and rec.key in keys:
            problem = f"duplicate notation {rec.key!r}"
        if problem is None and snapshot.index.get(rec.key) is not rec:
            problem = f"index entry for {rec.key!r} does not match record"
        if problem:
            report.rejected.append((rec.source_line, problem))
            continue
        keys[rec.key] = rec.source_line
        report.accepted += 1
        if not rec.description.strip():
            report.warnings.append((rec.source_line, f"empty description for {rec.key!r}"))
    if len(snapshot.index) != len(snapshot.records):
        report.rejected.append(
            (0, f"index holds {len(snapshot.index)} entries for {len(snapshot.records)} records")
        )
    return report
