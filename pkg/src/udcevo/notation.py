"""UDC notation grammar: lexer, recursive descent parser, canonical printer
and classification helpers.

Grammar accepted by :func:`parse`::

    expression := term (connector term)*
    connector  := "+" | "/" | "::" | ":"
    term       := "[" expression "]" aux* | mainNumber aux* | aux+
    mainNumber := digit+ ("." digit+)*
    aux        := "=" digits             language      (c)
                | "(=" payload ")"       ethnic        (f)
                | "(0" payload ")"       form          (d)
                | "(" [1-9] payload ")"  place         (e)
                | '"' payload '"'        time          (g)
                | "-0" digit+            persons       (k)
                | "-" [1-9] digit*       special hyphen
                | ".0" digit+            special point-zero
                | "'" digit+             special apostrophe
                | "*" text | [A-Z]+      non-UDC       (h)

A dot followed by ``0`` and another digit always opens a point-zero
auxiliary; it never continues a main number.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional


class NotationError(ValueError):
    """Base class for notation problems."""


class EmptyNotationError(NotationError):
    def __init__(self) -> None:
        super().__init__("empty notation")


class NotationSyntaxError(NotationError):
    """Malformed notation.

    ``position`` is a 0-based offset into the trimmed input and ``expected``
    lists what the parser would have accepted there.
    """

    def __init__(self, text: str, position: int, expected: tuple[str, ...]):
        self.text = text
        self.position = position
        self.expected = tuple(expected)
        found = repr(text[position]) if position < len(text) else "end of input"
        super().__init__(
            f"at position {position} in {text!r}: found {found}, "
            f"expected {' or '.join(self.expected)}"
        )


class ClassificationMode(str, enum.Enum):
    STANDARD = "standard"
    TREAT_01_AS_MAIN = "01main"


class AuxKind(str, enum.Enum):
    COMMON_COORDINATION = "CommonCoordination"
    COMMON_LANGUAGE = "CommonLanguage"
    COMMON_FORM = "CommonForm"
    COMMON_PLACE = "CommonPlace"
    COMMON_ETHNIC = "CommonEthnic"
    COMMON_TIME = "CommonTime"
    COMMON_NON_UDC = "CommonNonUdc"
    COMMON_PERSONS_MATERIALS = "CommonPersonsMaterials"
    SPECIAL_HYPHEN = "SpecialHyphen"
    SPECIAL_POINT_ZERO = "SpecialPointZero"
    SPECIAL_APOSTROPHE = "SpecialApostrophe"

    @property
    def is_common(self) -> bool:
        return self.value.startswith("Common")

    @property
    def is_special(self) -> bool:
        return self.value.startswith("Special")

    @property
    def mrf_codes(self) -> tuple[str, ...]:
        """MRF letter codes for a common kind; empty for special kinds.

        Coordination is the only kind carrying two codes ('a' and 'b').
        """
        return _MRF_CODES[self]

    @property
    def mrf_code(self) -> Optional[str]:
        codes = _MRF_CODES[self]
        return codes[0] if codes else None


_MRF_CODES: dict[AuxKind, tuple[str, ...]] = {
    AuxKind.COMMON_COORDINATION: ("a", "b"),
    AuxKind.COMMON_LANGUAGE: ("c",),
    AuxKind.COMMON_FORM: ("d",),
    AuxKind.COMMON_PLACE: ("e",),
    AuxKind.COMMON_ETHNIC: ("f",),
    AuxKind.COMMON_TIME: ("g",),
    AuxKind.COMMON_NON_UDC: ("h",),
    AuxKind.COMMON_PERSONS_MATERIALS: ("k",),
    AuxKind.SPECIAL_HYPHEN: (),
    AuxKind.SPECIAL_POINT_ZERO: (),
    AuxKind.SPECIAL_APOSTROPHE: (),
}

#: letter code -> kind, as used in the Master Reference File
MRF_CODE_KINDS: dict[str, AuxKind] = {
    code: kind for kind, codes in _MRF_CODES.items() for code in codes
}
COMMON_CODES: tuple[str, ...] = tuple(sorted(MRF_CODE_KINDS))

# (prefix, suffix) around the payload in canonical surface form
_DELIMITERS: dict[AuxKind, tuple[str, str]] = {
    AuxKind.COMMON_LANGUAGE: ("=", ""),
    AuxKind.COMMON_ETHNIC: ("(=", ")"),
    AuxKind.COMMON_FORM: ("(0", ")"),
    AuxKind.COMMON_PLACE: ("(", ")"),
    AuxKind.COMMON_TIME: ('"', '"'),
    AuxKind.COMMON_PERSONS_MATERIALS: ("-0", ""),
    AuxKind.COMMON_NON_UDC: ("*", ""),
    AuxKind.SPECIAL_HYPHEN: ("-", ""),
    AuxKind.SPECIAL_POINT_ZERO: (".0", ""),
    AuxKind.SPECIAL_APOSTROPHE: ("'", ""),
}

# characters that end a "*" non-UDC payload
_STAR_STOP = frozenset("+/:[]()=\"'*-.")

_DIGITS = re.compile(r"[0-9]+")
_DOTTED = re.compile(r"[0-9]+(?:\.[0-9]+)*")
_PAYLOAD_RULES: dict[AuxKind, re.Pattern] = {
    AuxKind.COMMON_LANGUAGE: _DOTTED,
    AuxKind.COMMON_ETHNIC: re.compile(r"[^()]+"),
    AuxKind.COMMON_FORM: re.compile(r"[^()]+"),
    AuxKind.COMMON_PLACE: re.compile(r"[1-9][^()]*"),
    AuxKind.COMMON_TIME: re.compile(r'[^"]+'),
    AuxKind.COMMON_PERSONS_MATERIALS: _DIGITS,
    AuxKind.SPECIAL_HYPHEN: re.compile(r"[1-9][0-9]*"),
    AuxKind.SPECIAL_POINT_ZERO: _DIGITS,
    AuxKind.SPECIAL_APOSTROPHE: _DIGITS,
}


@dataclass(frozen=True)
class MainClassLabel:
    code: str
    display_name: str

    def __str__(self) -> str:
        return self.code


# Display names for 1, 3, 7 and 9 are configuration, not fixed by the model.
MAIN_CLASS_NAMES: dict[str, str] = {
    "0": "Science and Information Organization",
    "01": "Bibliographie",
    "1": "Philosophy. Psychology",
    "2": "Religion",
    "3": "Social sciences",
    "4": "Philology. Linguistics",
    "5": "Natural sciences",
    "6": "Applied sciences",
    "7": "The arts",
    "8": "Literature",
    "9": "Geography. History",
    "AUX": "Common auxiliaries",
}
STANDARD_CLASSES: tuple[str, ...] = tuple(str(d) for d in range(10))


def class_order(mode: ClassificationMode = ClassificationMode.STANDARD) -> tuple[str, ...]:
    """Bucket codes in display order for ``mode``."""
    if ClassificationMode(mode) is ClassificationMode.TREAT_01_AS_MAIN:
        return ("0", "01") + STANDARD_CLASSES[1:] + ("AUX",)
    return STANDARD_CLASSES + ("AUX",)


def main_class_label(code: str) -> MainClassLabel:
    return MainClassLabel(code, MAIN_CLASS_NAMES[code])


# --- structure -------------------------------------------------------------


def _ambiguous_group(digits: str) -> Optional[int]:
    """Index of a three-digit group that would render as ``.0<digit>``."""
    for start in range(3, len(digits), 3):
        if digits[start] == "0" and start + 1 < len(digits):
            return start
    return None


@dataclass(frozen=True)
class MainNumber:
    digits: str

    def __post_init__(self) -> None:
        if not self.digits or not self.digits.isascii() or not self.digits.isdigit():
            raise ValueError(f"main number must be decimal digits: {self.digits!r}")
        if _ambiguous_group(self.digits) is not None:
            # "539.01" is a point-zero auxiliary, so no canonical form exists
            raise ValueError(f"main number {self.digits!r} has no canonical grouping")

    def render(self) -> str:
        d = self.digits
        return ".".join(d[i : i + 3] for i in range(0, len(d), 3))


@dataclass(frozen=True)
class AuxSegment:
    kind: AuxKind
    payload: str

    def __post_init__(self) -> None:
        if self.kind is AuxKind.COMMON_COORDINATION:
            raise ValueError("coordination auxiliaries never occur inside a notation")
        rule = _PAYLOAD_RULES.get(self.kind)
        if self.kind is AuxKind.COMMON_NON_UDC:
            ok = bool(self.payload) and not any(
                c.isspace() or c in _STAR_STOP for c in self.payload
            )
        else:
            ok = rule is not None and rule.fullmatch(self.payload) is not None
        if ok and self.kind is AuxKind.COMMON_LANGUAGE:
            ok = _ambiguous_dots(self.payload) is None
        if not ok:
            raise ValueError(f"invalid payload {self.payload!r} for {self.kind.value}")

    @property
    def raw(self) -> str:
        prefix, suffix = _DELIMITERS[self.kind]
        return f"{prefix}{self.payload}{suffix}"


def _ambiguous_dots(dotted: str) -> Optional[int]:
    """Offset of a ``.0<digit>`` inside a dotted digit run, if any."""
    m = re.search(r"\.0[0-9]", dotted)
    return m.start() if m else None


@dataclass(frozen=True)
class Term:
    main: Optional[MainNumber] = None
    auxiliaries: tuple[AuxSegment, ...] = ()
    bracket: Optional["UdcExpression"] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "auxiliaries", tuple(self.auxiliaries))
        if self.main is not None and self.bracket is not None:
            raise ValueError("a term holds either a main number or a bracket")
        if self.main is None and self.bracket is None:
            if not self.auxiliaries:
                raise ValueError("empty term")
            if not self.auxiliaries[0].kind.is_common:
                raise ValueError("a term without main number must open with a common auxiliary")

    def render(self) -> str:
        if self.bracket is not None:
            head = f"[{self.bracket.render()}]"
        elif self.main is not None:
            head = self.main.render()
        else:
            head = ""
        return head + "".join(seg.raw for seg in self.auxiliaries)


class ConnectorKind(str, enum.Enum):
    PLUS = "+"
    STROKE = "/"
    RELATION = ":"
    ORDER_FIXING = "::"


@dataclass(frozen=True)
class UdcExpression:
    terms: tuple[Term, ...]
    connectors: tuple[ConnectorKind, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "connectors", tuple(self.connectors))
        if not self.terms:
            raise ValueError("an expression needs at least one term")
        if len(self.connectors) != len(self.terms) - 1:
            raise ValueError("connectors must number terms - 1")

    def render(self) -> str:
        out = [self.terms[0].render()]
        for conn, term in zip(self.connectors, self.terms[1:]):
            out.append(conn.value)
            out.append(term.render())
        return "".join(out)

    def segments(self) -> Iterator[AuxSegment]:
        """Auxiliary segments in left-to-right surface order."""
        for term in self.terms:
            if term.bracket is not None:
                yield from term.bracket.segments()
            yield from term.auxiliaries

    def leading_main(self) -> Optional[MainNumber]:
        first = self.terms[0]
        if first.bracket is not None:
            return first.bracket.leading_main()
        return first.main

    def __str__(self) -> str:
        return self.render()


# --- lexer -----------------------------------------------------------------


class Token(NamedTuple):
    kind: str  # "MAIN", "AUX", "CONNECTOR", "LBRACKET", "RBRACKET"
    text: str
    position: int
    value: object = None  # digits / AuxSegment / ConnectorKind


_AUX_START = ("=", "(", '"', "-", ".", "'", "*")
_TERM_START = ("digit", "[") + tuple(repr(c) for c in _AUX_START) + ("uppercase letter",)


def _dotted_run(text: str, pos: int) -> int:
    """End offset of ``digit+ ("." digit+)*`` from ``pos``, stopping before
    any ``.0<digit>``."""
    n = len(text)
    end = pos
    while end < n and text[end].isdigit():
        end += 1
    while end + 1 < n and text[end] == "." and text[end + 1].isdigit():
        if text[end + 1] == "0" and end + 2 < n and text[end + 2].isdigit():
            break
        end += 1
        while end < n and text[end].isdigit():
            end += 1
    return end


def _digit_run(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    return pos


def _closing(text: str, start: int, payload_from: int, close: str, kind: AuxKind) -> Token:
    stops = {close, "("} if close == ")" else {close}
    end = payload_from
    while end < len(text) and text[end] not in stops:
        end += 1
    if end >= len(text) or text[end] != close:
        raise NotationSyntaxError(text, end, (repr(close),))
    if end == payload_from:
        raise NotationSyntaxError(text, end, ("auxiliary payload",))
    payload = text[payload_from:end]
    return Token("AUX", text[start : end + 1], start, AuxSegment(kind, payload))


def _lex_aux(text: str, pos: int) -> Token:
    c = text[pos]
    nxt = text[pos + 1] if pos + 1 < len(text) else ""
    if c == "=":
        if not nxt.isdigit():
            raise NotationSyntaxError(text, pos + 1, ("digit",))
        end = _dotted_run(text, pos + 1)
        return Token("AUX", text[pos:end], pos, AuxSegment(AuxKind.COMMON_LANGUAGE, text[pos + 1 : end]))
    if c == "(":
        if nxt == "=":
            return _closing(text, pos, pos + 2, ")", AuxKind.COMMON_ETHNIC)
        if nxt == "0":
            return _closing(text, pos, pos + 2, ")", AuxKind.COMMON_FORM)
        if nxt.isdigit():
            return _closing(text, pos, pos + 1, ")", AuxKind.COMMON_PLACE)
        raise NotationSyntaxError(text, pos + 1, ("'='", "digit"))
    if c == '"':
        return _closing(text, pos, pos + 1, '"', AuxKind.COMMON_TIME)
    if c == "-":
        if nxt == "0":
            end = _digit_run(text, pos + 2)
            if end == pos + 2:
                raise NotationSyntaxError(text, end, ("digit",))
            return Token("AUX", text[pos:end], pos, AuxSegment(AuxKind.COMMON_PERSONS_MATERIALS, text[pos + 2 : end]))
        if nxt.isdigit():
            end = _digit_run(text, pos + 1)
            return Token("AUX", text[pos:end], pos, AuxSegment(AuxKind.SPECIAL_HYPHEN, text[pos + 1 : end]))
        raise NotationSyntaxError(text, pos + 1, ("digit",))
    if c == ".":
        if nxt == "0":
            end = _digit_run(text, pos + 2)
            if end > pos + 2:
                return Token("AUX", text[pos:end], pos, AuxSegment(AuxKind.SPECIAL_POINT_ZERO, text[pos + 2 : end]))
            raise NotationSyntaxError(text, pos + 2, ("digit",))
        raise NotationSyntaxError(text, pos + 1, ("'0'",))
    if c == "'":
        end = _digit_run(text, pos + 1)
        if end == pos + 1:
            raise NotationSyntaxError(text, end, ("digit",))
        return Token("AUX", text[pos:end], pos, AuxSegment(AuxKind.SPECIAL_APOSTROPHE, text[pos + 1 : end]))
    if c == "*":
        end = pos + 1
        while end < len(text) and not text[end].isspace() and text[end] not in _STAR_STOP:
            end += 1
        if end == pos + 1:
            raise NotationSyntaxError(text, end, ("non-UDC text",))
        return Token("AUX", text[pos:end], pos, AuxSegment(AuxKind.COMMON_NON_UDC, text[pos + 1 : end]))
    # uppercase run
    end = pos
    while end < len(text) and "A" <= text[end] <= "Z":
        end += 1
    return Token("AUX", text[pos:end], pos, AuxSegment(AuxKind.COMMON_NON_UDC, text[pos:end]))


def tokenize(text: str) -> list[Token]:
    """Split a trimmed notation into tokens. Connectors use longest match."""
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        c = text[pos]
        if c == ":":
            if text.startswith("::", pos):
                tokens.append(Token("CONNECTOR", "::", pos, ConnectorKind.ORDER_FIXING))
                pos += 2
            else:
                tokens.append(Token("CONNECTOR", ":", pos, ConnectorKind.RELATION))
                pos += 1
        elif c in "+/":
            tokens.append(Token("CONNECTOR", c, pos, ConnectorKind(c)))
            pos += 1
        elif c == "[":
            tokens.append(Token("LBRACKET", c, pos))
            pos += 1
        elif c == "]":
            tokens.append(Token("RBRACKET", c, pos))
            pos += 1
        elif c.isascii() and c.isdigit():
            end = _dotted_run(text, pos)
            tokens.append(Token("MAIN", text[pos:end], pos, text[pos:end].replace(".", "")))
            pos = end
        elif c in _AUX_START or "A" <= c <= "Z":
            try:
                tok = _lex_aux(text, pos)
            except ValueError as exc:
                if isinstance(exc, NotationSyntaxError):
                    raise
                raise NotationSyntaxError(text, pos, ("well-formed auxiliary",)) from exc
            tokens.append(tok)
            pos += len(tok.text)
        else:
            raise NotationSyntaxError(text, pos, ("connector", "term") if tokens else _TERM_START)
    return tokens


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def where(self) -> int:
        tok = self.peek()
        return tok.position if tok is not None else len(self.text)

    def fail(self, expected: tuple[str, ...]):
        raise NotationSyntaxError(self.text, self.where(), expected)

    def expression(self) -> UdcExpression:
        terms = [self.term()]
        connectors = []
        while (tok := self.peek()) is not None and tok.kind == "CONNECTOR":
            self.i += 1
            connectors.append(tok.value)
            terms.append(self.term())
        return UdcExpression(tuple(terms), tuple(connectors))

    def term(self) -> Term:
        tok = self.peek()
        main = bracket = None
        if tok is None:
            self.fail(_TERM_START)
        if tok.kind == "LBRACKET":
            self.i += 1
            bracket = self.expression()
            if (close := self.peek()) is None or close.kind != "RBRACKET":
                self.fail(("']'", "connector"))
            self.i += 1
        elif tok.kind == "MAIN":
            self.i += 1
            bad = _ambiguous_group(tok.value)
            if bad is not None:
                raise NotationSyntaxError(
                    self.text, tok.position, ("main number without a '.0' group",)
                )
            main = MainNumber(tok.value)
        elif tok.kind == "AUX":
            if not tok.value.kind.is_common:
                self.fail(("main number", "'['", "common auxiliary"))
        else:
            self.fail(_TERM_START)
        auxes = []
        while (tok := self.peek()) is not None and tok.kind == "AUX":
            auxes.append(tok.value)
            self.i += 1
        if (tok := self.peek()) is not None and tok.kind not in ("CONNECTOR", "RBRACKET"):
            self.fail(("auxiliary", "connector"))
        return Term(main, tuple(auxes), bracket)


def parse(text: str) -> UdcExpression:
    """Parse a UDC notation string.

    Surrounding whitespace is ignored; everything else must be consumed.
    Raises :class:`EmptyNotationError` for blank input and
    :class:`NotationSyntaxError` otherwise.
    """
    stripped = text.strip()
    if not stripped:
        raise EmptyNotationError()
    parser = _Parser(stripped)
    expr = parser.expression()
    if parser.peek() is not None:
        parser.fail(("connector",))
    return expr


def render(expr: UdcExpression) -> str:
    return expr.render()


def canonical(text: str) -> str:
    """Canonical form of a notation string."""
    return parse(text).render()


# --- classification --------------------------------------------------------


def main_class(
    expr: UdcExpression, mode: ClassificationMode = ClassificationMode.STANDARD
) -> MainClassLabel:
    """Main class governed by the leading main number.

    A leading bracket is entered to find it; a notation that opens with an
    auxiliary belongs to the ``AUX`` bucket.
    """
    main = expr.leading_main()
    if main is None:
        return main_class_label("AUX")
    if ClassificationMode(mode) is ClassificationMode.TREAT_01_AS_MAIN and main.digits.startswith("01"):
        return main_class_label("01")
    return main_class_label(main.digits[0])


class AuxProfile(NamedTuple):
    aux_type: Optional[AuxKind]
    aux_part: Optional[str]


def auxiliary_profile(expr: UdcExpression) -> AuxProfile:
    segments = list(expr.segments())
    if not segments:
        return AuxProfile(None, None)
    return AuxProfile(segments[0].kind, "".join(s.raw for s in segments))
