#!/usr/bin/env python3
"""Regenerate the engineered edition fixtures under fixtures/.

The real Master Reference Files are not redistributable, so each fixture
is built to carry one published aggregate:

  ed1998.tsv / ed2008.tsv        class 2: 935 records (239 special) -> 2419 (2168)
  ed1994.tsv / ed2009.tsv        class 6 special records: 9613 -> 9442
  common1998.tsv / common2009.tsv common auxiliary records: 6812 -> 13562
  ed1905.txt                     first edition, 400 records (FlatText)

Output is deterministic; rerun after changing the generator and commit.
"""

from __future__ import annotations

import argparse
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

# digits whose three-digit grouping would produce ".0<digit>"
def _groupable(digits: str) -> bool:
    return not any(digits[i] == "0" and i + 1 < len(digits) for i in range(3, len(digits), 3))


def _render(digits: str) -> str:
    return ".".join(digits[i : i + 3] for i in range(0, len(digits), 3))


def mains(prefix: str, n: int) -> list[str]:
    out, i = [], 1
    while len(out) < n:
        digits = f"{prefix}{i}"
        if _groupable(digits):
            out.append(_render(digits))
        i += 1
    return out


def specials(host: str, n: int) -> list[str]:
    # rotate through hyphen, point-zero and apostrophe series
    out = []
    for i in range(1, n + 1):
        k = (i - 1) // 3 + 1
        out.append([f"{host}-{k}", f"{host}.0{k}", f"{host}'{k}"][(i - 1) % 3])
    return out


CLASS_NAMES = {
    "0": "Science and knowledge. Organization",
    "1": "Philosophy. Psychology",
    "2": "Religion. Theology",
    "3": "Social sciences",
    "5": "Mathematics. Natural sciences",
    "6": "Applied sciences. Medicine. Technology",
    "7": "The arts. Recreation. Sport",
    "8": "Language. Linguistics. Literature",
    "9": "Geography. Biography. History",
}

# computing moved out of class 6 and cybernetics out of class 5
COMPUTING = {
    "1994": [("519.7", "Cybernetics"), ("681.3", "Computer science")],
    "1998": [("519.7", "Cybernetics"), ("004", "Computer science")],
    "2008": [("004", "Computer science. Computing"), ("007", "Cybernetics")],
    "2009": [("004", "Computer science. Computing"), ("007", "Cybernetics")],
}


def baseline(edition: str, skip: str) -> list[tuple[str, str]]:
    rows = []
    for cls, name in CLASS_NAMES.items():
        if cls == skip:
            continue
        rows.append((cls, name))
        for i, n in enumerate(mains(cls + "1", 20), 1):
            desc = f"{name}: topic {i}"
            if edition >= "2008" and i % 10 == 0:
                desc += " (revised)"
            rows.append((n, desc))
    return rows + COMPUTING[edition]


def class_block(cls: str, total: int, special: int) -> list[tuple[str, str]]:
    name = CLASS_NAMES[cls]
    rows = [(cls, name)]
    rows += [(n, f"{name}: subdivision {i}") for i, n in enumerate(mains(cls + "2", total - special - 1), 1)]
    rows += [(n, f"{name}: facet {i}") for i, n in enumerate(specials(cls, special), 1)]
    return rows


COMMON_FORMS = {
    "c": ("={}", "Language {}"),
    "d": ("(0{})", "Form {}"),
    "e": ("({})", "Place {}"),
    "f": ("(={})", "Ethnic grouping {}"),
    "g": ('"{}"', "Time {}"),
    "k": ("-0{}", "Persons and materials {}"),
}
METADATA = [("~a", "Coordination. Addition"), ("~b", "Consecutive extension"), ("~h", "Non-UDC notation")]

COMMON_MIX = {
    "1998": {"e": 3300, "c": 1500, "k": 900, "d": 400, "g": 300, "f": 409},
    "2009": {"e": 7600, "c": 2400, "k": 2300, "d": 420, "g": 350, "f": 489},
}


def common_block(edition: str) -> list[tuple[str, str]]:
    rows = list(METADATA)
    for code, n in COMMON_MIX[edition].items():
        fmt, desc = COMMON_FORMS[code]
        rows += [(fmt.format(i), desc.format(i)) for i in range(1, n + 1)]
    return rows


FRENCH_1905 = {
    "0": "Généralités",
    "1": "Philosophie",
    "2": "Religion. Théologie",
    "3": "Sciences sociales. Droit",
    "4": "Philologie. Linguistique",
    "5": "Sciences mathématiques, physiques et naturelles",
    "6": "Sciences appliquées. Technologie. Médecine",
    "7": "Beaux-arts",
    "8": "Littérature",
    "9": "Histoire et géographie",
}


def ed1905() -> list[tuple[str, str]]:
    rows = [(c, n) for c, n in FRENCH_1905.items()]
    for c in FRENCH_1905:
        for d in "0123456789":
            name = "Bibliographie" if c + d == "01" else f"{FRENCH_1905[c]}: division {c}{d}"
            rows.append((c + d, name))
    # 290 third-level entries spread over the classes
    for i in range(290):
        c, d, e = str(i % 10), str((i // 10) % 10), str(1 + (i // 100))
        rows.append((c + d + e, f"{FRENCH_1905[c]}: section {c}{d}{e}"))
    return rows


def write_tsv(path: Path, label: str, rows: list[tuple[str, str]], note: str) -> None:
    lines = [f"#label:{label}", f"# {note}"] + [f"{n}\t{d}" for n, d in rows]
    path.write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


def write_flat(path: Path, label: str, rows: list[tuple[str, str]], note: str) -> None:
    lines = [f"#label:{label}", f"# {note}"] + [f"{n:<8}  {d}" for n, d in rows]
    path.write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=ROOT / "fixtures")
    out = parser.parse_args().out
    out.mkdir(parents=True, exist_ok=True)

    write_tsv(out / "ed1998.tsv", "1998", baseline("1998", "2") + class_block("2", 935, 239),
              "class 2: 935 records, 239 special auxiliaries")
    write_tsv(out / "ed2008.tsv", "2008", baseline("2008", "2") + class_block("2", 2419, 2168),
              "class 2: 2419 records, 2168 special auxiliaries")
    write_tsv(out / "ed1994.tsv", "1994", baseline("1994", "6") + class_block("6", 9613 + 400, 9613),
              "class 6: 9613 special auxiliary records")
    write_tsv(out / "ed2009.tsv", "2009", baseline("2009", "6") + class_block("6", 9442 + 380, 9442),
              "class 6: 9442 special auxiliary records")
    write_tsv(out / "common1998.tsv", "1998", common_block("1998"), "6812 common auxiliary records")
    write_tsv(out / "common2009.tsv", "2009", common_block("2009"), "13562 common auxiliary records")
    write_flat(out / "ed1905.txt", "1905", ed1905(), "first edition: main classes and second classes")


if __name__ == "__main__":
    main()
