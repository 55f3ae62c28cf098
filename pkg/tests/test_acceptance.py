"""Acceptance criteria AC1-AC8.

Each test prints one ``[ACn] PASS|FAIL`` line (visible even under output
capture) and then asserts, so a red criterion shows up both ways.
"""

import contextlib
import json
import random
import time

import pytest

from conftest import FIXTURES, GOLDEN
from generators import gen_corpus, gen_expression
from test_aggregate import assert_matches_recount, recount, snapshot_of
from test_charts import arcs_from_svg
from test_ontogeny import check_diff_algebra
from udcevo.aggregate import common_aux_total, compute_stats, time_series
from udcevo.charts import RingChartSpec, emit_ring_svg, ring_arcs
from udcevo.cli import main
from udcevo.mrf_ingest import EditionSnapshot, load_edition
from udcevo.notation import ClassificationMode, parse, render
from udcevo.ontogeny import diff

STD = ClassificationMode.STANDARD
M01 = ClassificationMode.TREAT_01_AS_MAIN


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(ac: str, title: str):
        notes: list[str] = []
        try:
            yield notes
        except BaseException as exc:
            with capsys.disabled():
                print(f"\n[{ac}] FAIL {title}: {type(exc).__name__}: {exc}")
            raise
        with capsys.disabled():
            print(f"\n[{ac}] PASS {title}" + (f" ({'; '.join(notes)})" if notes else ""))

    return run


def test_ac1_class_2_transformation(criterion, capsys):
    with criterion("AC1", "class-2 special auxiliary share 1998 -> 2008") as notes:
        start = time.perf_counter()
        code = main(["stats", str(FIXTURES / "ed1998.tsv"), str(FIXTURES / "ed2008.tsv"), "--json"])
        elapsed = time.perf_counter() - start
        out = capsys.readouterr().out
        assert code == 0
        pct = {e["label"]: e["special_aux_pct"]["2"] for e in json.loads(out)["editions"]}
        assert abs(pct["1998"] - 25.56) <= 0.01, pct
        assert abs(pct["2008"] - 89.62) <= 0.01, pct
        assert round(pct["2008"], 1) == 89.6
        # known inconsistency: 239 of 935 is 25.56 %, not the 14.87 % printed alongside those counts
        assert abs(pct["1998"] - 14.87) > 0.01
        assert elapsed < 1.0, f"{elapsed:.3f}s"
        notes += [f"1998={pct['1998']:.2f}%", f"2008={pct['2008']:.2f}%", "14.87% not reproducible", f"{elapsed:.2f}s"]


def test_ac2_class_6_decline(criterion):
    with criterion("AC2", "class-6 special auxiliary delta 1994 -> 2009") as notes:
        snaps = [load_edition(FIXTURES / f, strict=True)[0] for f in ("ed1994.tsv", "ed2009.tsv")]
        (delta,) = time_series(snaps).deltas()
        assert delta.special_by_class["6"] == -171
        notes.append(f"delta={delta.special_by_class['6']}")


def test_ac3_common_auxiliary_growth(criterion):
    with criterion("AC3", "common auxiliary totals and growth ratio") as notes:
        totals = [
            common_aux_total(compute_stats(load_edition(FIXTURES / f, strict=True)[0]))
            for f in ("common1998.tsv", "common2009.tsv")
        ]
        assert totals == [6812, 13562]
        ratio = totals[1] / totals[0]
        assert abs(ratio - 1.9909) <= 1e-4
        notes += [f"totals={totals}", f"ratio={ratio:.4f}"]


def test_ac4_grammar_round_trip(criterion):
    with criterion("AC4", "parse(render(x)) == x on 10,000 generated notations") as notes:
        rng = random.Random(2024)
        exprs = [gen_expression(rng) for _ in range(10_000)]
        start = time.perf_counter()
        failures = [e for e in exprs if parse(render(e)) != e]
        elapsed = time.perf_counter() - start
        assert not failures, f"{len(failures)} failures, first {render(failures[0])!r}"
        assert elapsed < 5.0, f"{elapsed:.3f}s"
        notes += ["10000/10000", f"{elapsed:.2f}s"]


def test_ac5_aggregation_oracle(criterion):
    with criterion("AC5", "compute_stats equals brute-force recount on 100 snapshots") as notes:
        rng = random.Random(5)
        sizes = [int(10 ** rng.uniform(0, 4)) for _ in range(99)] + [100_000]
        records = 0
        for size in sizes:
            truths = gen_corpus(rng, size)
            snap = snapshot_of(truths)
            records += len(snap)
            for mode in (STD, M01):
                stats = compute_stats(snap, mode)
                assert_matches_recount(stats, recount(truths, mode))
                assert sum(stats.by_main_class.values()) == stats.total
        notes += [f"{len(sizes)} snapshots", f"{records} records", f"largest {max(sizes)}"]


_SHARED = ["Religion", "Natural theology", "Computer science", " Computer  science", "Cybernetics", "Café", "Café"]


def _described(rng: random.Random, notations) -> list[tuple[str, str]]:
    return [(n, rng.choice(_SHARED) if rng.random() < 0.2 else f"topic {n}") for n in notations]


def _mutate(rng: random.Random, a: EditionSnapshot, pool: list[str]) -> EditionSnapshot:
    pairs = []
    for rec in a.records:
        r = rng.random()
        if r < 0.15:
            continue  # exit
        if r < 0.25:
            pairs.append((rec.notation, rng.choice(_SHARED + [rec.description + " (rev.)"])))
        else:
            pairs.append((rec.notation, rec.description))
    present = {n for n, _ in pairs}
    fresh = [n for n in pool if n not in present and n not in a]
    for n in rng.sample(fresh, min(len(fresh), rng.randint(0, 8))):
        # entries, some carrying an exited record's description (a shift)
        donor = rng.choice(a.records).description if a.records and rng.random() < 0.5 else f"new {n}"
        pairs.append((n, donor))
    return EditionSnapshot.from_pairs("b", pairs)


def test_ac6_diff_algebra(criterion):
    with criterion("AC6", "diff algebra on 500 random snapshot pairs") as notes:
        rng = random.Random(6)
        shifts = ambiguous = 0
        for _ in range(500):
            pool = [t.notation for t in gen_corpus(rng, 80) if t.std_class is not None]
            a = EditionSnapshot.from_pairs("a", _described(rng, pool[:50]))
            b = _mutate(rng, a, pool)
            check_diff_algebra(a, b)
            d = diff(a, b)
            shifts += len(d.shifted)
            ambiguous += len(d.ambiguous)
        assert shifts and ambiguous  # the generator exercises both outcomes
        notes += ["500 pairs", f"{shifts} shifts", f"{ambiguous} ambiguities"]


def test_ac7_mode_confinement(criterion):
    with criterion("AC7", "01-as-main mode only moves buckets 0/01 on 100 corpora") as notes:
        rng = random.Random(7)
        moved = 0
        for _ in range(100):
            snap = snapshot_of(gen_corpus(rng, rng.randint(0, 2000)))
            std, m01 = compute_stats(snap, STD), compute_stats(snap, M01)
            for cls in std.by_main_class:
                if cls not in ("0", "01"):
                    assert std.by_main_class[cls] == m01.by_main_class[cls]
                    assert std.special_by_class[cls] == m01.special_by_class[cls]
            assert std.by_main_class["0"] == m01.by_main_class["0"] + m01.by_main_class["01"]
            assert std.special_by_class["0"] == m01.special_by_class["0"] + m01.special_by_class["01"]
            assert (std.total, std.aux_bucket, std.common_by_kind) == (m01.total, m01.aux_bucket, m01.common_by_kind)
            moved += m01.by_main_class["01"]
        assert moved > 0
        notes.append(f"{moved} records moved to 01")


def test_ac8_export_and_ring_determinism(criterion, capsys, tmp_path):
    with criterion("AC8", "golden convert is byte-identical; ring arcs match to 0.1 deg") as notes:
        out = tmp_path / "golden.tsv"
        assert main(["convert", str(FIXTURES / "golden20.tsv"), "-o", str(out)]) == 0
        capsys.readouterr()
        assert out.read_bytes() == (GOLDEN / "golden20.expected.tsv").read_bytes()

        rng = random.Random(8)
        worst = 0.0
        for _ in range(200):
            counts = {str(k): rng.randint(0, 500) for k in range(rng.randint(1, 11))}
            counts[str(rng.randrange(len(counts)))] += 1
            spec = RingChartSpec([("r", counts)])
            total = sum(counts.values())
            start = 0.0
            expected = []
            for key, n in counts.items():
                if n:
                    expected.append((key, start, 360.0 * n / total))
                    start += 360.0 * n / total
            got = arcs_from_svg(emit_ring_svg(spec), spec.size)
            assert [k for k, _, _ in got] == [k for k, _, _ in expected]
            for (_, s0, w0), (_, s1, w1) in zip(expected, got):
                if w0 < 360.0:
                    gap = abs(s0 - s1) % 360.0
                    worst = max(worst, min(gap, 360.0 - gap), abs(w0 - w1))
            assert abs(sum(a.sweep_deg for a in ring_arcs(spec)) - 360.0) <= 1e-6
            assert emit_ring_svg(spec) == emit_ring_svg(RingChartSpec([("r", dict(counts))]))
        assert worst < 0.1, worst
        notes += ["golden bytes equal", f"max angle error {worst:.4f} deg"]
