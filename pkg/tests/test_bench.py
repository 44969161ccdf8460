import csv
import io

import pytest

from kvis.bench import Grid, bench, cells, parse_grid


def test_parse_grid():
    g = parse_grid(["n=64,128", "s=1,4", "k=0,2", "profile=comb", "reps=2"])
    assert g == Grid((64, 128), (1, 4), (0, 2), "comb", 2)
    with pytest.raises(ValueError):
        parse_grid(["profile=spiral"])
    with pytest.raises(ValueError):
        parse_grid(["n"])


def test_cells_order_and_const_once():
    cs = cells(Grid((64,), (1, 4), (0,), "star", 1))
    assert [c[3:5] for c in cs] == [("const", 1), ("batch-all", 1), ("batch-all", 4), ("batch-crit", 1), ("batch-crit", 4)]


def test_reads_fall_with_s():
    text = bench(Grid((256,), (1, 4, 16), (0,), "comb", 1), algos=("batch-all",))
    rows = list(csv.DictReader(io.StringIO(text)))
    reads = [int(r["reads"]) for r in rows]
    assert reads == sorted(reads, reverse=True) and len(set(reads)) == 3


def test_reps_identical():
    rows = list(csv.DictReader(io.StringIO(bench(Grid((64,), (2,), (2,), "random-simple", 2), seed=3))))
    pairs = [rows[i : i + 2] for i in range(0, len(rows), 2)]
    assert all((a["reads"], a["peak_words"]) == (b["reads"], b["peak_words"]) for a, b in pairs)


def test_timing_column():
    rows = list(csv.DictReader(io.StringIO(bench(Grid((32,), (1,), (0,), "star", 1), algos=("const",), timing=True))))
    assert int(rows[0]["wall_ns"]) > 0
