import pytest

from kvis.memory import BudgetExceeded, CounterRow, ReadOnlyView, WorkspaceMeter, WriteOnlySink


def test_view_counts_reads_and_is_read_only():
    v = ReadOnlyView([1, 2, 3])
    assert v[0] + v[2] == 4 and v.reads == 2
    list(v)
    assert v.reads == 5
    assert v.peek(1) == 2 and v.reads == 5
    with pytest.raises(TypeError):
        v[0] = 5


def test_meter_peak_and_strict():
    m = WorkspaceMeter(10, strict=True)
    with m.hold(6):
        with m.hold(4):
            assert m.current_words == 10
        with pytest.raises(BudgetExceeded):
            m.charge(5, "x")
    assert m.current_words == 0 and m.peak_words == 10
    loose = WorkspaceMeter(1)
    loose.charge(5)
    assert loose.peak_words == 5


def test_sink_is_append_only():
    s = WriteOnlySink()
    s.emit(1)
    s.emit(2)
    assert s.count == 2 and s.records() == [1, 2]
    s.records().append(3)
    assert s.count == 2


def test_counter_row_csv():
    row = CounterRow("const", 8, 0, 1, 2, 100, 38, 4)
    assert CounterRow.header() == ["algo", "n", "k", "s", "c", "reads", "peak_words", "emitted"]
    assert row.to_csv() == "const,8,0,1,2,100,38,4\n"
