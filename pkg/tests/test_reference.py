from importlib import resources

import pytest
import sympy

from circmax.bounds import u01_bound, upm1_bound
from circmax.engine import SearchConfig
from circmax.reference import (TABLE_RANGE, TableChecksumError, VerificationFailure,
                               load_tables, parse_table_text, table_lookup, table_rows,
                               verify_range, verify_row, word_check)
from circmax.spectral import Alphabet


def table_text():
    return resources.files("circmax").joinpath("data/tables.csv").read_text()


def test_lookup_examples():
    r = table_lookup(19, "01")
    assert (r.max_value, r.ratio, r.lex_least_decimal) == (19531250, "1.0000", 22427)
    r = table_lookup(31, "pm1")
    assert (r.max_value, r.ratio, r.lex_least_decimal) == (68045615234375, "0.6520", 6870231)
    assert table_lookup(54, "01") is None


def test_table_coverage():
    for alphabet, top in TABLE_RANGE.items():
        assert [r.n for r in table_rows(alphabet)] == list(range(1, top + 1))


def test_table_rows_are_decimal_strings():
    for line in table_text().splitlines():
        if line.startswith("#"):
            continue
        alpha, n, value, ratio, dec = line.split(",")
        assert value.isdigit() and dec.isdigit() and "e" not in ratio.lower()


def test_checksum_guards_transcription():
    text = table_text()
    assert len(parse_table_text(text)) == 105
    tampered = text.replace("01,19,19531250,", "01,19,19531251,")
    assert tampered != text
    with pytest.raises(TableChecksumError):
        parse_table_text(tampered)
    with pytest.raises(TableChecksumError):
        parse_table_text("\n".join(l for l in text.splitlines() if not l.startswith("# sha")))


@pytest.mark.parametrize("alphabet", list(Alphabet))
def test_every_word_reproduces_its_value(alphabet):
    for row in table_rows(alphabet):
        ok, detail = word_check(row)
        assert ok, (row, detail)


def test_values_within_bounds():
    for row in load_tables().values():
        U = u01_bound(row.n) if row.alphabet is Alphabet.BINARY01 else upm1_bound(row.n)
        assert 0 <= row.abs_det <= U


def test_n48_factorization():
    row = table_lookup(48, "pm1")
    assert row.lex_least_decimal == 242235026743
    # the tabulated entry is |det| / 2**(n-1)
    assert sympy.factorint(row.max_value) == {2: 49, 3: 6, 5: 12}


def test_n52_factorization():
    row = table_lookup(52, "pm1")
    assert sympy.factorint(row.max_value) == {2: 49, 3: 24, 5: 4}


@pytest.mark.parametrize("alphabet", list(Alphabet))
def test_verify_first_twenty(alphabet):
    report = verify_range(1, 20, alphabet, workers=4)
    assert len(report.rows) == 20 and report.ok
    assert all(r.mode == "search" for r in report.rows)


def test_budget_limits_to_word_check():
    report = verify_range(47, 48, "pm1", budget_seconds=1.0)
    assert report.ok and [r.mode for r in report.rows] == ["word", "word"]
    assert "single-word check only" in report.rows[0].line()


def test_words_only_mode():
    report = verify_range(1, 12, "01", words_only=True)
    assert report.ok and {r.mode for r in report.rows} == {"word"}


def test_failure_is_reported(monkeypatch):
    import dataclasses
    import circmax.reference as ref
    good = table_lookup(9, "01")
    bad = dataclasses.replace(good, lex_least_decimal=61)  # 000111101 is a maximiser but not lex-least
    monkeypatch.setattr(ref, "table_lookup", lambda n, a: bad)
    check = verify_row(bad, config=SearchConfig(parallel=False))
    assert not check.passed and "word 47 != 61" in check.detail
    with pytest.raises(VerificationFailure) as exc:
        verify_range(9, 9, "01")
    assert len(exc.value.report.failures) == 1
    assert not verify_range(9, 9, "01", strict=False).ok


def test_range_checks():
    with pytest.raises(ValueError):
        verify_range(50, 54, "01")
    with pytest.raises(ValueError):
        verify_range(3, 2, "01")
