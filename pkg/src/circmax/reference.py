"""Published maximal-determinant tables and a harness that checks the engine against them."""
from __future__ import annotations

import hashlib
import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Dict, List, Optional, Tuple

from .bounds import format_ratio, u01_bound, upm1_bound
from .engine import SearchConfig, evaluate_word, search
from .oracle import bareiss_det
from .spectral import Alphabet, CirculantSpec
from .words import Word, necklace_count

log = logging.getLogger(__name__)

TABLE_RANGE = {Alphabet.BINARY01: 53, Alphabet.PM1: 52}

# rough seconds per necklace, used only to decide whether a row gets a full search
SECONDS_PER_NECKLACE = {"numba": 2.5e-7, "python": 3e-5}


class TableChecksumError(ValueError):
    pass


class VerificationFailure(AssertionError):
    def __init__(self, report: "VerifyReport"):
        super().__init__(f"{len(report.failures)} table row(s) failed verification")
        self.report = report


@dataclass(frozen=True)
class TableRow:
    n: int
    alphabet: Alphabet
    max_value: int  # |det| for 0/1, |det|/2**(n-1) for +-1
    ratio: str
    lex_least_decimal: int

    @property
    def word(self) -> Word:
        return Word(self.n, self.lex_least_decimal)

    @property
    def abs_det(self) -> int:
        if self.alphabet is Alphabet.PM1:
            return self.max_value << (self.n - 1)
        return self.max_value

    def to_line(self) -> str:
        return f"{self.alphabet.value},{self.n},{self.max_value},{self.ratio},{self.lex_least_decimal}"


def parse_table_text(text: str) -> Dict[Tuple[Alphabet, int], TableRow]:
    data_lines = []
    digest = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("# sha256 "):
            digest = line.split()[2]
        elif not line.startswith("#"):
            data_lines.append(line)
    body = "".join(l + "\n" for l in data_lines)
    if digest is None or hashlib.sha256(body.encode()).hexdigest() != digest:
        raise TableChecksumError("table resource checksum mismatch")
    rows = {}
    for line in data_lines:
        alpha, n, value, ratio, dec = line.split(",")
        row = TableRow(int(n), Alphabet.parse(alpha), int(value), ratio, int(dec))
        rows[(row.alphabet, row.n)] = row
    return rows


@lru_cache(maxsize=None)
def load_tables() -> Dict[Tuple[Alphabet, int], TableRow]:
    text = resources.files("circmax").joinpath("data/tables.csv").read_text()
    return parse_table_text(text)


def table_lookup(n: int, alphabet) -> Optional[TableRow]:
    return load_tables().get((Alphabet.parse(alphabet), n))


def table_rows(alphabet) -> List[TableRow]:
    alphabet = Alphabet.parse(alphabet)
    return sorted((r for (a, _), r in load_tables().items() if a is alphabet),
                  key=lambda r: r.n)


def bound_for(row: TableRow) -> int:
    return u01_bound(row.n) if row.alphabet is Alphabet.BINARY01 else upm1_bound(row.n)


def word_check(row: TableRow) -> Tuple[bool, str]:
    """Re-evaluate the tabulated word and ratio without searching."""
    got = evaluate_word(row.n, row.alphabet, row.lex_least_decimal)
    ratio = format_ratio(row.abs_det, bound_for(row))
    problems = []
    if got != row.abs_det:
        problems.append(f"word gives |det| {got}, table says {row.abs_det}")
    if ratio != row.ratio:
        problems.append(f"ratio {ratio} != {row.ratio}")
    if row.n <= 14:
        d = abs(bareiss_det(CirculantSpec(row.alphabet, row.word).matrix()))
        if d != row.abs_det:
            problems.append(f"dense elimination gives {d}")
    return not problems, "; ".join(problems)


@dataclass
class RowCheck:
    n: int
    alphabet: Alphabet
    mode: str  # "search" or "word"
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        label = "full search" if self.mode == "search" else "single-word check only"
        s = f"{tag} {self.alphabet.value} n={self.n:<3d} [{label}] ({self.seconds:.2f}s)"
        return s + (f": {self.detail}" if self.detail else "")


@dataclass
class VerifyReport:
    rows: List[RowCheck] = field(default_factory=list)

    @property
    def failures(self) -> List[RowCheck]:
        return [r for r in self.rows if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures


def estimated_seconds(n: int, backend: str = "numba") -> float:
    return necklace_count(n) * SECONDS_PER_NECKLACE.get(backend, 3e-5)


def verify_row(row: TableRow, workers: int = 1, budget_seconds: Optional[float] = None,
               config: Optional[SearchConfig] = None, words_only: bool = False) -> RowCheck:
    t0 = time.perf_counter()
    ok, detail = word_check(row)
    mode = "word"
    backend = "numba" if (config is None or config.backend != "python") else "python"
    if not words_only and (budget_seconds is None
                           or estimated_seconds(row.n, backend) / workers <= budget_seconds):
        mode = "search"
        res = search(row.n, row.alphabet, workers, config)
        problems = []
        if res.scaled_det != row.max_value:
            problems.append(f"max {res.scaled_det} != {row.max_value}")
        if res.ratio != row.ratio:
            problems.append(f"ratio {res.ratio} != {row.ratio}")
        if res.lex_least_decimal != row.lex_least_decimal:
            problems.append(f"word {res.lex_least_decimal} != {row.lex_least_decimal}")
        ok = ok and not problems
        detail = "; ".join(x for x in [detail] + problems if x)
    return RowCheck(row.n, row.alphabet, mode, ok, detail, time.perf_counter() - t0)


def verify_range(n_lo: int, n_hi: int, alphabet, workers: int = 1,
                 budget_seconds: Optional[float] = None,
                 config: Optional[SearchConfig] = None, words_only: bool = False,
                 strict: bool = True,
                 progress: Optional[Callable[[RowCheck], None]] = None) -> VerifyReport:
    """Check table rows ``n_lo..n_hi`` against fresh searches.

    Rows whose estimated search time exceeds ``budget_seconds`` (or all rows,
    with ``words_only``) get the single-word check only.  With ``strict`` a
    failing row raises :class:`VerificationFailure` after all rows ran.
    """
    alphabet = Alphabet.parse(alphabet)
    top = TABLE_RANGE[alphabet]
    if not 1 <= n_lo <= n_hi <= top:
        raise ValueError(f"range {n_lo}..{n_hi} outside the table (1..{top})")
    report = VerifyReport()
    for n in range(n_lo, n_hi + 1):
        check = verify_row(table_lookup(n, alphabet), workers, budget_seconds, config,
                           words_only)
        log.info(check.line())
        report.rows.append(check)
        if progress:
            progress(check)
    if strict and not report.ok:
        raise VerificationFailure(report)
    return report
