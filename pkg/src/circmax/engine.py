"""Maximal-determinant search over binary necklaces.

The necklaces of length ``n`` are cut into segments by sampling, each segment
is enumerated in lexicographic order while the circulant eigenvalues are kept
up to date incrementally, and the per-segment maxima are merged.
"""
from __future__ import annotations

import functools
import json
import logging
import math
import multiprocessing
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernel
from .bounds import format_ratio, u01_bound, upm1_bound
from .modfield import (BoundViolation, FieldContext, det_residue,
                       eigen_init, eigen_update, lift_residue)
from .spectral import Alphabet, CirculantSpec
from .words import (Word, _successor_bits, is_necklace, iter_necklaces, necklace_count,
                    random_necklace)

log = logging.getLogger(__name__)

DEFAULT_SAMPLES_PER_WORKER = 4000


class SearchError(RuntimeError):
    pass


class CandidateCountMismatch(SearchError):
    pass


@dataclass(frozen=True)
class Segment:
    """Necklaces ``w`` with ``start <= w < end``; ``end=None`` runs through 1...1."""
    start: Word
    end: Optional[Word] = None

    def __post_init__(self):
        if self.end is not None and self.end < self.start:
            raise ValueError("segment end precedes its start")

    @property
    def empty(self) -> bool:
        return self.end is not None and self.end == self.start


@dataclass(frozen=True)
class SearchResult:
    n: int
    alphabet: Alphabet
    max_abs_det: int
    lex_least_word: Word
    upper_bound: int
    candidates_examined: int
    prime: Optional[int] = None
    achievers: Tuple[Word, ...] = ()

    @property
    def ratio(self) -> str:
        return format_ratio(self.max_abs_det, self.upper_bound)

    @property
    def scaled_det(self) -> int:
        """|det| divided by ``2**(n-1)`` for the +-1 alphabet, else |det|."""
        if self.alphabet is Alphabet.PM1:
            q, r = divmod(self.max_abs_det, 1 << (self.n - 1))
            assert r == 0
            return q
        return self.max_abs_det

    @property
    def lex_least_decimal(self) -> int:
        return self.lex_least_word.value

    def same_outcome(self, other: "SearchResult") -> bool:
        return (self.n, self.alphabet, self.max_abs_det, self.lex_least_word,
                self.upper_bound, self.candidates_examined) == (
                other.n, other.alphabet, other.max_abs_det, other.lex_least_word,
                other.upper_bound, other.candidates_examined)


@dataclass
class SearchConfig:
    sample_size: Optional[int] = None
    epsilon: Optional[float] = None
    seed: int = 0
    backend: str = "auto"  # "auto" | "numba" | "python"
    keep_all: bool = False
    debug: bool = False
    checkpoint: Optional[str] = None
    parallel: bool = True


def sample_size_for(P: int, epsilon: Optional[float] = None) -> int:
    """Number of sampled necklaces for ``P`` segments (``4000 P`` by default)."""
    if epsilon is None:
        return DEFAULT_SAMPLES_PER_WORKER * P
    if P == 1:
        return 1
    return max(P, math.ceil(2 * P * math.log(P) / epsilon ** 2))


def sample_partition(n: int, P: int, T: int, rng: random.Random) -> List[Segment]:
    """Split the necklace order into ``P`` segments at sampled quantiles.

    Segment 0 starts at 0...0 and the last one runs through 1...1.  Coinciding
    sample boundaries produce empty segments, so exactly ``P`` are returned.
    """
    if P < 1:
        raise ValueError("need at least one worker")
    if T < P:
        raise ValueError("sample size must be at least the worker count")
    if n < 1:
        raise ValueError("n must be positive")
    if P == 1:
        return [Segment(Word.zeros(n))]
    if n == 1:
        one = Word.ones(1)
        return [Segment(Word.zeros(1), one)] + [Segment(one, one)] * (P - 2) + [Segment(one)]
    sample = sorted(random_necklace(n, rng) for _ in range(T))
    cuts = [sample[(q * T) // P] for q in range(1, P)]
    starts = [Word.zeros(n)] + cuts
    ends: List[Optional[Word]] = cuts + [None]
    return [Segment(s, e) for s, e in zip(starts, ends)]


def segment_sizes(n: int, segments: Sequence[Segment]) -> List[int]:
    """Count the necklaces in each segment (full enumeration, cached per ``n``)."""
    values = _necklace_values(n)
    sizes = []
    for seg in segments:
        lo = int(np.searchsorted(values, seg.start.value))
        hi = len(values) if seg.end is None else int(np.searchsorted(values, seg.end.value))
        sizes.append(hi - lo)
    return sizes


@functools.lru_cache(maxsize=4)
def _necklace_values(n: int) -> np.ndarray:
    return np.fromiter((w.value for w, _ in iter_necklaces(n)), dtype=np.uint64,
                       count=necklace_count(n))


def max_relative_deviation(sizes: Sequence[int]) -> float:
    mu = sum(sizes) / len(sizes)
    return max(s / mu - 1 for s in sizes)


# ---------------------------------------------------------------------------
# per-search field setup

@dataclass(frozen=True)
class SearchPlan:
    n: int
    alphabet: Alphabet
    upper_bound: int
    # bound on the quantity actually lifted: |det| for 0/1, |det|/2**(n-1) for +-1
    lift_bound: int
    ctx: FieldContext
    scale_inv: int
    backend: str
    table: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    mont: Optional[Tuple[int, int, int]] = None  # (pinv, mont_one, scale_mont)

    @property
    def shift(self) -> int:
        return self.n - 1 if self.alphabet is Alphabet.PM1 else 0


def make_plan(n: int, alphabet: Alphabet, backend: str = "auto",
              rng: Optional[random.Random] = None) -> SearchPlan:
    alphabet = Alphabet.parse(alphabet)
    if not 1 <= n <= 64:
        raise ValueError("order must be between 1 and 64")
    if alphabet is Alphabet.BINARY01:
        U = u01_bound(n)
        lift = U
        shift = 0
    else:
        U = upm1_bound(n)
        shift = n - 1
        lift = U >> shift
    ctx = FieldContext.for_bound(n, max(lift, 1), rng or random.Random(0))
    p = ctx.p
    scale_inv = pow(1 << shift, -1, p)
    if backend == "auto":
        backend = "numba" if _kernel.available() and p < _kernel.MAX_PRIME else "python"
    if backend == "numba":
        if not _kernel.available():
            raise SearchError("numba backend requested but numba is not importable")
        if p >= _kernel.MAX_PRIME:
            raise SearchError(f"prime {p} too large for the compiled backend")
        m = _kernel.Montgomery(p)
        table = np.array([[m.to_mont(x) for x in row] for row in ctx.power_table],
                         dtype=np.uint64)
        return SearchPlan(n, alphabet, U, lift, ctx, scale_inv, backend, table,
                          (m.pinv, m.to_mont(1), m.to_mont(scale_inv)))
    if backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return SearchPlan(n, alphabet, U, lift, ctx, scale_inv, backend)


def _partial(plan: SearchPlan, best_abs: int, best_word: Optional[Word], count: int,
             achievers: Sequence[Word] = ()) -> SearchResult:
    n = plan.n
    if best_word is None:
        # empty segment
        return SearchResult(n, plan.alphabet, -1, Word.ones(n), plan.upper_bound, 0,
                            plan.ctx.p, ())
    return SearchResult(n, plan.alphabet, best_abs << plan.shift, best_word,
                        plan.upper_bound, count, plan.ctx.p, tuple(achievers))


def _search_segment_python(seg: Segment, plan: SearchPlan, keep_all: bool,
                           debug: bool) -> SearchResult:
    ctx = plan.ctx
    p = ctx.p
    n = plan.n
    state = eigen_init(CirculantSpec(plan.alphabet, seg.start), ctx)
    bits = list(seg.start.bits)
    end = seg.end.value if seg.end is not None else None
    best, best_w, count = -1, None, 0
    achievers: List[Word] = []
    while True:
        w = state.word
        if end is not None and w.value >= end:
            break
        d = abs(lift_residue(det_residue(state) * plan.scale_inv % p, p, plan.lift_bound))
        count += 1
        if d > best:
            best, best_w = d, w
            achievers = [w] if keep_all else []
        elif keep_all and d == best:
            achievers.append(w)
        if debug and count % 1024 == 0:
            fresh = eigen_init(CirculantSpec(plan.alphabet, w), ctx)
            if fresh.lam != state.lam:
                raise SearchError(f"incremental eigenvalues drifted at {w}")
        old = list(bits)
        changed = _successor_bits(bits)
        if changed is None:
            break
        changes = [(k, old[k], bits[k]) for k in range(changed, n) if old[k] != bits[k]]
        eigen_update(state, changes)
    return _partial(plan, best, best_w, count, achievers)


def _search_segment_numba(seg: Segment, plan: SearchPlan, keep_all: bool,
                          debug: bool) -> SearchResult:
    n = plan.n
    start = np.array(seg.start.bits, dtype=np.uint8)
    has_end = seg.end is not None
    end_value = seg.end.value if has_end else 0
    pinv, one, scale = plan.mont
    u64 = np.uint64
    args = (start, np.int64(end_value), has_end, plan.table, u64(plan.ctx.p), u64(pinv),
            u64(one), u64(scale), np.int64(plan.lift_bound), plan.alphabet is Alphabet.PM1)
    buf = np.zeros(0, dtype=np.int64)
    status, best, best_v, count, _ = _kernel.scan_segment(*args, np.int64(-1), buf, debug)
    _raise_status(status, n, best_v, plan)
    if count == 0:
        return _partial(plan, -1, None, 0)
    achievers: Tuple[Word, ...] = ()
    if keep_all:
        size = 64
        while True:
            buf = np.zeros(size, dtype=np.int64)
            status, _, _, _, k = _kernel.scan_segment(*args, np.int64(best), buf, False)
            if status == _kernel.COLLECT_OVERFLOW:
                size *= 8
                continue
            _raise_status(status, n, best_v, plan)
            achievers = tuple(Word(n, int(v)) for v in buf[:k])
            break
    return _partial(plan, int(best), Word(n, int(best_v)), int(count), achievers)


def _raise_status(status: int, n: int, value: int, plan: SearchPlan) -> None:
    if status == _kernel.BOUND_VIOLATION:
        raise BoundViolation(f"lifted determinant above bound at word {Word(n, int(value))} "
                             f"(p = {plan.ctx.p})")
    if status == _kernel.STATE_MISMATCH:
        raise SearchError("incremental eigenvalues drifted from a fresh evaluation")
    if status != _kernel.OK:
        raise SearchError(f"kernel status {status}")


def search_segment(seg: Segment, plan: SearchPlan, keep_all: bool = False,
                   debug: bool = False) -> SearchResult:
    """Best |det| over the necklaces of one segment."""
    if not is_necklace(seg.start):
        raise ValueError(f"segment start {seg.start} is not a necklace")
    if seg.empty:
        return _partial(plan, -1, None, 0)
    if plan.backend == "numba":
        return _search_segment_numba(seg, plan, keep_all, debug)
    return _search_segment_python(seg, plan, keep_all, debug)


def merge_results(parts: Sequence[SearchResult], require_complete: bool = True) -> SearchResult:
    """Combine segment results: larger |det| wins, ties go to the smaller word."""
    if not parts:
        raise ValueError("nothing to merge")
    head = parts[0]
    for r in parts[1:]:
        if (r.n, r.alphabet, r.upper_bound) != (head.n, head.alphabet, head.upper_bound):
            raise ValueError("cannot merge results of different searches")
    total = sum(r.candidates_examined for r in parts)
    if require_complete and total != necklace_count(head.n):
        raise CandidateCountMismatch(
            f"examined {total} necklaces, expected {necklace_count(head.n)}")
    live = [r for r in parts if r.candidates_examined > 0]
    if not live:
        raise ValueError("all parts are empty")
    best = max(r.max_abs_det for r in live)
    winners = [r for r in live if r.max_abs_det == best]
    word = min(r.lex_least_word for r in winners)
    achievers = tuple(sorted(set(w for r in winners for w in r.achievers)))
    return replace(head, max_abs_det=best, lex_least_word=word,
                   candidates_examined=total, achievers=achievers)


# ---------------------------------------------------------------------------
# checkpoints

def _segment_key(seg: Segment) -> Tuple[str, Optional[str]]:
    return str(seg.start.value), (None if seg.end is None else str(seg.end.value))


class Checkpoint:
    """Append-only JSON-lines record of completed segments."""

    def __init__(self, path: str):
        self.path = path

    def load(self, n: int, alphabet: Alphabet) -> Dict[Tuple[str, Optional[str]], dict]:
        done = {}
        if not os.path.exists(self.path):
            return done
        with open(self.path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if rec["n"] == n and rec["alphabet"] == alphabet.value:
                    done[(rec["start"], rec["end"])] = rec
        return done

    def append(self, seg: Segment, part: SearchResult) -> None:
        start, end = _segment_key(seg)
        rec = {
            "n": part.n,
            "alphabet": part.alphabet.value,
            "start": start,
            "end": end,
            "max_abs_det": str(part.max_abs_det),
            "lex_least_decimal": str(part.lex_least_word.value),
            "candidates": str(part.candidates_examined),
            "achievers": [str(w.value) for w in part.achievers],
        }
        with open(self.path, "a") as fh:
            fh.write(json.dumps(rec) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    @staticmethod
    def to_result(rec: dict, plan: SearchPlan) -> SearchResult:
        n = plan.n
        return SearchResult(n, plan.alphabet, int(rec["max_abs_det"]),
                            Word(n, int(rec["lex_least_decimal"])), plan.upper_bound,
                            int(rec["candidates"]), plan.ctx.p,
                            tuple(Word(n, int(v)) for v in rec.get("achievers", [])))


# ---------------------------------------------------------------------------

def _worker(args):
    seg, plan, keep_all, debug = args
    return search_segment(seg, plan, keep_all, debug)


def search(n: int, alphabet, workers: int = 1,
           config: Optional[SearchConfig] = None) -> SearchResult:
    """Maximal |det| over all binary circulants of order ``n``."""
    config = config or SearchConfig()
    alphabet = Alphabet.parse(alphabet)
    if workers < 1:
        raise ValueError("need at least one worker")
    rng = random.Random(config.seed)
    plan = make_plan(n, alphabet, config.backend, rng)
    T = config.sample_size or sample_size_for(workers, config.epsilon)
    segments = sample_partition(n, workers, T, rng)

    ckpt = Checkpoint(config.checkpoint) if config.checkpoint else None
    done = ckpt.load(n, alphabet) if ckpt else {}
    parts: List[Optional[SearchResult]] = [None] * len(segments)
    todo = []
    for i, seg in enumerate(segments):
        rec = done.get(_segment_key(seg))
        if rec is not None:
            parts[i] = Checkpoint.to_result(rec, plan)
        else:
            todo.append(i)
    log.info("n=%d %s: %d segments (%d pending), p=%d, backend=%s",
             n, alphabet.value, len(segments), len(todo), plan.ctx.p, plan.backend)

    jobs = [(segments[i], plan, config.keep_all, config.debug) for i in todo]
    if config.parallel and len(jobs) > 1:
        if plan.backend == "numba":
            # compile (or load) the kernel once here so forked workers inherit it
            search_segment(Segment(Word.ones(n)), plan, config.keep_all, config.debug)
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs)), mp_context=ctx) as ex:
            results = ex.map(_worker, jobs)
            for i, part in zip(todo, results):
                parts[i] = part
                if ckpt:
                    ckpt.append(segments[i], part)
    else:
        for i, job in zip(todo, jobs):
            parts[i] = _worker(job)
            if ckpt:
                ckpt.append(segments[i], parts[i])
    merged = merge_results(parts)
    if alphabet is Alphabet.PM1:
        assert merged.max_abs_det % (1 << (n - 1)) == 0
    return merged


def evaluate_word(n: int, alphabet, decimal: int) -> int:
    """Exact |det| of the circulant whose first row encodes ``decimal``."""
    plan = make_plan(n, Alphabet.parse(alphabet), backend="python")
    spec = CirculantSpec(plan.alphabet, Word(n, decimal))
    p = plan.ctx.p
    r = det_residue(eigen_init(spec, plan.ctx)) * plan.scale_inv % p
    return abs(lift_residue(r, p, plan.lift_bound)) << plan.shift
