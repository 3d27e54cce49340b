"""Non-negativity scanning for inverted independence series.

For a hypergraph G with no special vertices, the series 1/I(G, -x) is
conjectured to have non-negative coefficients exactly when every edge has
even size.  This module checks single hypergraphs within an explicit
truncation window, produces the odd-edge witness coefficient, and runs
exhaustive scans over all simple hypergraphs on up to n vertices, streaming
verdicts to a resumable JSON-lines report.

A verdict only certifies coefficients inside its truncation window; "nonneg"
means no negative coefficient was found up to the window, not a proof for the
full series.  A negative finding, by contrast, is final: it persists under
any larger window, and each one is re-verified through an independent
counting formula before it is reported.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .budget import charge
from .chromatic import count_Pk_mult
from .errors import VerificationError
from .hypergraph import Hypergraph, hypergraph, independent_sets, is_even
from .series import TruncatedSeries, fraction_to_str, series_inverse

# Dedekind numbers: antichain counts over the full power set of [n], an upper
# bound for the number of simple hypergraphs on [n] (whose edge families are
# antichains of sets of size >= 2)
_ANTICHAIN_BOUNDS = [2, 3, 6, 20, 168, 7581, 7828354, 2414682040998]


class CheckResult(NamedTuple):
    nonneg: bool
    neg_at: Optional[tuple[int, ...]]
    coeff: Optional[Fraction]


def _signed_independence_series(g: Hypergraph, window: Sequence[int]) -> TruncatedSeries:
    """I(G, -x) inside the truncation window."""
    terms = {}
    for s in independent_sets(g):
        e = tuple(1 if v in s else 0 for v in range(1, g.n + 1))
        terms[e] = Fraction(-1 if len(s) % 2 else 1)
    return TruncatedSeries(g.n, tuple(int(v) for v in window), terms)


def inverse_nonneg_check(g: Hypergraph, window: Sequence[int]) -> CheckResult:
    """Scan every coefficient of 1/I(G, -x) up to the window.

    Returns the non-negativity flag together with the lexicographically
    first negative exponent and its coefficient, if one exists.  A found
    negative is re-verified against the alternating block-count sum before
    being reported.
    """
    if g.special:
        raise ValueError("non-negativity check needs a hypergraph with no special vertices")
    window = tuple(int(v) for v in window)
    if len(window) != g.n or any(v < 0 for v in window):
        raise ValueError(f"bad truncation window {window} for n={g.n}")
    inv = series_inverse(_signed_independence_series(g, window))
    for e in sorted(inv.terms):
        c = inv.terms[e]
        if c < 0:
            _recheck_negative(g, e, c)
            return CheckResult(False, e, c)
    return CheckResult(True, None, None)


def _recheck_negative(g: Hypergraph, m: tuple[int, ...], claimed: Fraction) -> None:
    """Independent recount of one inverse coefficient: the alternating sum
    of ordered block-partition counts, carrying the sign of |m|."""
    total = sum(v for v in m)
    acc = 1 if total == 0 else 0
    for k in range(1, total + 1):
        acc += (-1) ** k * count_Pk_mult(g, m, k)
    value = Fraction((-1) ** total * acc)
    if value != claimed:
        raise VerificationError(
            f"inverse coefficient at {m} is {claimed} by series inversion "
            f"but {value} by block counting"
        )


def odd_edge_witness(g: Hypergraph) -> Optional[tuple[tuple[int, ...], int]]:
    """The obstruction certificate for hypergraphs with an odd edge.

    Takes the first odd-size edge e (edges are kept sorted by size then
    lexicographically), restricts to that single edge, and returns the
    inverse coefficient at exponent 2 on each of its vertices, which equals
    2 + (-2)^|e| and is negative for odd |e| >= 3.  Returns None when every
    edge has even size.
    """
    e = next((e for e in g.edges if len(e) % 2), None)
    if e is None:
        return None
    r = len(e)
    h = hypergraph(r, [tuple(range(1, r + 1))])
    inv = series_inverse(_signed_independence_series(h, (2,) * r))
    value = inv.terms.get((2,) * r, Fraction(0))
    assert value.denominator == 1
    return e, int(value)


# ---------------------------------------------------------------------------
# exhaustive enumeration and scanning
# ---------------------------------------------------------------------------


def enumerate_simple_hypergraphs(n: int) -> Iterator[Hypergraph]:
    """All simple hypergraphs on the vertex set {1..n}: every family of
    pairwise incomparable edges of size >= 2, including the edgeless one.
    Deterministic order."""
    if n < 0:
        raise ValueError("need n >= 0")
    candidates = []
    for size in range(2, n + 1):
        candidates.extend(itertools.combinations(range(1, n + 1), size))
    candidates.sort(key=lambda e: (len(e), e))
    sets = [frozenset(e) for e in candidates]

    def rec(idx: int, chosen: list[int]) -> Iterator[Hypergraph]:
        if idx == len(candidates):
            yield hypergraph(n, [candidates[i] for i in chosen])
            return
        yield from rec(idx + 1, chosen)
        s = sets[idx]
        if all(not (sets[i] <= s or s <= sets[i]) for i in chosen):
            chosen.append(idx)
            yield from rec(idx + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def canonical_form(g: Hypergraph) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Minimal relabeling of the edge family over all vertex permutations.
    Two hypergraphs on the same number of vertices are isomorphic exactly
    when their canonical forms coincide."""
    if g.special:
        raise ValueError("canonical form is defined for hypergraphs with no special vertices")
    best = None
    for perm in itertools.permutations(range(1, g.n + 1)):
        edges = tuple(
            sorted(
                (tuple(sorted(perm[v - 1] for v in e)) for e in g.edges),
                key=lambda e: (len(e), e),
            )
        )
        if best is None or edges < best:
            best = edges
    return (g.n, best if best is not None else ())


class Verdict(NamedTuple):
    canon: tuple[int, tuple[tuple[int, ...], ...]]
    even: bool
    nonneg: bool
    neg_at: Optional[tuple[int, ...]]
    coeff: Optional[Fraction]


def verdict_to_json_line(v: Verdict) -> str:
    obj = {
        "canon": [v.canon[0], [list(e) for e in v.canon[1]]],
        "even": v.even,
        "nonneg": v.nonneg,
        "neg_at": list(v.neg_at) if v.neg_at is not None else None,
        "coeff": fraction_to_str(v.coeff) if v.coeff is not None else None,
    }
    return json.dumps(obj, separators=(",", ":"))


def _canon_key(canon: tuple[int, tuple[tuple[int, ...], ...]]) -> str:
    return json.dumps([canon[0], [list(e) for e in canon[1]]], separators=(",", ":"))


def _recorded_keys(path: Path) -> set[str]:
    keys = set()
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                keys.add(json.dumps(obj["canon"], separators=(",", ":")))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValueError(f"corrupt report line in {path}: {line[:80]}") from exc
    return keys


def _work(item: tuple[int, tuple[tuple[int, ...], ...], int]) -> tuple[bool, bool, Optional[tuple[int, ...]], Optional[str]]:
    n, edges, m_per_var = item
    g = hypergraph(n, edges)
    res = inverse_nonneg_check(g, (m_per_var,) * n)
    coeff = fraction_to_str(res.coeff) if res.coeff is not None else None
    return (is_even(g), res.nonneg, res.neg_at, coeff)


@dataclass
class ScanReport:
    n_max: int
    m_per_var: int
    dedup: bool
    verdicts: list[Verdict] = field(default_factory=list)
    even_total: int = 0
    odd_total: int = 0
    even_failures: list[str] = field(default_factory=list)
    odd_passes: list[str] = field(default_factory=list)
    skipped: int = 0
    elapsed: float = 0.0

    @property
    def total(self) -> int:
        return len(self.verdicts)

    def summary(self) -> str:
        return (
            f"scanned {self.total} hypergraphs (n<={self.n_max}, window {self.m_per_var} "
            f"per vertex, dedup={'on' if self.dedup else 'off'}, {self.skipped} skipped): "
            f"{self.even_total} even all nonneg apart from {len(self.even_failures)}, "
            f"{self.odd_total} odd-edged all negative apart from {len(self.odd_passes)}; "
            f"{self.elapsed:.1f}s"
        )


def scan_hypergraphs(
    n_max: int,
    m_per_var: int = 2,
    dedup: bool = True,
    out: str | Path | None = None,
    resume: bool = False,
    workers: int = 1,
) -> ScanReport:
    """Check 1/I(G, -x) >= 0 within the window for every simple hypergraph
    on up to n_max vertices.

    Verdicts stream to ``out`` as JSON lines when given; with ``resume`` the
    canonical forms already recorded there are skipped, so interrupted scans
    can continue by rerunning the same command.  ``dedup`` skips isomorphic
    duplicates inside the run.  ``workers`` > 1 distributes the per-
    hypergraph checks over a process pool; the verdict order stays the
    deterministic enumeration order either way.
    """
    if n_max < 0:
        raise ValueError("need n_max >= 0")
    if m_per_var < 0:
        raise ValueError("need m_per_var >= 0")
    if workers < 1:
        raise ValueError("need workers >= 1")
    if resume and out is None:
        raise ValueError("resume needs an output file")
    if n_max >= len(_ANTICHAIN_BOUNDS):
        charge(1 << 62, f"hypergraph scan up to n={n_max}")
    charge(
        sum(_ANTICHAIN_BOUNDS[n] for n in range(1, n_max + 1)),
        f"hypergraph scan up to n={n_max}",
    )

    start = time.monotonic()
    report = ScanReport(n_max=n_max, m_per_var=m_per_var, dedup=dedup)

    recorded: set[str] = set()
    out_path = Path(out) if out is not None else None
    if out_path is not None and resume and out_path.exists():
        recorded = _recorded_keys(out_path)

    items: list[tuple[int, tuple[tuple[int, ...], ...], int]] = []
    canons: list[tuple[int, tuple[tuple[int, ...], ...]]] = []
    seen: set[str] = set()
    for n in range(1, n_max + 1):
        for g in enumerate_simple_hypergraphs(n):
            canon = canonical_form(g)
            key = _canon_key(canon)
            if key in recorded:
                report.skipped += 1
                continue
            if dedup:
                if key in seen:
                    continue
                seen.add(key)
            items.append((canon[0], canon[1], m_per_var))
            canons.append(canon)

    if workers == 1:
        results = map(_work, items)
    else:
        pool = Pool(workers)
        results = pool.imap(_work, items, chunksize=16)

    fh = out_path.open("a") if out_path is not None else None
    try:
        for canon, (even, nonneg, neg_at, coeff_str) in zip(canons, results):
            coeff = Fraction(coeff_str) if coeff_str is not None else None
            v = Verdict(canon, even, nonneg, neg_at, coeff)
            report.verdicts.append(v)
            if even:
                report.even_total += 1
                if not nonneg:
                    report.even_failures.append(_canon_key(canon))
            else:
                report.odd_total += 1
                if nonneg:
                    report.odd_passes.append(_canon_key(canon))
            if fh is not None:
                fh.write(verdict_to_json_line(v) + "\n")
    finally:
        if fh is not None:
            fh.close()
        if workers > 1:
            pool.close()
            pool.join()

    report.elapsed = time.monotonic() - start
    return report
