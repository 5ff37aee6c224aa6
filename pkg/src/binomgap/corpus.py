"""The embedded solution corpus for binom(n,k) = binom(m,l) + d, with verifiers."""
from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from typing import Dict, Iterable, List, Optional, Tuple

from .binomials import binom

CORPUS_ENV_VAR = "BINOMGAP_CORPUS"

# Named infinite families carried alongside the finite records.  The first is
# checked by verify_fibonacci_family, the other two by the curve module's
# parametric-family verifier.
FAMILY_NAMES = (
    "equal-fibonacci",
    "quintic-square-family",
    "quintic-square-family-shifted",
)


@dataclass(frozen=True)
class SolutionRecord:
    """One asserted identity binom(n,k) = binom(m,l) + d."""
    k: int
    l: int
    d: int
    n: int
    m: int
    source: str = ""

    def key(self) -> Tuple[int, int, int, int, int]:
        return (self.k, self.l, self.d, self.n, self.m)


@dataclass(frozen=True)
class Corpus:
    records: Tuple[SolutionRecord, ...]
    families: Tuple[str, ...] = FAMILY_NAMES


def verify_solution(r: SolutionRecord) -> bool:
    """Exact check of the record's identity."""
    return binom(r.n, r.k) == binom(r.m, r.l) + r.d


def parse_corpus(text: str) -> List[SolutionRecord]:
    """Parse the line-oriented corpus format: k,l,d,n,m,source per line;
    blank lines and '#' comments ignored."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 6:
            raise ValueError(f"line {lineno}: expected 6 fields, got {len(parts)}")
        k, l, d, n, m = (int(p) for p in parts[:5])
        out.append(SolutionRecord(k=k, l=l, d=d, n=n, m=m, source=parts[5].strip()))
    return out


def default_corpus_text() -> str:
    return resources.files("binomgap").joinpath("data/solutions.txt").read_text()


def load_corpus(path: Optional[str] = None) -> Corpus:
    """Load records from `path`, else from the environment override, else
    from the packaged data file."""
    if path is None:
        path = os.environ.get(CORPUS_ENV_VAR)
    text = open(path).read() if path else default_corpus_text()
    return Corpus(records=tuple(parse_corpus(text)))


@dataclass(frozen=True)
class CorpusReport:
    results: Tuple[Tuple[SolutionRecord, bool], ...]
    counts: Tuple[Tuple[str, int], ...]

    @property
    def all_ok(self) -> bool:
        return all(ok for _, ok in self.results)

    @property
    def failures(self) -> List[SolutionRecord]:
        return [r for r, ok in self.results if not ok]


def verify_corpus(records: Iterable[SolutionRecord]) -> CorpusReport:
    """Verify every record; failing records are reported, never dropped."""
    results = tuple((r, verify_solution(r)) for r in records)
    counts: Dict[str, int] = {}
    for r, _ in results:
        counts[r.source] = counts.get(r.source, 0) + 1
    return CorpusReport(results=results, counts=tuple(sorted(counts.items())))


def fibonacci(j: int) -> int:
    """F_1 = F_2 = 1."""
    if j < 1:
        raise ValueError("index must be positive")
    a, b = 0, 1
    for _ in range(j - 1):
        a, b = b, a + b
    return b


def verify_fibonacci_family(i: int) -> bool:
    """Member i of the equal-binomial family with Fibonacci-product indices:
    binom(F(2i+2)F(2i+3), F(2i)F(2i+3)) = binom(F(2i+2)F(2i+3)-1, F(2i)F(2i+3)+1),
    checked exactly."""
    if i < 1:
        raise ValueError("i must be positive")
    n = fibonacci(2 * i + 2) * fibonacci(2 * i + 3)
    k = fibonacci(2 * i) * fibonacci(2 * i + 3)
    return binom(n, k) == binom(n - 1, k + 1)
