"""End-to-end reproduction scenarios for the library's headline results.

Each scenario re-runs one computation from scratch and compares the outcome
against curated expected data: the bundled solution records, the reference
congruence table, and the frozen constants below.  The ``binomgap
reproduce-all`` command drives `run_all` and prints one line per scenario.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Dict, Optional, Sequence, Set, Tuple

from .binomials import binom
from .corpus import load_corpus, verify_corpus, verify_fibonacci_family
from .curves import (
    CURVE_PAIRS,
    bounded_search,
    bounded_search_25,
    curve_spec,
    d66_records,
    verify_all_transforms,
    verify_parametric_family,
)
from .equalindex import collision_search, solve_equal_index
from .intmath import is_perfect_square, primes_up_to
from .polyidentity import KNOWN_IDENTITIES, solve_k22, verify_poly_identity
from .sieve import (
    SieveQuery,
    congruence_solvable,
    pell_obstruction_applies,
    pell_obstruction_modulus,
    scan_unsolvable,
)

ScanKey = Tuple[int, int, int]
Residues = Tuple[int, ...]

#: Rows of the curated reference table that disagree with direct computation,
#: keyed by (k, l, p); the value is (curated residues, computed residues).
#: Each entry has been confirmed by exhaustive enumeration of the residue
#: pairs (n mod p, m mod p), so the computed column is the correct one.
SCAN_DEVIATIONS: Dict[ScanKey, Tuple[Residues, Residues]] = {
    (4, 9, 11): ((7, 8), (7, 8, 9)),
    (5, 8, 11): ((5,), ()),
    (6, 10, 11): ((2, 3, 4), (2, 3, 4, 8, 9)),
    (8, 9, 11): ((3, 4, 5, 7), (3, 4, 5, 6, 7)),
    (8, 10, 11): ((2, 3, 4, 5, 6), (2, 3, 4, 5, 6, 7)),
    (10, 10, 11): ((2, 3, 4, 5, 6, 7, 8), (2, 3, 4, 5, 6, 7, 8, 9)),
}

#: Residues u mod 75 for which binom(n,2) = binom(m,4) + d is unsolvable
#: whenever d falls in the class: exactly the u with 12u + 1 divisible by 5
#: but not by 25, where the obstruction at p = 5 kicks in.
MOD75_OBSTRUCTED: Residues = (7, 12, 17, 22, 32, 37, 42, 47, 57, 62, 67, 72)

#: Solutions the bounded block searches find that the curated block tables
#: omit, keyed by ((k, l), d).  binom(3,2) = binom(5,4) - 2 holds exactly and
#: (3, 5) satisfies the tables' own n >= k, m >= l convention, so the curated
#: (2,4), d=-2 row is incomplete; its quartic model confirms the point
#: (X, Y) = (5, 15).  The searches report the solution; the curated tables
#: are left verbatim.
SEARCH_ADDENDA: Dict[Tuple[Tuple[int, int], int], Set[Tuple[int, int]]] = {
    ((2, 4), -2): {(3, 5)},
}

#: Collision searches with frozen outcomes: (k, bound, min_multiplicity)
#: mapped to the full expected {difference: ascending pair list} answer.
COLLISION_CASES: Tuple[Tuple[int, int, int, Dict[int, Tuple[Tuple[int, int], ...]]], ...] = (
    (3, 40, 3, {2180: ((25, 10), (33, 28), (36, 32))}),
    (3, 1000, 4, {10053736: ((398, 132), (628, 572), (968, 946), (990, 969))}),
    (7, 20, 2, {8008: ((16, 14), (17, 16))}),
    (8, 1000, 2, {}),
    (9, 1000, 2, {}),
    (10, 1000, 2, {}),
)

#: Pure t-power certificate exponents for the odd k without solutions.
T_POWER_EXPONENTS: Dict[int, int] = {9: 14, 11: 18, 13: 20}

#: Solution counts for the odd k that do admit solutions.
K22_SOLUTION_COUNTS: Dict[int, int] = {3: 3, 5: 3, 7: 1}


def load_reference_scan() -> Dict[ScanKey, Residues]:
    """The curated congruence table bundled with the package."""
    text = (resources.files("binomgap.data") / "reference_scan.txt").read_text()
    table: Dict[ScanKey, Residues] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        k_s, l_s, p_s = line.split(",")[:3]
        rest = line.split(",", 3)[3] if line.count(",") >= 3 else ""
        key = (int(k_s), int(l_s), int(p_s))
        residues = tuple(int(tok) for tok in rest.split())
        if key in table:
            raise ValueError(f"duplicate reference row {key}")
        table[key] = residues
    return table


@dataclass(frozen=True)
class ScenarioResult:
    """Outcome of one reproduction scenario."""

    name: str
    passed: bool
    detail: str
    elapsed: float


Scenario = Callable[[int, Optional[str]], Tuple[bool, str]]


def _corpus_scenario(workers: int, corpus_path: Optional[str]) -> Tuple[bool, str]:
    corpus = load_corpus(corpus_path)
    report = verify_corpus(corpus.records)
    if not report.all_ok:
        bad = ", ".join(str(r.key()) for r in report.failures[:5])
        return False, f"{len(report.failures)} records failed verification: {bad}"
    for i in range(1, 6):
        if not verify_fibonacci_family(i):
            return False, f"Fibonacci-index family member i={i} failed"
    return True, (f"{len(corpus.records)} solution records verified exactly; "
                  "Fibonacci-index family confirmed for i = 1..5")


def _scan_scenario(workers: int, corpus_path: Optional[str]) -> Tuple[bool, str]:
    reference = load_reference_scan()
    report = scan_unsolvable(10, 10, 29, workers=workers)
    computed = {(k, l, p): ds for (k, l, p, ds) in report.entries}
    deviations: Dict[ScanKey, Tuple[Residues, Residues]] = {}
    for key, curated in sorted(reference.items()):
        got = computed.get(key, ())
        if got != curated:
            deviations[key] = (curated, got)
    if deviations != SCAN_DEVIATIONS:
        unexpected = sorted(set(deviations) ^ set(SCAN_DEVIATIONS))
        return False, f"deviation set changed at rows {unexpected}"
    exact = len(reference) - len(deviations)
    return True, (f"{exact}/{len(reference)} curated rows reproduced exactly; "
                  f"all {len(deviations)} known deviations confirmed")


def _obstruction_scenario(workers: int, corpus_path: Optional[str]) -> Tuple[bool, str]:
    cells = 0
    for d in range(-100, 101):
        for p in (q for q in primes_up_to(47) if q >= 5):
            if not pell_obstruction_applies(d, p):
                continue
            modulus = pell_obstruction_modulus(d, p)
            if congruence_solvable(SieveQuery(2, 4, d, modulus)):
                return False, (f"obstruction at d={d}, p={p} contradicted "
                               f"by enumeration mod {modulus}")
            cells += 1
    found = tuple(u for u in range(75) if pell_obstruction_applies(u, 5))
    if found != MOD75_OBSTRUCTED:
        return False, f"mod-75 obstructed residues changed: {found}"
    return True, (f"{cells} obstructed (d, p) cells confirmed unsolvable by "
                  "enumeration at their moduli; the twelve obstructed "
                  "residues mod 75 reproduced")


def _equal_index_scenario(workers: int, corpus_path: Optional[str]) -> Tuple[bool, str]:
    corpus = load_corpus(corpus_path)
    expected: Dict[Tuple[int, int], Set[Tuple[int, int]]] = {}
    for rec in corpus.records:
        if rec.source == "equal-index-table":
            expected.setdefault((rec.k, rec.d), set()).add((rec.n, rec.m))
    nonempty = 0
    for k in (3, 4, 5):
        for d in range(1, 21):
            got = solve_equal_index(k, d, canonical=True)
            if got != expected.get((k, d), set()):
                return False, f"cell k={k}, d={d} gave {sorted(got)}"
            nonempty += bool(got)
    if nonempty != sum(1 for s in expected.values() if s):
        return False, f"{nonempty} nonempty cells, corpus lists {len(expected)}"
    # Census cross-check without the n > m >= k filter: every pair inside
    # the box |n|, |m| <= 300 must be found, and nothing else inside it.
    for k in (3, 4, 5):
        by_value: Dict[int, list] = {}
        for x in range(-300, 301):
            by_value.setdefault(binom(x, k), []).append(x)
        for d in range(1, 21):
            oracle = {(n, m)
                      for m in range(-300, 301)
                      for n in by_value.get(binom(m, k) + d, ())}
            solver = {(n, m) for (n, m) in solve_equal_index(k, d)
                      if abs(n) <= 300 and abs(m) <= 300}
            if solver != oracle:
                return False, f"box census differs at k={k}, d={d}"
    return True, (f"{nonempty} nonempty cells match the solution table; "
                  "box-300 census agrees on all 60 cells")


def _collisions_scenario(workers: int, corpus_path: Optional[str]) -> Tuple[bool, str]:
    for k, bound, mult, want in COLLISION_CASES:
        report = collision_search(k, bound, mult, workers=workers)
        if report.as_dict() != want:
            return False, (f"k={k}, bound={bound}, multiplicity {mult} "
                           f"gave {report.as_dict()}")
    hits = sum(len(want) for *_, want in COLLISION_CASES)
    return True, (f"{len(COLLISION_CASES)} collision searches reproduced; "
                  f"{hits} repeated differences, none for k in 8..10")


def _curves_scenario(workers: int, corpus_path: Optional[str]) -> Tuple[bool, str]:
    certificates = verify_all_transforms()
    corrected = tuple(c.kl for c in certificates if c.correction)
    if corrected != ((2, 3), (3, 6)):
        return False, f"corrected rows changed: {corrected}"
    # The distinguished integral point of the (3, 6) model at d = 2: it lies
    # on the curve but (2m-5)^2 = 8Y + 1 has no integer solution at Y = -9,
    # so it yields no (n, m) pair and the d = 2 block is empty.
    spec = curve_spec((3, 6), 2)
    if spec.model.evaluate({"X": -4, "Y": -9, "d": 2}) != 0:
        return False, "distinguished point (-4, -9) left the (3, 6) curve"
    if is_perfect_square(8 * (-9) + 1) is not None:
        return False, "Y = -9 unexpectedly lifted to an integer index"
    return True, (f"all {len(certificates)} curve models certified against "
                  "the defining equation; two corrected rows as documented; "
                  "(-4, -9) confirmed on the d=2 sextic block and index-free")


def _blocks_scenario(workers: int, corpus_path: Optional[str]) -> Tuple[bool, str]:
    corpus = load_corpus(corpus_path)
    expected: Dict[Tuple[int, int, int], Set[Tuple[int, int]]] = {}
    for rec in corpus.records:
        if rec.source == "elliptic-table":
            expected.setdefault((rec.k, rec.l, rec.d), set()).add((rec.n, rec.m))
    total = 0
    for kl in CURVE_PAIRS:
        for d in range(-3, 4):
            got = {(r.n, r.m) for r in bounded_search(kl, d, workers=workers)}
            want = expected.get((kl[0], kl[1], d), set())
            want |= SEARCH_ADDENDA.get((kl, d), set())
            if got != want:
                return False, (f"block {kl}, d={d}: search found "
                               f"{sorted(got)}, expected {sorted(want)}")
            total += len(got)
    extras = sum(len(v) for v in SEARCH_ADDENDA.values())
    return True, (f"all {7 * len(CURVE_PAIRS)} blocks reproduced within the "
                  f"documented search bounds ({total} solutions, including "
                  f"{extras} verified beyond the curated tables)")


def _quintic_scenario(workers: int, corpus_path: Optional[str]) -> Tuple[bool, str]:
    corpus = load_corpus(corpus_path)
    expected: Dict[int, Set[Tuple[int, int]]] = {}
    for rec in corpus.records:
        if rec.source == "k2l5-window":
            expected.setdefault(rec.d, set()).add((rec.n, rec.m))
    total = 0
    for d in range(-3, 4):
        got = {(r.n, r.m) for r in bounded_search_25(d)}
        if got != expected.get(d, set()):
            return False, f"window d={d} gave {sorted(got)}"
        total += len(got)
    if not verify_parametric_family():
        return False, "parametric family failed certification"
    conjectured = {(r.n, r.m) for r in corpus.records
                   if r.source == "d66-conjectured"}
    generated = {(r.n, r.m) for r in d66_records()}
    if generated != conjectured:
        return False, "d=66 family records diverge from the solution table"
    return True, (f"{total} window solutions reproduced for |d| <= 3; "
                  "parametric family certified symbolically; "
                  f"{len(generated)} d=66 family records regenerated")


def _k22_scenario(workers: int, corpus_path: Optional[str]) -> Tuple[bool, str]:
    for k, count in sorted(K22_SOLUTION_COUNTS.items()):
        result = solve_k22(k)
        if result.certificate is not None or len(result.solutions) != count:
            return False, f"k={k} gave {len(result.solutions)} solutions"
        for sol in result.solutions:
            if not verify_poly_identity(sol):
                return False, f"k={k} produced a non-identity"
    for k, exponent in sorted(T_POWER_EXPONENTS.items()):
        result = solve_k22(k)
        cert = result.certificate
        if cert is None or cert.exponent != exponent:
            return False, f"k={k} lacks the t^{exponent} certificate"
    for name, sol in KNOWN_IDENTITIES:
        if not verify_poly_identity(sol):
            return False, f"named identity {name!r} failed"
    counts = "/".join(str(K22_SOLUTION_COUNTS[k]) for k in (3, 5, 7))
    powers = ", ".join(f"t^{T_POWER_EXPONENTS[k]}" for k in (9, 11, 13))
    return True, (f"solution counts {counts} for k = 3/5/7, every identity "
                  f"exact; nonexistence certificates {powers}; "
                  f"{len(KNOWN_IDENTITIES)} named identities verified")


SCENARIOS: Tuple[Tuple[str, Scenario], ...] = (
    ("corpus", _corpus_scenario),
    ("scan-table", _scan_scenario),
    ("obstruction-soundness", _obstruction_scenario),
    ("equal-index", _equal_index_scenario),
    ("collisions", _collisions_scenario),
    ("curve-models", _curves_scenario),
    ("elliptic-blocks", _blocks_scenario),
    ("quintic-window", _quintic_scenario),
    ("square-binomial", _k22_scenario),
)


def run_all(names: Optional[Sequence[str]] = None, workers: int = 1,
            corpus_path: Optional[str] = None) -> Tuple[ScenarioResult, ...]:
    """Run the selected scenarios (all by default), never raising: a
    scenario that blows up is reported as failed with the error message."""
    table = dict(SCENARIOS)
    if names is None:
        chosen = [name for name, _ in SCENARIOS]
    else:
        unknown = [n for n in names if n not in table]
        if unknown:
            raise ValueError(f"unknown scenarios: {', '.join(unknown)}")
        chosen = list(names)
    results = []
    for name in chosen:
        start = time.perf_counter()
        try:
            passed, detail = table[name](workers, corpus_path)
        except Exception as exc:  # pragma: no cover - defensive reporting
            passed, detail = False, f"error: {exc}"
        results.append(ScenarioResult(name=name, passed=passed, detail=detail,
                                      elapsed=time.perf_counter() - start))
    return tuple(results)
