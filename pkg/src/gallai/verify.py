"""Verification campaigns over graph6 corpora.

A campaign streams graph6 records from a corpus file, applies conjunctive
filters, evaluates one named check per graph, and assembles a deterministic
report (records are keyed and ordered by input index, so the worker count
never changes the output).  Every failure record carries the graph6 string
that reproduces it.

Check tags are stable identifiers of the claims this tool can test; the
registry below states each claim operationally.
"""

from __future__ import annotations

import hashlib
import json
import math
import multiprocessing
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from ._budget import time_budget
from .errors import CapExceededError, GallaiError, Graph6Error, PreconditionError
from .graph6 import parse_graph6, to_graph6
from .graphs import (
    Graph,
    alpha,
    bits,
    blocks,
    components,
    induced_contains,
    is_biconnected,
    is_connected,
    is_linear_forest,
    kappa,
    linear_forest_profile,
    induced_subgraph,
)
from .constructions import linear_forest, split_petersen
from .paths import (
    longest_cycle_length,
    longest_path_length,
    longest_path_masks,
)
from .transversal import (
    find_special_block,
    lct_exact,
    lpt_exact,
    pairwise_intersecting,
    run_sublinear_transversal,
    is_transversal,
    _EpsRules,
)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-by-filter"
CAP = "cap-exceeded"
PARSE_ERROR = "parse-error"

VERDICTS = (PASS, FAIL, SKIPPED, CAP, PARSE_ERROR)


# ---------------------------------------------------------------------------
# Check implementations.  Each returns (verdict, diagnostic-dict); a verdict
# of SKIPPED means the claim's hypothesis does not hold for the graph.


def _common_vertices(g: Graph) -> int:
    common = g.vertex_mask
    for m in longest_path_masks(g):
        common &= m
        if not common:
            break
    return common


def _witness_avoiding(g: Graph, vertex: int) -> list[int]:
    for m in longest_path_masks(g):
        if not m & (1 << vertex):
            return sorted(bits(m))
    raise AssertionError("vertex unexpectedly lies on every longest path")


def _degree_threshold_check(g: Graph, threshold: int, diag: dict):
    """Pass iff every vertex of degree >= threshold lies on every longest path."""
    common = _common_vertices(g)
    for v in range(g.n):
        if g.degree(v) >= threshold and not common & (1 << v):
            diag["vertex"] = v
            diag["degree"] = g.degree(v)
            diag["avoiding_longest_path"] = _witness_avoiding(g, v)
            return FAIL, diag
    return PASS, diag


_P3_P1 = linear_forest([3, 1])
_P2_2P1 = linear_forest([2, 1, 1])


def check_gallai_exists(g: Graph, params: dict):
    if not is_connected(g):
        return SKIPPED, {"reason": "not connected"}
    common = _common_vertices(g)
    if common:
        return PASS, {"gallai_count": common.bit_count()}
    sample = [sorted(bits(m)) for m in longest_path_masks(g)[:6]]
    return FAIL, {"gallai_count": 0, "longest_path_sets_sample": sample}


def check_gallai_max_degree(g: Graph, params: dict):
    if not is_connected(g):
        return SKIPPED, {"reason": "not connected"}
    return _degree_threshold_check(g, g.max_degree(), {})


def check_thm9(g: Graph, params: dict):
    """Connected graphs with no induced P3+P1: every vertex of degree at
    least Delta-1 lies on every longest path."""
    if not is_connected(g) or induced_contains(g, _P3_P1):
        return SKIPPED, {"reason": "hypothesis"}
    return _degree_threshold_check(g, g.max_degree() - 1, {})


def check_prop10(g: Graph, params: dict):
    """Connected graphs with no induced P2+2P1: every maximum-degree vertex
    lies on every longest path."""
    if not is_connected(g) or induced_contains(g, _P2_2P1):
        return SKIPPED, {"reason": "hypothesis"}
    return _degree_threshold_check(g, g.max_degree(), {})


def check_thm13(g: Graph, params: dict):
    """k-connected graphs (k in {1,2}) with independence number at most k+2:
    every longest path contains every vertex of degree >= Delta-(2-k)."""
    k = int(params.get("k", 1))
    if k not in (1, 2):
        raise PreconditionError("k must be 1 or 2")
    if kappa(g) < k or alpha(g) > k + 2:
        return SKIPPED, {"reason": "hypothesis"}
    return _degree_threshold_check(g, g.max_degree() - (2 - k), {"k": k})


def check_thm20(g: Graph, params: dict):
    """Connected graphs with independence number at most 4 have a vertex on
    every longest path."""
    if not is_connected(g) or alpha(g) > 4:
        return SKIPPED, {"reason": "hypothesis"}
    return check_gallai_exists(g, params)


def check_thm22_claim(g: Graph, params: dict):
    """k-connected graphs with alpha <= k+2 and order above the stated bound:
    every maximum-degree vertex lies on every longest path."""
    k = int(params.get("k", 1))
    n0 = k * (k + 2) * (2 * k + 3) + 1
    if kappa(g) < k or alpha(g) > k + 2 or g.n < n0:
        return SKIPPED, {"reason": "hypothesis", "n0": n0}
    return _degree_threshold_check(g, g.max_degree(), {"k": k, "n0": n0})


def check_chvatal_erdos(g: Graph, params: dict):
    """alpha <= kappa forces a spanning cycle (n >= 3); alpha <= kappa+1
    forces a spanning path."""
    a, k = alpha(g), kappa(g)
    diag = {"alpha": a, "kappa": k}
    applicable = False
    if g.n >= 3 and a <= k:
        applicable = True
        if longest_cycle_length(g) != g.n:
            diag["missing"] = "spanning cycle"
            return FAIL, diag
    if a <= k + 1:
        applicable = True
        if longest_path_length(g) != g.n:
            diag["missing"] = "spanning path"
            return FAIL, diag
    if not applicable:
        return SKIPPED, {"reason": "hypothesis", **diag}
    return PASS, diag


def check_cor14(g: Graph, params: dict):
    """Near-regular connected graphs with alpha <= 3, and regular 2-connected
    graphs with alpha <= 4, have spanning paths."""
    a = alpha(g)
    near_regular = is_connected(g) and a <= 3 and g.max_degree() - g.min_degree() <= 1
    regular_2conn = (
        is_biconnected(g) and a <= 4 and g.max_degree() == g.min_degree()
    )
    if not near_regular and not regular_2conn:
        return SKIPPED, {"reason": "hypothesis"}
    diag = {"alpha": a, "clauses": [near_regular, regular_2conn]}
    if longest_path_length(g) != g.n:
        diag["missing"] = "spanning path"
        return FAIL, diag
    return PASS, diag


def check_lemma18(g: Graph, params: dict):
    """Connected graphs (with an edge) in which no cut vertex lies on every
    longest path have a block met, through an edge, by every longest path."""
    if not is_connected(g) or g.n < 2:
        return SKIPPED, {"reason": "hypothesis"}
    common = _common_vertices(g)
    cuts = blocks(g).cut_vertices
    if any(common & (1 << v) for v in cuts):
        return SKIPPED, {"reason": "a cut vertex is a Gallai vertex"}
    special = find_special_block(g)
    if special is None:
        return FAIL, {"cut_vertices": sorted(cuts)}
    return PASS, {"special_block": sorted(special)}


def check_lemma3(g: Graph, params: dict):
    """Connectivity above the squared edge count of the pattern forces the
    maximum subdivisions to pairwise intersect."""
    pattern = params.get("pattern", "cycle")
    m = 1 if pattern == "path" else 2
    if kappa(g) <= m * m:
        return SKIPPED, {"reason": "hypothesis"}
    if pairwise_intersecting(g, pattern):
        return PASS, {"pattern": pattern}
    return FAIL, {"pattern": pattern}


def check_thm1_bound(g: Graph, params: dict):
    """The constructive transversal is valid and within its size bound."""
    pattern = params.get("pattern", "path")
    if pattern == "path":
        if not is_connected(g):
            return SKIPPED, {"reason": "not connected"}
        m = 1
    else:
        if not is_biconnected(g):
            return SKIPPED, {"reason": "not 2-connected"}
        m = 2
    run = run_sublinear_transversal(g, pattern)
    bound = _EpsRules(m, g.n, None).size_bound()
    diag = {
        "size": len(run.transversal),
        "bound": bound,
        "steps": list(run.steps),
    }
    if run.diagnostics:
        diag["diagnostics"] = list(run.diagnostics)
        return FAIL, diag
    if len(run.transversal) > bound:
        return FAIL, diag
    if not is_transversal(g, pattern, run.transversal):
        diag["invalid"] = True
        return FAIL, diag
    exact = lpt_exact(g) if pattern == "path" else lct_exact(g)
    diag["exact"] = exact[0]
    return PASS, diag


def check_lct_thomassen(g: Graph, params: dict):
    """Every graph with a cycle admits a longest-cycle transversal of size
    at most ceil(n/3)."""
    if longest_cycle_length(g) is None:
        return SKIPPED, {"reason": "acyclic"}
    value, witness = lct_exact(g)
    diag = {"lct": value, "bound": math.ceil(g.n / 3)}
    if value > math.ceil(g.n / 3):
        diag["witness"] = sorted(witness)
        return FAIL, diag
    return PASS, diag


CHECKS: dict[str, Callable[[Graph, dict], tuple[str, dict]]] = {
    "gallai-exists": check_gallai_exists,
    "gallai-max-degree": check_gallai_max_degree,
    "thm9": check_thm9,
    "prop10": check_prop10,
    "thm13": check_thm13,
    "thm20": check_thm20,
    "thm22-claim": check_thm22_claim,
    "chvatal-erdos": check_chvatal_erdos,
    "cor14": check_cor14,
    "lemma18": check_lemma18,
    "lemma3": check_lemma3,
    "thm1-bound": check_thm1_bound,
    "lct-thomassen": check_lct_thomassen,
}


@dataclass(frozen=True)
class CheckSpec:
    """A check tag plus its parameters (k for connectivity-style checks,
    pattern for subdivision-style checks)."""

    tag: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tag not in CHECKS:
            raise PreconditionError(
                f"unknown check {self.tag!r}; known: {', '.join(sorted(CHECKS))}"
            )


# ---------------------------------------------------------------------------
# Filters


def _parse_one_filter(text: str):
    if text == "connected":
        return text, lambda g: is_connected(g)
    if text.startswith("kappa>="):
        k = int(text.split(">=", 1)[1])
        if k == 1:
            return text, lambda g: is_connected(g)
        if k == 2:
            return text, lambda g: is_biconnected(g)
        return text, lambda g: kappa(g) >= k
    if text.startswith("alpha<="):
        c = int(text.split("<=", 1)[1])
        return text, lambda g: alpha(g) <= c
    if text.startswith("free="):
        pattern = parse_graph6(text.split("=", 1)[1])
        return text, lambda g: not induced_contains(g, pattern)
    raise PreconditionError(f"unknown filter {text!r}")


def parse_filters(texts: Iterable[str]):
    return [_parse_one_filter(t) for t in texts]


# ---------------------------------------------------------------------------
# Campaign runner


@dataclass
class GraphRecord:
    index: int
    graph6: str
    verdict: str
    n: int | None = None
    diagnostic: dict | None = None

    def row(self) -> list:
        metrics = self.diagnostic or {}
        return [
            self.index,
            self.graph6,
            self.n if self.n is not None else "",
            self.verdict,
            metrics.get("lpt", metrics.get("exact", "")),
            metrics.get("lct", ""),
            metrics.get("size", ""),
        ]


@dataclass
class CampaignReport:
    corpus: str
    corpus_sha256: str
    corpus_size: int
    check: str
    params: dict
    filters: tuple[str, ...]
    jobs: int
    records: list[GraphRecord]
    totals: dict[str, int]
    wall_clock_sec: float

    def failures(self) -> list[GraphRecord]:
        return [r for r in self.records if r.verdict == FAIL]

    def to_json_dict(self, full_records: bool = False) -> dict:
        out = {
            "corpus": {
                "source": self.corpus,
                "records": self.corpus_size,
                "sha256": self.corpus_sha256,
            },
            "check": self.check,
            "params": self.params,
            "filters": list(self.filters),
            "jobs": self.jobs,
            "totals": self.totals,
            "wall_clock_sec": round(self.wall_clock_sec, 3),
            "failures": [
                {
                    "index": r.index,
                    "graph6": r.graph6,
                    "n": r.n,
                    "diagnostic": r.diagnostic,
                }
                for r in self.failures()
            ],
            "records": [[r.index, r.n, r.verdict] for r in self.records],
        }
        if not full_records and len(self.records) > 1_000_000:
            del out["records"]
        return out

    def write_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=1) + "\n")

    def write_csv(self, path) -> None:
        lines = ["index,graph6,n,verdict,lpt,lct,size"]
        for r in self.records:
            lines.append(",".join(str(x) for x in r.row()))
        Path(path).write_text("\n".join(lines) + "\n")


def evaluate_record(
    index: int,
    line: str,
    tag: str,
    params: dict,
    filter_texts: Sequence[str],
    budget_ms: float | None,
) -> GraphRecord:
    """Evaluate one graph6 record; never raises for per-record problems."""
    try:
        g = parse_graph6(line)
    except Graph6Error as exc:
        return GraphRecord(index, line, PARSE_ERROR, None, {"error": str(exc)})
    try:
        with time_budget(budget_ms):
            for text, pred in parse_filters(filter_texts):
                if not pred(g):
                    return GraphRecord(index, line, SKIPPED, g.n, {"filter": text})
            verdict, diag = CHECKS[tag](g, params)
        return GraphRecord(index, line, verdict, g.n, diag)
    except CapExceededError as exc:
        return GraphRecord(index, line, CAP, g.n, {"error": str(exc)})


def _worker(args) -> tuple[int, str, int | None, dict | None]:
    index, line, tag, params, filter_texts, budget_ms = args
    rec = evaluate_record(index, line, tag, params, filter_texts, budget_ms)
    return index, rec.verdict, rec.n, rec.diagnostic


def _read_corpus(corpus) -> tuple[str, list[str]]:
    if isinstance(corpus, (str, Path)):
        text = Path(corpus).read_text()
        return str(corpus), [ln for ln in text.splitlines() if ln.strip()]
    lines = [str(ln).strip() for ln in corpus]
    return "<memory>", [ln for ln in lines if ln]


def run_campaign(
    corpus,
    spec: CheckSpec,
    filters: Sequence[str] = (),
    jobs: int = 1,
    budget_ms: float | None = None,
) -> CampaignReport:
    """Evaluate every corpus record against the check, in parallel if asked.

    The report is ordered by input index and identical for any worker count.
    Per-record parse errors are recorded, never fatal.
    """
    source, lines = _read_corpus(corpus)
    parse_filters(filters)  # validate eagerly
    sha = hashlib.sha256("\n".join(lines).encode()).hexdigest()[:16]
    start = time.monotonic()
    tasks = [
        (i, ln, spec.tag, spec.params, tuple(filters), budget_ms)
        for i, ln in enumerate(lines)
    ]
    records: list[GraphRecord]
    if jobs > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (jobs * 16))
        with multiprocessing.Pool(jobs) as pool:
            raw = pool.map(_worker, tasks, chunksize=chunk)
        records = [
            GraphRecord(i, lines[i], verdict, n, diag)
            for i, verdict, n, diag in sorted(raw)
        ]
    else:
        records = [evaluate_record(*t) for t in tasks]
    totals = {v: 0 for v in VERDICTS}
    for r in records:
        totals[r.verdict] += 1
    return CampaignReport(
        corpus=source,
        corpus_sha256=sha,
        corpus_size=len(lines),
        check=spec.tag,
        params=dict(spec.params),
        filters=tuple(filters),
        jobs=jobs,
        records=records,
        totals=totals,
        wall_clock_sec=time.monotonic() - start,
    )


# ---------------------------------------------------------------------------
# Induced linear forests of the split-Petersen graph


def max_induced_linear_forests() -> dict:
    """Classify the maximum induced linear forests of the split-Petersen
    graph by component-size profile, asserting the known outcome: maximum
    order 9, realized exactly by the profiles (3,3,3) and (7,1,1)."""
    g, _ = split_petersen()
    best = 0
    profiles: dict[tuple[int, ...], int] = {}
    for mask in range(1 << g.n):
        sub, _labels = induced_subgraph(g, bits(mask))
        if not is_linear_forest(sub):
            continue
        if sub.n > best:
            best = sub.n
            profiles = {}
        if sub.n == best:
            prof = linear_forest_profile(sub)
            profiles[prof] = profiles.get(prof, 0) + 1
    if best != 9 or set(profiles) != {(3, 3, 3), (7, 1, 1)}:
        raise GallaiError(
            f"unexpected maximum induced linear forests: order {best}, "
            f"profiles {sorted(profiles)}"
        )
    return {
        "max_size": best,
        "classes": sorted(profiles),
        "counts": {"+".join(map(str, k)): v for k, v in sorted(profiles.items())},
    }


def gallai_counterexample_scan(
    corpus,
    forbidden: Graph,
    jobs: int = 1,
    budget_ms: float | None = None,
) -> CampaignReport:
    """Scan a corpus for a connected graph avoiding ``forbidden`` (a linear
    forest) in which no vertex lies on every longest path.  Any failure in
    the report is a research-grade hit."""
    if not is_linear_forest(forbidden):
        raise PreconditionError("the forbidden graph must be a linear forest")
    filters = ("connected", f"free={to_graph6(forbidden).decode()}")
    return run_campaign(
        corpus, CheckSpec("gallai-exists"), filters, jobs=jobs, budget_ms=budget_ms
    )
