"""Retrieval evaluation and best-candidate selection.

Metrics follow trec_eval conventions: relevance grade >= 1 counts as
relevant, AP is normalized by the total number of relevant documents
(unretrieved ones count against it), 11-point interpolated precision takes
the best precision at or beyond each recall level, and precision at a
cutoff always divides by the cutoff.
"""
from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .corpus import Qrels
from .errors import CandidateExplosion, DataError, UnjudgedQuery
from .index import DEFAULT_B, DEFAULT_CUTOFF, DEFAULT_K1, InvertedIndex, RankedList, score_bm25
from .querypipe import DEFAULT_CAP, QueryCandidate, plan_query

log = logging.getLogger(__name__)

RECALL_LEVELS = tuple(i / 10 for i in range(11))
P_CUTOFFS = (5, 10, 15, 20, 30, 100, 200, 500, 1000)
MODES = ("EHT", "EHRT")


def _hits(ranked: RankedList, relevant):
    return np.fromiter((d in relevant for d in ranked.docnos()), dtype=bool, count=len(ranked))


def average_precision(ranked: RankedList, qrels: Qrels, qid: str) -> float:
    relevant = qrels.relevant(qid)
    if not relevant:
        return 0.0
    hits = _hits(ranked, relevant)
    if not hits.any():
        return 0.0
    ranks = np.flatnonzero(hits) + 1
    found = np.arange(1, len(ranks) + 1)
    return float(np.sum(found / ranks) / len(relevant))


def interpolated_precision(ranked: RankedList, qrels: Qrels, qid: str) -> list[float]:
    relevant = qrels.relevant(qid)
    if not relevant or len(ranked) == 0:
        return [0.0] * len(RECALL_LEVELS)
    hits = _hits(ranked, relevant)
    found = np.cumsum(hits)
    precision = found / np.arange(1, len(hits) + 1)
    recall = found / len(relevant)
    # best precision at this rank or any later one
    best_after = np.maximum.accumulate(precision[::-1])[::-1]
    out = []
    for level in RECALL_LEVELS:
        i = int(np.searchsorted(recall, level, side="left"))
        out.append(float(best_after[i]) if i < len(recall) else 0.0)
    return out


def precision_at(ranked: RankedList, qrels: Qrels, qid: str, k: int) -> float:
    relevant = qrels.relevant(qid)
    return sum(d in relevant for d in ranked.docnos()[:k]) / k


def r_precision(ranked: RankedList, qrels: Qrels, qid: str) -> float:
    R = qrels.num_relevant(qid)
    return precision_at(ranked, qrels, qid, R) if R else 0.0


@dataclass
class TopicEval:
    qid: str
    num_retrieved: int
    num_relevant: int
    num_relevant_retrieved: int
    ap: float
    interp_pr: list[float]
    p_at: dict[int, float]
    r_precision: float


def evaluate_topic(ranked: RankedList, qrels: Qrels, qid: str) -> TopicEval:
    relevant = qrels.relevant(qid)
    return TopicEval(
        qid=qid,
        num_retrieved=len(ranked),
        num_relevant=len(relevant),
        num_relevant_retrieved=sum(d in relevant for d in ranked.docnos()),
        ap=average_precision(ranked, qrels, qid),
        interp_pr=interpolated_precision(ranked, qrels, qid),
        p_at={k: precision_at(ranked, qrels, qid, k) for k in P_CUTOFFS},
        r_precision=r_precision(ranked, qrels, qid),
    )


@dataclass
class EvalReport:
    num_queries: int
    num_retrieved: int
    num_relevant: int
    num_relevant_retrieved: int
    map: float
    interp_pr: list[float]
    p_at: dict[int, float]
    r_precision: float
    per_topic: list[TopicEval] = field(default_factory=list, repr=False)

    def rows(self):
        """(label, value) pairs in the row order of a trec_eval summary table."""
        rows = [
            ("No. of query", self.num_queries),
            ("No. of retrieve documents", self.num_retrieved),
            ("No. of rel. documents", self.num_relevant),
            ("No. of retrieve relevant", self.num_relevant_retrieved),
        ]
        rows += [(f"At {lvl:.2f}", v) for lvl, v in zip(RECALL_LEVELS, self.interp_pr)]
        rows.append(("MAP", self.map))
        rows += [(f"At {k} docs", self.p_at[k]) for k in P_CUTOFFS]
        rows.append(("R-precision", self.r_precision))
        return rows

    def format_table(self, name="run") -> str:
        return format_reports({name: self})

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "value"])
        for label, value in self.rows():
            w.writerow([label, _fmt(value, 6)])
        return buf.getvalue()


def _fmt(value, places=4, grouped=False):
    if isinstance(value, int):
        return f"{value:,}" if grouped else str(value)
    return f"{value:.{places}f}"


def format_reports(reports: dict[str, EvalReport]) -> str:
    """Plain-text table with one column per run, e.g. EHT and EHRT side by side."""
    names = list(reports)
    columns = [r.rows() for r in reports.values()]
    labels = [label for label, _ in columns[0]] if columns else []
    width = max([len("Metric")] + [len(s) for s in labels])
    cell = max([8] + [len(n) for n in names])
    lines = ["Recall-Precision Average", "Metric".ljust(width) + "".join("  " + n.rjust(cell) for n in names)]
    for i, label in enumerate(labels):
        vals = "".join("  " + _fmt(col[i][1], grouped=True).rjust(cell) for col in columns)
        lines.append(label.ljust(width) + vals)
    return "\n".join(lines) + "\n"


def reports_to_csv(reports: dict[str, EvalReport]) -> str:
    """``metric,value`` rows; with several runs the metric is prefixed by the run name."""
    if len(reports) == 1:
        return next(iter(reports.values())).to_csv()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["metric", "value"])
    for name, rep in reports.items():
        for label, value in rep.rows():
            w.writerow([f"{name} {label}", _fmt(value, 6)])
    return buf.getvalue()


def evaluate_run(run: dict[str, RankedList], qrels: Qrels) -> EvalReport:
    """Aggregate metrics over every query in ``run``.

    Each query must have at least one judgment in ``qrels``; a judged query
    with no relevant documents scores 0 and still counts toward the means.
    """
    qids = sorted(run)
    for qid in qids:
        if not qrels.is_judged(qid):
            raise UnjudgedQuery(qid)
    topics = [evaluate_topic(run[q], qrels, q) for q in qids]
    n = len(topics)
    if n == 0:
        return EvalReport(0, 0, 0, 0, 0.0, [0.0] * len(RECALL_LEVELS), {k: 0.0 for k in P_CUTOFFS}, 0.0, [])

    def mean(values):
        return float(sum(values) / n)

    return EvalReport(
        num_queries=n,
        num_retrieved=sum(t.num_retrieved for t in topics),
        num_relevant=sum(t.num_relevant for t in topics),
        num_relevant_retrieved=sum(t.num_relevant_retrieved for t in topics),
        map=mean([t.ap for t in topics]),
        interp_pr=[mean([t.interp_pr[i] for t in topics]) for i in range(len(RECALL_LEVELS))],
        p_at={k: mean([t.p_at[k] for t in topics]) for k in P_CUTOFFS},
        r_precision=mean([t.r_precision for t in topics]),
        per_topic=topics,
    )


# ---------------------------------------------------------------------------
# candidate selection

@dataclass
class RankerParams:
    k1: float = DEFAULT_K1
    b: float = DEFAULT_B
    cutoff: int = DEFAULT_CUTOFF


@dataclass
class SelectionOutcome:
    qid: str
    chosen_mask: tuple[int, ...]
    chosen_ap: float
    baseline_ap: float
    num_candidates: int
    candidate: QueryCandidate | None = None
    ranked: RankedList | None = field(default=None, repr=False)
    candidate_aps: list[float] = field(default_factory=list, repr=False)


def retrieve(index: InvertedIndex, candidate: QueryCandidate, params: RankerParams) -> RankedList:
    terms = index.analyze_query(candidate.text)
    return score_bm25(index, terms, params.k1, params.b, params.cutoff, candidate.qid)


def score_mass(ranked: RankedList, depth=10) -> float:
    return float(sum(s for _, s in ranked.entries[:depth]))


def select_best_candidate(candidates, index: InvertedIndex, qrels: Qrels, params: RankerParams | None = None,
                          policy="oracle", mass_depth=10) -> SelectionOutcome:
    """Run every candidate and keep the best one.

    ``policy="oracle"`` ranks candidates by average precision against
    ``qrels``, which is how the refined (EHRT) query is defined: the choice
    consults the relevance judgments.  ``policy="score-mass"`` is a
    judgment-free alternative that keeps the candidate with the largest sum
    of its top ``mass_depth`` BM25 scores.  Ties go to the smallest mask,
    i.e. toward the all-translation baseline.
    """
    candidates = list(candidates)
    if not candidates:
        raise ValueError("no candidates")
    qid = candidates[0].qid
    if not qrels.is_judged(qid):
        raise UnjudgedQuery(qid)
    params = params or RankerParams()
    cache: dict[tuple[str, ...], RankedList] = {}
    ranked_lists = []
    for cand in candidates:
        key = tuple(index.analyze_query(cand.text))
        if key not in cache:
            cache[key] = score_bm25(index, key, params.k1, params.b, params.cutoff, qid)
        ranked_lists.append(cache[key])
    aps = [average_precision(rl, qrels, qid) for rl in ranked_lists]
    if policy == "oracle":
        keys = aps
    elif policy == "score-mass":
        keys = [score_mass(rl, mass_depth) for rl in ranked_lists]
    else:
        raise ValueError(f"unknown selection policy {policy!r}")
    best = max(range(len(candidates)), key=lambda i: (keys[i], -candidates[i].mask_value))
    baseline = min(range(len(candidates)), key=lambda i: candidates[i].mask_value)
    return SelectionOutcome(
        qid=qid,
        chosen_mask=candidates[best].choice_mask,
        chosen_ap=aps[best],
        baseline_ap=aps[baseline],
        num_candidates=len(candidates),
        candidate=candidates[best],
        ranked=ranked_lists[best],
        candidate_aps=aps,
    )


# ---------------------------------------------------------------------------
# experiments

@dataclass
class ExperimentResult:
    runs: dict[str, dict[str, RankedList]]
    reports: dict[str, EvalReport]
    selections: list[SelectionOutcome]
    plans: list = field(default_factory=list, repr=False)
    skipped: list[tuple[str, str]] = field(default_factory=list)


def _modes(mode):
    if mode in ("both", "all"):
        return MODES
    if mode not in MODES:
        raise ValueError(f"mode must be EHT, EHRT or both, got {mode!r}")
    return (mode,)


def run_experiment(topics, index: InvertedIndex, dictionary, stopwords, qrels: Qrels, mode="both",
                   params: RankerParams | None = None, cap=DEFAULT_CAP, policy="oracle",
                   transliterator=None, workers=1) -> ExperimentResult:
    """Run EHT (translated title) and/or EHRT (best candidate) over ``topics``.

    Topics that cannot be turned into a query, or that have no judgments,
    are skipped in every mode and listed in ``skipped``.
    """
    modes = _modes(mode)
    params = params or RankerParams()

    def one(topic):
        try:
            if not qrels.is_judged(topic.qid):
                raise UnjudgedQuery(topic.qid)
            plan = plan_query(topic.qid, topic.title, dictionary, stopwords, transliterator, cap)
            out = {"plan": plan}
            if "EHRT" in modes:
                sel = select_best_candidate(plan.candidates, index, qrels, params, policy)
                out["EHRT"] = sel.ranked
                out["selection"] = sel
            if "EHT" in modes:
                out["EHT"] = retrieve(index, plan.baseline, params)
            return out
        except (DataError, CandidateExplosion) as exc:
            log.warning("topic %s skipped: %s", topic.qid, exc)
            return {"error": str(exc)}

    topics = list(topics)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, topics))
    else:
        results = [one(t) for t in topics]

    runs = {m: {} for m in modes}
    selections, plans, skipped = [], [], []
    for topic, res in zip(topics, results):
        if "error" in res:
            skipped.append((topic.qid, res["error"]))
            continue
        plans.append(res["plan"])
        for m in modes:
            runs[m][topic.qid] = res[m]
        if "selection" in res:
            selections.append(res["selection"])
    reports = {m: evaluate_run(runs[m], qrels) for m in modes}
    return ExperimentResult(runs, reports, selections, plans, skipped)
