import random
from fractions import Fraction

import pytest

import oracles
from hindiclir.corpus import Document, Qrels, Topic
from hindiclir.errors import UnjudgedQuery
from hindiclir.evaluation import (P_CUTOFFS, RankerParams, average_precision, evaluate_run, format_reports,
                                  interpolated_precision, precision_at, r_precision, reports_to_csv,
                                  run_experiment, select_best_candidate)
from hindiclir.index import RankedList, build_index
from hindiclir.lexicon import default_stopwords
from hindiclir.querypipe import plan_query
from hindiclir.synthetic import democracy_collection, make_collection, transliteration_favoured_collection


def random_instance(rng, max_docs=20, max_topics=5):
    docs = [f"D{i:02d}" for i in range(rng.randint(1, max_docs))]
    qrels = Qrels()
    run = {}
    for t in range(rng.randint(1, max_topics)):
        qid = str(t + 1)
        judged = rng.sample(docs, rng.randint(1, len(docs)))
        for d in judged:
            qrels.add(qid, d, rng.choice([0, 0, 1, 2]))
        # sometimes a relevant document outside the pool
        if rng.random() < 0.3:
            qrels.add(qid, "UNPOOLED", 1)
        ranked = rng.sample(docs, rng.randint(0, len(docs)))
        run[qid] = RankedList(qid, [(d, float(len(ranked) - i)) for i, d in enumerate(ranked)])
    return run, qrels


def brute_force_report(run, qrels):
    per = [oracles.fraction_eval(run[q].docnos(), qrels.relevant(q)) for q in sorted(run)]
    n = len(per)
    return {
        "map": sum(p["ap"] for p in per) / n,
        "interp": [sum(p["interp"][i] for p in per) / n for i in range(11)],
        "p_at": {k: sum(p["p_at"][k] for p in per) / n for k in P_CUTOFFS},
        "rprec": sum(p["rprec"] for p in per) / n,
        "retrieved": sum(p["retrieved"] for p in per),
        "rel_ret": sum(p["rel_ret"] for p in per),
        "per_topic_interp": [p["interp"] for p in per],
    }


def test_matches_brute_force_evaluator():
    rng = random.Random(2010)
    for _ in range(200):
        run, qrels = random_instance(rng)
        got = evaluate_run(run, qrels)
        ref = brute_force_report(run, qrels)
        assert abs(got.map - float(ref["map"])) <= 1e-9
        assert abs(got.r_precision - float(ref["rprec"])) <= 1e-9
        for a, b in zip(got.interp_pr, ref["interp"]):
            assert abs(a - float(b)) <= 1e-9
        for k in P_CUTOFFS:
            assert abs(got.p_at[k] - float(ref["p_at"][k])) <= 1e-9
        assert got.num_retrieved == ref["retrieved"]
        assert got.num_relevant_retrieved == ref["rel_ret"]
        for t in got.per_topic:
            assert all(x >= y for x, y in zip(t.interp_pr, t.interp_pr[1:]))
        assert all(x >= y for x, y in zip(got.interp_pr, got.interp_pr[1:]))


def test_hand_computed_topic():
    # relevant at ranks 1 and 3 of 4, three relevant in total
    qrels = Qrels({("q", "a"): 1, ("q", "c"): 1, ("q", "z"): 1, ("q", "b"): 0})
    ranked = RankedList("q", [("a", 4.0), ("b", 3.0), ("c", 2.0), ("d", 1.0)])
    assert average_precision(ranked, qrels, "q") == pytest.approx((1 + Fraction(2, 3)) / 3)
    ip = interpolated_precision(ranked, qrels, "q")
    assert ip[:4] == [1.0, 1.0, 1.0, 1.0]
    assert ip[4:7] == pytest.approx([2 / 3] * 3)
    assert ip[7:] == [0.0] * 4
    assert precision_at(ranked, qrels, "q", 5) == pytest.approx(0.4)
    assert r_precision(ranked, qrels, "q") == pytest.approx(2 / 3)


def test_no_relevant_documents_scores_zero():
    qrels = Qrels({("q", "a"): 0})
    ranked = RankedList("q", [("a", 1.0)])
    assert average_precision(ranked, qrels, "q") == 0.0
    assert interpolated_precision(ranked, qrels, "q") == [0.0] * 11
    assert r_precision(ranked, qrels, "q") == 0.0


def test_unjudged_query():
    with pytest.raises(UnjudgedQuery):
        evaluate_run({"9": RankedList("9", [])}, Qrels({("1", "a"): 1}))


def test_empty_run():
    report = evaluate_run({}, Qrels())
    assert report.num_queries == 0 and report.map == 0.0


def test_report_layout():
    run, qrels = random_instance(random.Random(3))
    report = evaluate_run(run, qrels)
    labels = [label for label, _ in report.rows()]
    assert labels[:4] == ["No. of query", "No. of retrieve documents", "No. of rel. documents",
                          "No. of retrieve relevant"]
    assert labels[4] == "At 0.00" and labels[14] == "At 1.00"
    assert labels[15] == "MAP"
    assert labels[16:25] == [f"At {k} docs" for k in P_CUTOFFS]
    assert labels[-1] == "R-precision"
    table = format_reports({"EHT": report, "EHRT": report})
    assert table.splitlines()[0] == "Recall-Precision Average"
    assert table.splitlines()[1].split() == ["Metric", "EHT", "EHRT"]
    csv = report.to_csv().splitlines()
    assert csv[0] == "metric,value" and csv[16].startswith("MAP,")
    assert reports_to_csv({"EHT": report, "EHRT": report}).splitlines()[1].startswith("EHT No. of query,")


def test_table_groups_thousands():
    qrels = Qrels({("1", "d0"): 1})
    run = {"1": RankedList("1", [(f"d{i}", 1.0) for i in range(1200)])}
    assert "1,200" in format_reports({"EHT": evaluate_run(run, qrels)})


def test_selection_on_worked_example():
    coll = democracy_collection()
    index = build_index(coll.documents)
    plan = plan_query("26", "Democracy in India", coll.dictionary, default_stopwords())
    out = select_best_candidate(plan.candidates, index, coll.qrels)
    assert out.num_candidates == 4
    assert out.chosen_ap == max(out.candidate_aps)
    assert out.chosen_ap == 1.0
    assert out.candidate.text == "डेमोक्रेसी भारत"
    assert out.baseline_ap == pytest.approx(0.3595, abs=5e-5)
    assert out.chosen_mask == (1, 0)
    assert out.candidate_aps[1] == 0.0


def test_selection_tie_goes_to_baseline():
    docs = [Document("D1", "लोकतंत्र"), Document("D2", "डेमोक्रेसी")]
    qrels = Qrels({("5", "D1"): 1, ("5", "D2"): 1})
    plan = plan_query("5", "Democracy", democracy_collection().dictionary, default_stopwords())
    out = select_best_candidate(plan.candidates, build_index(docs), qrels)
    assert out.candidate_aps == [0.5, 0.5]
    assert out.chosen_mask == (0,)


def test_selection_policies():
    coll = democracy_collection()
    index = build_index(coll.documents)
    plan = plan_query("26", "Democracy in India", coll.dictionary, default_stopwords())
    mass = select_best_candidate(plan.candidates, index, coll.qrels, policy="score-mass")
    assert mass.num_candidates == 4
    with pytest.raises(ValueError):
        select_best_candidate(plan.candidates, index, coll.qrels, policy="coin")
    with pytest.raises(ValueError):
        select_best_candidate([], index, coll.qrels)
    with pytest.raises(UnjudgedQuery):
        select_best_candidate(plan_query("99", "India", coll.dictionary, default_stopwords()).candidates,
                              index, coll.qrels)


def _maps(coll, **kw):
    res = run_experiment(coll.topics, build_index(coll.documents), coll.dictionary, default_stopwords(),
                         coll.qrels, **kw)
    return res


def test_oracle_dominance_on_random_collections():
    for seed in range(5):
        res = _maps(make_collection(seed, num_docs=150))
        assert res.reports["EHRT"].map >= res.reports["EHT"].map
        for sel in res.selections:
            assert sel.chosen_ap >= sel.baseline_ap


def test_transliteration_favoured_fixture_improves():
    res = _maps(transliteration_favoured_collection())
    assert res.reports["EHRT"].map - res.reports["EHT"].map >= 0.05


def test_experiment_modes_and_determinism():
    coll = make_collection(4, num_docs=120)
    one = _maps(coll, mode="EHT")
    assert set(one.runs) == {"EHT"} and one.selections == []
    serial = _maps(coll)
    threaded = _maps(coll, workers=4)
    for m in ("EHT", "EHRT"):
        assert format_reports({m: serial.reports[m]}) == format_reports({m: threaded.reports[m]})
        assert {q: r.entries for q, r in serial.runs[m].items()} == \
            {q: r.entries for q, r in threaded.runs[m].items()}
    with pytest.raises(ValueError):
        _maps(coll, mode="XYZ")


def test_experiment_skips_bad_topics():
    coll = democracy_collection()
    topics = coll.topics + [Topic("27", "in the"), Topic("28", "India")]
    res = run_experiment(topics, build_index(coll.documents), coll.dictionary, default_stopwords(), coll.qrels)
    assert [q for q, _ in res.skipped] == ["27", "28"]
    assert res.reports["EHT"].num_queries == 1


def test_ranker_params_flow_through():
    coll = make_collection(1, num_docs=120)
    res = _maps(coll, params=RankerParams(cutoff=3))
    assert all(len(r) <= 3 for r in res.runs["EHT"].values())
