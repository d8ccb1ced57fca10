"""
Democracy in India, step by step
================================

One English title becomes a set of Hindi candidate queries: each content
word contributes its dictionary translation and its transliteration, and
every combination is tried against the collection.
"""
from hindiclir.index import build_index
from hindiclir.lexicon import default_dictionary, default_stopwords
from hindiclir.querypipe import format_candidates, plan_query
from hindiclir.evaluation import select_best_candidate
from hindiclir.synthetic import democracy_collection

plan = plan_query("26", "Democracy in India", default_dictionary(), default_stopwords())
print("content terms:", plan.terms)
for slot in plan.slots:
    print(f"  {slot.english:10s} translation={slot.translation}  transliteration={slot.transliteration}")

# two free slots, so four candidates; mask bit 1 means "use the transliteration"
print(format_candidates(plan.candidates))

# a tiny collection where relevant news stories say डेमोक्रेसी, not लोकतंत्र
coll = democracy_collection()
index = build_index(coll.documents)
outcome = select_best_candidate(plan.candidates, index, coll.qrels)
for cand, ap in zip(plan.candidates, outcome.candidate_aps):
    print(f"{cand.mask_bits}  AP={ap:.4f}  {cand.text}")
print("baseline (EHT) AP:", round(outcome.baseline_ap, 4))
print("refined (EHRT) AP:", round(outcome.chosen_ap, 4), "with", outcome.candidate.text)
