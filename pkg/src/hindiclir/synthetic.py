"""Seeded synthetic Hindi collections for experiments and tests.

Every topic is built from dictionary headwords ("concepts").  For each
concept in a topic the generator decides which surface form the topic's
relevant documents mostly use: the dictionary translation or the
transliteration.  Topics whose relevant documents prefer transliterations
are the ones where the refined query can beat the translated one.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .corpus import Document, Qrels, Topic, default_hindi_stopwords, tokenize
from .lexicon import BilingualDictionary, default_dictionary
from .translit import Transliterator, default_transliterator

FILLER = (
    "समाचार दिन लोग शहर राज्य देश समय वर्ष काम बात सवाल जानकारी रिपोर्ट मामला "
    "योजना सूचना विभाग अधिकारी क्षेत्र गांव जिला सप्ताह महीना घटना बैठक नेता "
    "संस्था समिति कार्यक्रम परिवार लाख करोड़ रुपये प्रतिशत मुद्दा विषय स्थिति"
).split()
FUNCTION_WORDS = "में के की का को से पर है और एक यह भी ने लिए".split()
CONNECTIVES = ("in", "of", "and", "for", "on", "the")


@dataclass
class Concept:
    headword: str
    translation: str
    transliteration: str

    def form(self, use_translit: bool) -> str:
        return self.transliteration if use_translit else self.translation


@dataclass
class SyntheticCollection:
    documents: list[Document]
    topics: list[Topic]
    qrels: Qrels
    dictionary: BilingualDictionary
    # qid -> headword -> True when relevant documents favour the transliteration
    preferences: dict[str, dict[str, bool]] = field(default_factory=dict)


def concepts_from_dictionary(dictionary=None, transliterator: Transliterator | None = None) -> list[Concept]:
    """Headwords whose first translation and transliteration are different
    strings and contain no Hindi stopword."""
    dictionary = dictionary or default_dictionary()
    translit = transliterator or default_transliterator()
    stop = default_hindi_stopwords().words
    out = []
    for head in dictionary:
        first = dictionary.get(head)[0]
        try:
            tl = translit(head)
        except ValueError:
            continue
        if tl != first and not stop.intersection(tokenize(first + " " + tl)):
            out.append(Concept(head, first, tl))
    return out


def _filler(rng, n):
    words = []
    for _ in range(n):
        pool = FUNCTION_WORDS if rng.random() < 0.3 else FILLER
        words.append(rng.choice(pool))
    return words


def make_collection(seed=0, num_docs=200, num_topics=10, terms_per_topic=(1, 3), translit_bias=0.5,
                    rel_per_topic=(3, 12), fidelity=0.85, background_rate=0.03, doc_length=(20, 60),
                    dictionary=None, transliterator=None) -> SyntheticCollection:
    """Generate a collection with ``num_docs`` documents and ``num_topics`` topics.

    ``translit_bias`` is the chance that a topic concept's relevant documents
    favour the transliterated form; ``fidelity`` is how often a relevant
    document uses the favoured form rather than the other one.
    ``background_rate`` is the per-concept, per-form chance that any other
    document mentions it.
    """
    rng = random.Random(seed)
    dictionary = dictionary or default_dictionary()
    concepts = concepts_from_dictionary(dictionary, transliterator)
    lo, hi = terms_per_topic
    if num_topics * hi > len(concepts):
        raise ValueError("not enough distinct concepts for the requested topics")
    if num_docs < num_topics * rel_per_topic[1]:
        raise ValueError("num_docs too small for the requested relevant sets")
    pool = rng.sample(concepts, len(concepts))

    topics, preferences, topic_concepts = [], {}, []
    for t in range(num_topics):
        k = rng.randint(lo, hi)
        chosen, pool = pool[:k], pool[k:]
        qid = str(t + 1)
        words = [c.headword.capitalize() for c in chosen]
        title = words[0]
        for w in words[1:]:
            title += f" {rng.choice(CONNECTIVES)} {w}"
        topics.append(Topic(qid, title))
        preferences[qid] = {c.headword: rng.random() < translit_bias for c in chosen}
        topic_concepts.append(chosen)

    ordinals = list(range(num_docs))
    rng.shuffle(ordinals)
    owner = {}
    cursor = 0
    for t in range(num_topics):
        n_rel = rng.randint(*rel_per_topic)
        for o in ordinals[cursor:cursor + n_rel]:
            owner[o] = t
        cursor += n_rel

    qrels = Qrels()
    docs = []
    width = len(str(num_docs))
    for o in range(num_docs):
        docno = f"D{o:0{width}d}"
        words = _filler(rng, rng.randint(*doc_length))
        for c in concepts:
            for use_tl in (False, True):
                if rng.random() < background_rate:
                    words.insert(rng.randrange(len(words) + 1), c.form(use_tl))
        t = owner.get(o)
        if t is not None:
            qid = topics[t].qid
            mentioned = [c for c in topic_concepts[t] if rng.random() < 0.8] or [rng.choice(topic_concepts[t])]
            for c in mentioned:
                favoured = preferences[qid][c.headword]
                use_tl = favoured if rng.random() < fidelity else not favoured
                for _ in range(rng.randint(1, 3)):
                    words.insert(rng.randrange(len(words) + 1), c.form(use_tl))
            qrels.add(qid, docno, rng.choice((1, 1, 1, 2)))
        docs.append(Document(docno, " ".join(words)))

    # judged non-relevant documents
    for t, topic in enumerate(topics):
        for o in rng.sample(range(num_docs), min(5, num_docs)):
            docno = f"D{o:0{width}d}"
            if owner.get(o) != t:
                qrels.add(topic.qid, docno, 0)
    return SyntheticCollection(docs, topics, qrels, dictionary, preferences)


def transliteration_favoured_collection(seed=0, num_docs=120, num_topics=10) -> SyntheticCollection:
    """Every topic's relevant documents use transliterations only, and the
    translated forms appear only in non-relevant documents.

    The translated (EHT) query retrieves nothing relevant here, so the
    refined query wins by a wide margin.
    """
    return make_collection(seed, num_docs, num_topics, terms_per_topic=(1, 2), translit_bias=1.0,
                           fidelity=1.0, background_rate=0.0, rel_per_topic=(3, 8))


def dense_collection(seed=0, num_docs=2000, num_topics=50, mention_rate=0.6) -> SyntheticCollection:
    """Documents mention most concepts in both forms, so every query matches
    well over a thousand documents.  Used for cutoff-scale checks."""
    return make_collection(seed, num_docs, num_topics, terms_per_topic=(1, 1), background_rate=mention_rate,
                           doc_length=(5, 10), rel_per_topic=(5, 20))


def democracy_collection() -> SyntheticCollection:
    """Small hand-built collection for the query "Democracy in India".

    Relevant documents say डेमोक्रेसी and भारत; non-relevant ones mention
    लोकतंत्र in other contexts.
    """
    texts = {
        "D01": "भारत में डेमोक्रेसी की जड़ें गहरी हैं",
        "D02": "डेमोक्रेसी और भारत के चुनाव",
        "D03": "भारत की डेमोक्रेसी पर रिपोर्ट",
        "D04": "लोकतंत्र शब्द का इतिहास यूनान से",
        "D05": "यूरोप में लोकतंत्र और लोकतंत्र के सिद्धांत",
        "D06": "इंडिया टीम का क्रिकेट मैच",
        "D07": "भारत में मौसम का हाल",
        "D08": "लोकतंत्र दिवस पर अमेरिका में कार्यक्रम",
    }
    docs = [Document(k, v) for k, v in texts.items()]
    qrels = Qrels()
    for d in ("D01", "D02", "D03"):
        qrels.add("26", d, 1)
    for d in ("D04", "D05", "D06", "D07", "D08"):
        qrels.add("26", d, 0)
    topics = [Topic("26", "Democracy in India")]
    return SyntheticCollection(docs, topics, qrels, default_dictionary(),
                               {"26": {"democracy": True, "india": False}})
