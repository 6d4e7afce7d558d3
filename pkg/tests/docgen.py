"""Seeded random documents for property and acceptance tests."""
import random

from tlinker import annotate
from tlinker.tlinks import ClassifierConfig

VERBS = [
    "ate", "went", "collapsed", "drawing", "march", "attacked", "dropped", "fled",
    "said", "doing", "voted", "negotiated", "watching", "host", "launch", "draw",
    "returned", "signed", "celebrated", "held", "gathered",
]
FILLER = [
    "Sam", "the", "an", "apple", "he", "was", "school", "homework", "to", "of",
    "team", "bank", "red", "bed", "it's", "O'Neil", "café", "naïve", "x-ray",
]
SIGNALS = [
    "while", "previously", "in advance", "since", "and", "then", "before",
    "gone by", "in days of yore", "will", "will", "up to now", "past",
]
TIME = ["Monday", "morning", "Jan", "2015", "12", "hours", "evening", "March", "Sept", "min"]
GAPS = [" ", " ", " ", ", ", ". ", "! ", "? ", " & ", " <b> ", "\r\n", "\t", " -- ", '"', " 'q' "]


def random_text(rng: random.Random, max_words: int = 40) -> str:
    pools = [(VERBS, 4), (FILLER, 5), (SIGNALS, 2), (TIME, 2)]
    words = []
    for _ in range(rng.randint(0, max_words)):
        pool = rng.choices([p for p, _ in pools], weights=[w for _, w in pools])[0]
        words.append(rng.choice(pool))
    parts = []
    for w in words:
        parts.append(w)
        parts.append(rng.choice(GAPS))
    if parts and rng.random() < 0.7:
        parts[-1] = "."
    return "".join(parts)


def random_config(rng: random.Random) -> ClassifierConfig:
    return ClassifierConfig(
        window=rng.choice([0, 1, 2, 2, 3]),
        max_sentence_gap=rng.choice([0, 1, 1, 2, None]),
        emit_inverse=rng.random() < 0.7,
    )


def random_document(rng: random.Random, config: ClassifierConfig | None = None, max_words: int = 40):
    return annotate(random_text(rng, max_words), doc_id=f"doc{rng.randint(0, 999)}", config=config)
