"""Content-based feature extraction from raw review text.

One tokenizer drives every count and readability feature so the numbers stay
mutually consistent.  The rules are deliberately simple and fully documented,
because downstream tests recompute them independently:

* Tokens are maximal runs of ``[A-Za-z0-9']`` (words) or of anything else
  that is not whitespace (punctuation runs).  URLs are matched first and kept
  as single word tokens.
* A sentence is a segment between ``[.!?]+`` boundaries that contains at
  least one word token; nonempty text counts at least one sentence.
* Syllables: number of ``[aeiouy]+`` groups in the lowercased alphabetic
  form of the word; a trailing silent "e" (not "le"/"ee"/"ye") drops one
  group when more than one remains; minimum one syllable per nonempty word.
* A difficult word has three or more syllables and is not on the bundled
  easy-word list.
* Reading time assumes 3.83 words per second.
* Polarity is the mean lexicon score over matched tokens; emotion scores are
  the share of matched emotion tokens per emotion.

Word-grams (unigrams and bigrams) are built from a separate preprocessing
pass: URLs removed, lowercased, alphabetic tokens only, stop words dropped,
suffix-stemmed.  Grams are filtered by document frequency over a trailing
reference corpus maintained in :class:`VocabState`.
"""

from __future__ import annotations

import math
import re
from collections import Counter, deque
from dataclasses import dataclass, field

from .config import VocabConfig
from .lexicons import (
    COMMON_ADJECTIVES,
    COMMON_ADVERBS,
    COMMON_NOUNS,
    COMMON_VERBS,
    DETERMINERS,
    EMOTIONS,
    INTERJECTIONS,
    PREPOSITIONS_CONJUNCTIONS,
    PRONOUNS,
    easy_words,
    emotion_lexicon,
    sentiment_lexicon,
    stopwords,
)

# Documented in README with test vectors.
URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)

_TOKEN_RE = re.compile(r"[A-Za-z0-9']+|[^\sA-Za-z0-9']+")
_SENTENCE_SPLIT_RE = re.compile(r"[.!?]+")
_ALPHA_RE = re.compile(r"[a-z]+")
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")

WORDS_PER_SECOND = 3.83

LabelT = str  # "spam" | "nonspam"


@dataclass(frozen=True)
class RawEvent:
    """One review or revision as it arrives on the stream."""

    event_id: str
    user_id: str
    item_id: str
    timestamp: float            # UTC seconds
    text: str
    rating: int | None = None   # 1..5 when present
    label: LabelT | None = None
    extra: dict[str, float] | None = None   # optional numeric passthrough columns

    def __post_init__(self) -> None:
        if self.rating is not None and not 1 <= self.rating <= 5:
            raise ValueError(f"rating out of range: {self.rating}")


@dataclass
class Token:
    text: str
    is_word: bool
    is_url: bool = False


def tokenize(text: str) -> list[Token]:
    """Word, URL, and punctuation tokens, in order of appearance."""
    tokens: list[Token] = []
    pos = 0
    for m in URL_RE.finditer(text):
        tokens.extend(_scan_plain(text[pos:m.start()]))
        tokens.append(Token(m.group(), is_word=True, is_url=True))
        pos = m.end()
    tokens.extend(_scan_plain(text[pos:]))
    return tokens


def _scan_plain(chunk: str) -> list[Token]:
    out = []
    for m in _TOKEN_RE.finditer(chunk):
        tok = m.group()
        out.append(Token(tok, is_word=bool(re.match(r"[A-Za-z0-9']", tok))))
    return out


def count_syllables(word: str) -> int:
    w = "".join(c for c in word.lower() if c.isalpha())
    if not w:
        return 0
    groups = len(_VOWEL_GROUP_RE.findall(w))
    if groups > 1 and w.endswith("e") and not w.endswith(("le", "ee", "ye")):
        groups -= 1
    return max(1, groups)


def split_sentences(text: str) -> list[str]:
    return [seg for seg in _SENTENCE_SPLIT_RE.split(text) if _TOKEN_RE.search(seg)]


def _sentence_count(text: str, n_words: int) -> int:
    if n_words == 0:
        return 0
    segs = [s for s in split_sentences(text) if any(t.is_word for t in tokenize(s))]
    return max(1, len(segs))


def flesch_score(text: str) -> float:
    """Reading-ease score; empty text maps to the 0.0 sentinel."""
    words = [t for t in tokenize(text) if t.is_word]
    if not words:
        return 0.0
    n_words = len(words)
    n_sent = _sentence_count(text, n_words)
    n_syll = sum(count_syllables(t.text) for t in words)
    return 206.835 - 1.015 * (n_words / n_sent) - 84.6 * (n_syll / n_words)


def mcalpine_eflaw(text: str) -> float:
    """(words + miniwords) / sentences; miniwords have at most 3 letters.

    Values above 25 read as unfavorable for non-native speakers.
    """
    words = [t for t in tokenize(text) if t.is_word]
    if not words:
        return 0.0
    n_sent = _sentence_count(text, len(words))
    mini = sum(1 for t in words if len([c for c in t.text if c.isalpha()]) <= 3)
    return (len(words) + mini) / n_sent


def polarity_and_emotion(text: str) -> tuple[float, dict[str, float]]:
    """Lexicon-scored polarity in [-1, 1] and per-emotion shares in [0, 1]."""
    lex = sentiment_lexicon()
    emo = emotion_lexicon()
    scores: list[float] = []
    emo_counts: Counter[str] = Counter()
    for tok in tokenize(text):
        if not tok.is_word or tok.is_url:
            continue
        w = tok.text.lower().strip("'")
        if w in lex:
            scores.append(lex[w])
        if w in emo:
            emo_counts[emo[w]] += 1
    polarity = sum(scores) / len(scores) if scores else 0.0
    total = sum(emo_counts.values())
    emotions = {e: (emo_counts[e] / total if total else 0.0) for e in EMOTIONS}
    return polarity, emotions


def _tag(word: str) -> str | None:
    """Heuristic single-token POS tag; returns None for untagged tokens."""
    w = word.lower().strip("'")
    if not w or not w[0].isalpha():
        return None
    if w in PRONOUNS:
        return "pronoun"
    if w in INTERJECTIONS:
        return "interjection"
    if w in DETERMINERS or w in PREPOSITIONS_CONJUNCTIONS:
        return None
    if w in COMMON_ADVERBS or (len(w) > 3 and w.endswith("ly")):
        return "adverb"
    if w in COMMON_VERBS:
        return "verb"
    if w in COMMON_ADJECTIVES:
        return "adjective"
    if w in COMMON_NOUNS:
        return "noun"
    if len(w) > 4 and w.endswith(("ing", "ed")):
        return "verb"
    if w.endswith(("ous", "ful", "ive", "able", "ible", "less", "ish", "ary", "ic")):
        return "adjective"
    if w.endswith(("tion", "sion", "ment", "ness", "ity", "ance", "ence", "ship", "hood", "ism")):
        return "noun"
    return "noun"  # unknown open-class tokens default to noun


CONTENT_KEYS = (
    "adjective_ratio",
    "adverb_ratio",
    "char_count",
    "difficult_word_count",
    "emotion_anger",
    "emotion_fear",
    "emotion_happiness",
    "emotion_sadness",
    "emotion_surprise",
    "flesch",
    "interjection_ratio",
    "eflaw",
    "noun_ratio",
    "polarity",
    "pronoun_ratio",
    "punctuation_ratio",
    "reading_time",
    "url_count",
    "verb_ratio",
    "word_count",
)

RATING_KEYS = ("rating", "rating_polarity_deviation")


def extract_content_features(event: RawEvent, include_rating: bool = True) -> dict[str, float]:
    """Every content feature key for the configured profile, deterministic.

    Empty text yields zero counts and ratios, zero polarity and emotions,
    and the 0.0 readability sentinel.
    """
    text = event.text
    tokens = tokenize(text)
    words = [t for t in tokens if t.is_word]
    n_tokens = len(tokens)
    n_words = len(words)

    pos_counts: Counter[str] = Counter()
    for t in words:
        if t.is_url:
            continue
        tag = _tag(t.text)
        if tag:
            pos_counts[tag] += 1
    n_punct = sum(1 for t in tokens if not t.is_word)

    def ratio(count: int) -> float:
        return count / n_tokens if n_tokens else 0.0

    polarity, emotions = polarity_and_emotion(text)
    difficult = sum(
        1
        for t in words
        if not t.is_url
        and count_syllables(t.text) >= 3
        and "".join(c for c in t.text.lower() if c.isalpha()) not in easy_words()
    )

    features: dict[str, float] = {
        "adjective_ratio": ratio(pos_counts["adjective"]),
        "adverb_ratio": ratio(pos_counts["adverb"]),
        "char_count": float(len(text)),
        "difficult_word_count": float(difficult),
        "flesch": flesch_score(text),
        "interjection_ratio": ratio(pos_counts["interjection"]),
        "eflaw": mcalpine_eflaw(text),
        "noun_ratio": ratio(pos_counts["noun"]),
        "polarity": polarity,
        "pronoun_ratio": ratio(pos_counts["pronoun"]),
        "punctuation_ratio": ratio(n_punct),
        "reading_time": n_words / WORDS_PER_SECOND,
        "url_count": float(sum(1 for t in tokens if t.is_url)),
        "verb_ratio": ratio(pos_counts["verb"]),
        "word_count": float(n_words),
    }
    for e in EMOTIONS:
        features[f"emotion_{e}"] = emotions[e]

    if include_rating:
        rating = float(event.rating) if event.rating is not None else 0.0
        features["rating"] = rating
        if event.rating is not None:
            likert = 2.5 * (polarity + 1.0)
            # Stored unclamped; the observable range is [0, 5].
            features["rating_polarity_deviation"] = abs(rating - likert)
        else:
            features["rating_polarity_deviation"] = 0.0

    if event.extra:
        for k, v in event.extra.items():
            key = k if k.startswith("extra_") else f"extra_{k}"
            features[key] = float(v)
    return features


# --- word-grams ------------------------------------------------------------

def stem(token: str) -> str:
    """Rule-based suffix stemmer; the first matching rule applies."""
    if len(token) > 4 and token.endswith("ies"):
        return token[:-3] + "y"
    if len(token) > 5 and token.endswith("ing"):
        return token[:-3]
    if len(token) > 4 and token.endswith("ed"):
        return token[:-2]
    if len(token) > 3 and token.endswith("s") and not token.endswith("ss"):
        return token[:-1]
    return token


def preprocess_tokens(text: str) -> list[str]:
    """Lowercased, URL-free, stop-word-free, stemmed alphabetic tokens."""
    cleaned = URL_RE.sub(" ", text).lower()
    stops = stopwords()
    out = []
    for tok in _ALPHA_RE.findall(cleaned):
        if len(tok) < 2 or tok in stops:
            continue
        stemmed = stem(tok)
        if len(stemmed) < 2 or stemmed in stops:
            continue
        out.append(stemmed)
    return out


@dataclass
class VocabState:
    """Trailing reference corpus of per-document gram sets.

    Single-writer: one instance per extractor pipeline.  During the first
    ``cold_start_docs`` documents every gram passes; afterwards a gram passes
    when its document frequency over the window lies in [min_df, max_df].
    """

    config: VocabConfig = field(default_factory=VocabConfig)
    docs_seen: int = 0
    _window: deque[frozenset[str]] = field(default_factory=deque)
    _doc_counts: Counter = field(default_factory=Counter)

    def passes(self, gram: str) -> bool:
        if self.docs_seen < self.config.cold_start_docs or not self._window:
            return True
        frac = self._doc_counts.get(gram, 0) / len(self._window)
        return self.config.min_df <= frac <= self.config.max_df

    def add_document(self, grams: frozenset[str]) -> None:
        self._window.append(grams)
        for g in grams:
            self._doc_counts[g] += 1
        while len(self._window) > self.config.window_docs:
            old = self._window.popleft()
            for g in old:
                self._doc_counts[g] -= 1
                if self._doc_counts[g] == 0:
                    del self._doc_counts[g]
        self.docs_seen += 1


def build_wordgrams(text: str, vocab: VocabState) -> dict[str, int]:
    """Unigram/bigram counts filtered by the vocab's document frequencies.

    Filtering reads the pre-document state, then the document updates the
    reference corpus (read-then-update, mirroring the profile statistics).
    """
    tokens = preprocess_tokens(text)
    grams: Counter[str] = Counter(tokens)
    for a, b in zip(tokens, tokens[1:]):
        grams[f"{a} {b}"] += 1
    row = {g: c for g, c in grams.items() if vocab.passes(g)}
    vocab.add_document(frozenset(grams))
    return row
