"""Bundled word lists backing the text feature extractor.

All lists ship as plain UTF-8, one-entry-per-line resource files so that
deployments can audit or swap them without touching code.  The closed-class
part-of-speech sets are small enough to live here directly.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources


def _load_lines(name: str) -> list[str]:
    text = resources.files("spamdrift.resources").joinpath(name).read_text("utf-8")
    return [line.strip() for line in text.splitlines() if line.strip()]


@lru_cache(maxsize=None)
def stopwords() -> frozenset[str]:
    return frozenset(_load_lines("stopwords.txt"))


@lru_cache(maxsize=None)
def easy_words() -> frozenset[str]:
    return frozenset(_load_lines("easy_words.txt"))


@lru_cache(maxsize=None)
def sentiment_lexicon() -> dict[str, float]:
    """word -> polarity score in [-1, 1]."""
    out: dict[str, float] = {}
    for line in _load_lines("sentiment_lexicon.txt"):
        word, score = line.split("\t")
        out[word] = float(score)
    return out


@lru_cache(maxsize=None)
def emotion_lexicon() -> dict[str, str]:
    """word -> one of anger / fear / happiness / sadness / surprise."""
    out: dict[str, str] = {}
    for line in _load_lines("emotion_lexicon.txt"):
        word, emotion = line.split("\t")
        out[word] = emotion
    return out


EMOTIONS = ("anger", "fear", "happiness", "sadness", "surprise")

# Closed-class sets for the heuristic tagger.  Stability and determinism are
# the contract here, not parity with a trained tagger.
PRONOUNS = frozenset(
    """i me my mine myself we us our ours ourselves you your yours yourself
    yourselves he him his himself she her hers herself it its itself they
    them their theirs themselves who whom whose which what this that these
    those anybody anyone anything everybody everyone everything nobody
    someone somebody something none""".split()
)

INTERJECTIONS = frozenset(
    """oh wow ouch hey hi hello yay hooray alas oops ugh hmm ah aha eh huh
    yikes whoa bravo phew psst shh uh um er gosh geez darn damn yuck
    hurrah""".split()
)

DETERMINERS = frozenset(
    """a an the some any each every either neither much many few several all
    both no another""".split()
)

PREPOSITIONS_CONJUNCTIONS = frozenset(
    """of in on at by for with about against between into through during
    before after above below to from up down out off over under again and
    but or nor so yet if because as until while than although though unless
    since whether""".split()
)

COMMON_ADVERBS = frozenset(
    """very too also just never always often sometimes soon now then here
    there quite rather almost already still even maybe perhaps instead
    anywhere everywhere nowhere somewhat seldom rarely usually away back
    well""".split()
)

COMMON_ADJECTIVES = frozenset(
    """good bad big small large little new old great high low long short
    hot cold nice fine fresh clean dirty cheap free fast slow happy sad
    angry best worst better worse tasty friendly rude fair poor rich full
    empty busy quiet loud early late easy hard safe wrong right""".split()
)

COMMON_VERBS = frozenset(
    """be am is are was were been being have has had having do does did
    doing go goes went gone get gets got make makes made say says said see
    sees saw seen know knows knew take takes took come comes came want
    wants wanted give gives gave use uses used find finds found tell tells
    told ask asks asked work works worked call calls called try tries
    tried need needs needed feel feels felt leave leaves left put puts sat
    sit sits eat eats ate order ordered visit visited recommend recommends
    recommended love loved hate hated like liked enjoy enjoyed wait waited
    pay paid buy bought serve served look looked seem seemed think thinks
    thought""".split()
)

COMMON_NOUNS = frozenset(
    """food place time service staff restaurant hotel room people day
    night price menu table order experience review wine beer coffee
    breakfast lunch dinner drink dish meal taste flavor atmosphere
    location man woman kid child family friend friends money page article
    edit revision wiki city street year week month hour minute cat dog mat
    house""".split()
)
