"""Text pipeline: raw text to ordered sentences of normalized terms.

Order of operations for every document:
split -> tokenize -> POS filter (optional) -> stop-word removal -> morphology.
"""

from __future__ import annotations

import os
import re
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import EmptyDocument, MissingTags
from .morphology import Morphology, MorphologyMode, for_language, normalize_term

# ASCII set plus the Arabic comma, semicolon and question mark.
DEFAULT_DELIMITERS = frozenset(",;?!:.،؛؟")
DEFAULT_TAG_PREFIXES = frozenset({"NN", "VB"})
STOPWORDS_ENV = "LSASUMM_STOPWORDS"

_TAGGED = re.compile(r"^(?P<surface>.+)/(?P<tag>[^\s/]+)$")


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    tag: str | None = None

    def __post_init__(self):
        if self.tag is not None and not self.tag:
            raise ValueError("tag must be non-empty when present")


@dataclass(frozen=True)
class Sentence:
    index: int
    surface: str
    terms: tuple[str, ...]
    end: str = ""

    @property
    def text(self) -> str:
        return self.surface + self.end


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[Sentence, ...]
    vocabulary: Mapping[str, int]

    @property
    def n(self) -> int:
        return len(self.sentences)

    @property
    def m(self) -> int:
        return len(self.vocabulary)

    @cached_property
    def terms(self) -> tuple[str, ...]:
        """Vocabulary terms ordered by row id."""
        return tuple(sorted(self.vocabulary, key=self.vocabulary.__getitem__))

    @cached_property
    def sentence_term_ids(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(self.vocabulary[t] for t in s.terms) for s in self.sentences)


@dataclass(frozen=True)
class PipelineConfig:
    sentence_delimiters: frozenset[str] = DEFAULT_DELIMITERS
    stopwords: frozenset[str] = frozenset()
    morphology_mode: MorphologyMode = MorphologyMode.WORD
    pos_filter_enabled: bool = False
    allowed_tag_prefixes: frozenset[str] = DEFAULT_TAG_PREFIXES
    language: str = "ar"

    def __post_init__(self):
        if not self.sentence_delimiters:
            raise ValueError("sentence_delimiters must be non-empty")
        if self.pos_filter_enabled and not self.allowed_tag_prefixes:
            raise ValueError("allowed_tag_prefixes must be non-empty when POS filtering is enabled")
        object.__setattr__(self, "morphology_mode", MorphologyMode(self.morphology_mode))
        object.__setattr__(self, "stopwords", frozenset(normalize_token(w) for w in self.stopwords))

    @classmethod
    def for_language(cls, language: str = "ar", **kwargs) -> "PipelineConfig":
        kwargs.setdefault("stopwords", default_stopwords(language))
        return cls(language=language, **kwargs)


def normalize_token(token: str) -> str:
    return unicodedata.normalize("NFC", token).lower()


def read_stopword_file(path) -> frozenset[str]:
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                words.add(normalize_token(line))
    return frozenset(words)


def default_stopwords(language: str = "ar") -> frozenset[str]:
    override = os.environ.get(STOPWORDS_ENV)
    if override:
        return read_stopword_file(override)
    path = resources.files("lsasumm.data").joinpath(f"stopwords_{language}.txt")
    with resources.as_file(path) as p:
        return read_stopword_file(p)


def _split_with_ends(text: str, delimiters: Iterable[str]) -> list[tuple[str, str]]:
    delimiters = frozenset(delimiters)
    out: list[tuple[str, str]] = []
    start = 0
    for pos, ch in enumerate(text):
        if ch in delimiters:
            segment = text[start:pos].strip()
            if segment:
                out.append((segment, ch))
            start = pos + 1
    tail = text[start:].strip()
    if tail:
        out.append((tail, ""))
    return out


def split_sentences(text: str, delimiters: Iterable[str] = DEFAULT_DELIMITERS) -> list[str]:
    """Split on any delimiter character; empty segments are dropped and a
    trailing segment without a terminator is kept."""
    return [surface for surface, _ in _split_with_ends(text, delimiters)]


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def strip_punctuation(token: str) -> str:
    start, end = 0, len(token)
    while start < end and _is_punct(token[start]):
        start += 1
    while end > start and _is_punct(token[end - 1]):
        end -= 1
    return token[start:end]


def tokenize(surface: str) -> list[str]:
    tokens = []
    for run in surface.split():
        token = strip_punctuation(run)
        if token:
            tokens.append(token)
    return tokens


def remove_stopwords(tokens: Sequence[str], stoplist: Iterable[str]) -> list[str]:
    stoplist = stoplist if isinstance(stoplist, (set, frozenset)) else set(stoplist)
    return [t for t in tokens if t not in stoplist]


def pos_filter(tokens: Sequence[TaggedToken], allowed_prefixes: Iterable[str]) -> list[TaggedToken]:
    prefixes = tuple(allowed_prefixes)
    if not prefixes:
        return []
    return [t for t in tokens if t.tag is not None and t.tag.startswith(prefixes)]


def parse_tagged(token: str) -> TaggedToken | None:
    match = _TAGGED.match(token)
    if match is None:
        return None
    return TaggedToken(match["surface"], match["tag"])


def is_tagged(text: str) -> bool:
    """True iff every whitespace-separated token has the ``surface/TAG`` form."""
    runs = text.split()
    return bool(runs) and all(_TAGGED.match(r) for r in runs)


def _tagged_sentences(text: str, delimiters: frozenset[str]) -> list[tuple[str, str, list[TaggedToken]]]:
    # Punctuation carries its own tag in tagged input, so sentence boundaries
    # are found at the token level rather than by character splitting.
    out = []
    current: list[TaggedToken] = []

    def close(end: str):
        if current:
            surface = " ".join(t.surface for t in current)
            out.append((surface, end, list(current)))
            current.clear()

    for run in text.split():
        tok = parse_tagged(run)
        surface = tok.surface
        end = ""
        while surface and surface[-1] in delimiters:
            end = end or surface[-1]
            surface = surface[:-1]
        surface = strip_punctuation(surface)
        if surface:
            current.append(TaggedToken(surface, tok.tag))
        if end:
            close(end)
    close("")
    return out


def build_document(raw: RawDocument, config: PipelineConfig, morphology: Morphology | None = None) -> Document:
    morphology = morphology or for_language(config.language)
    text = unicodedata.normalize("NFC", raw.text)
    tagged = is_tagged(text)
    if config.pos_filter_enabled and not tagged:
        raise MissingTags(f"document {raw.id!r}: POS filtering requested on untagged input")

    if tagged:
        units = []
        for surface, end, toks in _tagged_sentences(text, config.sentence_delimiters):
            if config.pos_filter_enabled:
                toks = pos_filter(toks, config.allowed_tag_prefixes)
            units.append((surface, end, [t.surface for t in toks]))
    else:
        units = [(s, e, tokenize(s)) for s, e in _split_with_ends(text, config.sentence_delimiters)]
    if not units:
        raise EmptyDocument(f"document {raw.id!r} has no sentences")

    vocabulary: dict[str, int] = {}
    sentences = []
    for j, (surface, end, tokens) in enumerate(units):
        tokens = remove_stopwords([normalize_token(t) for t in tokens], config.stopwords)
        terms = tuple(normalize_term(t, config.morphology_mode, morphology) for t in tokens)
        for term in terms:
            vocabulary.setdefault(term, len(vocabulary))
        sentences.append(Sentence(j, surface, terms, end))
    return Document(raw.id, tuple(sentences), vocabulary)


def read_document(path, doc_id: str | None = None) -> RawDocument:
    path = Path(path)
    return RawDocument(doc_id or path.stem, path.read_text(encoding="utf-8"))
