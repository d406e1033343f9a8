"""Morphology providers for term normalization.

Two Arabic normalizers are provided: a light stemmer that strips one prefix
and one suffix from data-file tables, and a dictionary-free root extractor in
the style of the ISRI stemmer (Taghva et al., 2005).  English text uses the
identity provider, so stem and root modes leave tokens unchanged.
"""

from __future__ import annotations

import json
import re
from enum import Enum
from importlib import resources
from typing import Protocol, Sequence


class MorphologyMode(str, Enum):
    WORD = "word"
    STEM = "stem"
    ROOT = "root"


class Morphology(Protocol):
    def stem(self, token: str) -> str: ...

    def root(self, token: str) -> str: ...


class LightStemmer:
    """Strip at most one prefix and one suffix, longest match first.

    An affix is only removed when at least ``min_length`` characters remain.
    """

    def __init__(self, prefixes: Sequence[str], suffixes: Sequence[str], min_length: int = 2):
        self.prefixes = sorted(set(prefixes), key=lambda a: (-len(a), a))
        self.suffixes = sorted(set(suffixes), key=lambda a: (-len(a), a))
        self.min_length = min_length

    @classmethod
    def from_file(cls, path=None, min_length: int = 2) -> "LightStemmer":
        if path is None:
            text = resources.files("lsasumm.data").joinpath("arabic_affixes.json").read_text("utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        table = json.loads(text)
        return cls(table["prefixes"], table["suffixes"], min_length=min_length)

    def stem(self, token: str) -> str:
        if len(token) <= self.min_length:
            return token
        for prefix in self.prefixes:
            if token.startswith(prefix) and len(token) - len(prefix) >= self.min_length:
                token = token[len(prefix):]
                break
        for suffix in self.suffixes:
            if token.endswith(suffix) and len(token) - len(suffix) >= self.min_length:
                token = token[: -len(suffix)]
                break
        return token


ALEF = "ا"
TEH = "ت"
TEH_MARBUTA = "ة"
MEEM = "م"
NOON = "ن"
WAW = "و"
YEH = "ي"
HAMZA_ON_YEH = "ئ"

_SHORT_VOWELS = re.compile("[ً-ْ]")
_INITIAL_HAMZA = re.compile("^[آأإ]")


class RootExtractor:
    """Staged root extraction without a root dictionary.

    Stages: drop diacritics, strip length-3/2 affixes, drop a doubled
    connective waw, normalize initial hamza, then match the remaining
    word against tri- and quadri-literal patterns by length (4 to 7).
    Words outside that range come back normalized but otherwise intact.
    """

    prefixes3 = ("كال", "بال", "ولل", "وال")
    prefixes2 = ("ال", "لل")
    prefixes1 = ("ل", "ب", "ف", "س", "و", "ي", "ت", "ن", "ا")
    suffixes3 = ("تمل", "همل", "تان", "تين", "كمل")
    suffixes2 = ("ون", "ات", "ان", "ين", "تن", "كم", "هن", "نا", "يا", "ها", "تم", "كن", "ني", "وا", "ما", "هم")
    suffixes1 = ("ة", "ه", "ي", "ك", "ت", "ا", "ن")

    def stem(self, token: str) -> str:
        return self.root(token)

    def root(self, token: str) -> str:
        word = _SHORT_VOWELS.sub("", token)
        word = self._strip_long_prefix(word)
        word = self._strip_long_suffix(word)
        if len(word) >= 4 and word.startswith(WAW + WAW):
            word = word[1:]
        word = _INITIAL_HAMZA.sub(ALEF, word)

        if len(word) == 4:
            return self._four(word)
        if len(word) == 5:
            return self._after_five(self._five_to_three(word))
        if len(word) == 6:
            return self._after_six(self._six_to_three(word))
        if len(word) == 7:
            word = self._strip_suffix1(word)
            if len(word) == 7:
                word = self._strip_prefix1(word)
            if len(word) == 6:
                word = self._after_six(self._six_to_three(word))
        return word

    def _strip_long_prefix(self, word: str) -> str:
        if len(word) >= 6:
            for p in self.prefixes3:
                if word.startswith(p):
                    return word[3:]
        if len(word) >= 5:
            for p in self.prefixes2:
                if word.startswith(p):
                    return word[2:]
        return word

    def _strip_long_suffix(self, word: str) -> str:
        if len(word) >= 6:
            for s in self.suffixes3:
                if word.endswith(s):
                    return word[:-3]
        if len(word) >= 5:
            for s in self.suffixes2:
                if word.endswith(s):
                    return word[:-2]
        return word

    def _strip_suffix1(self, word: str) -> str:
        for s in self.suffixes1:
            if word.endswith(s):
                return word[:-1]
        return word

    def _strip_prefix1(self, word: str) -> str:
        for p in self.prefixes1:
            if word.startswith(p):
                return word[1:]
        return word

    def _four(self, w: str) -> str:
        if w[0] == MEEM:  # mf3l
            return w[1:]
        if w[1] == ALEF:  # fa3l
            return w[0] + w[2:]
        if w[2] in (ALEF, WAW, YEH):  # f3al, f3ol, f3il
            return w[:2] + w[3]
        if w[3] == TEH_MARBUTA:  # f3la
            return w[:3]
        w = self._strip_suffix1(w)
        if len(w) == 4:
            w = self._strip_prefix1(w)
        return w

    def _five_to_three(self, w: str) -> str:
        if w[0] == ALEF and w[2] in (ALEF, TEH):
            return w[1] + w[3:]
        if w[0] == MEEM and w[3] in (ALEF, YEH, WAW):
            return w[1:3] + w[4]
        if w[0] in (ALEF, TEH, MEEM) and w[4] == TEH_MARBUTA:
            return w[1:4]
        if w[0] in (MEEM, YEH, TEH) and w[2] == TEH:
            return w[1] + w[3:]
        if w[0] in (MEEM, TEH) and w[2] == ALEF:
            return w[1] + w[3:]
        if w[2] in (ALEF, WAW) and w[4] == TEH_MARBUTA:
            return w[:2] + w[3]
        if w[0] in (ALEF, MEEM) and w[1] == NOON:
            return w[2:]
        if w[0] == ALEF and w[3] == ALEF:
            return w[1:3] + w[4]
        if w[3] == ALEF and w[4] == NOON:
            return w[:3]
        if w[0] == TEH and w[3] == YEH:
            return w[1:3] + w[4]
        if w[1] == ALEF and w[3] == WAW:
            return w[0] + w[2] + w[4]
        if w[1] == WAW and w[2] == ALEF:
            return w[0] + w[3:]
        if w[2] == ALEF and w[3] == HAMZA_ON_YEH:
            return w[:2] + w[4]
        if w[1] == ALEF and w[4] == TEH_MARBUTA:
            return w[0] + w[2:4]
        if w[2] == ALEF and w[4] == YEH:
            return w[:2] + w[3]
        w = self._strip_suffix1(w)
        if len(w) == 5:
            w = self._strip_prefix1(w)
        return w

    def _five_to_four(self, w: str) -> str:
        if w[0] in (ALEF, TEH, MEEM):
            return w[1:]
        if w[4] == TEH_MARBUTA:
            return w[:4]
        if w[2] == ALEF:
            return w[:2] + w[3:]
        return w

    def _after_five(self, w: str) -> str:
        if len(w) == 4:
            return self._four(w)
        if len(w) == 5:
            return self._five_to_four(w)
        return w

    def _six_to_three(self, w: str) -> str:
        if w.startswith(ALEF + "ست") or w.startswith(MEEM + "ست"):
            return w[3:]
        if w[0] == MEEM and w[3] == ALEF and w[5] == TEH_MARBUTA:
            return w[1:3] + w[4]
        if w[0] == ALEF and w[2] == TEH and w[4] == ALEF:
            return w[1] + w[3] + w[5]
        if w[0] == ALEF and w[3] == WAW and w[2] == w[4]:
            return w[1] + w[4:]
        if w[0] == TEH and w[2] == ALEF and w[4] == YEH:
            return w[1] + w[3] + w[5]
        w = self._strip_suffix1(w)
        if len(w) == 6:
            w = self._strip_prefix1(w)
        return w

    def _six_to_four(self, w: str) -> str:
        if w[0] == ALEF and w[4] == ALEF:
            return w[1:4] + w[5]
        if w.startswith(MEEM + TEH):
            return w[2:]
        return w

    def _after_six(self, w: str) -> str:
        if len(w) == 5:
            return self._after_five(self._five_to_three(w))
        if len(w) == 6:
            return self._six_to_four(w)
        return w


class ArabicMorphology:
    def __init__(self, stemmer: LightStemmer | None = None, root_extractor: RootExtractor | None = None):
        self.stemmer = stemmer or LightStemmer.from_file()
        self.root_extractor = root_extractor or RootExtractor()

    def stem(self, token: str) -> str:
        return self.stemmer.stem(token)

    def root(self, token: str) -> str:
        return self.root_extractor.root(token)


class IdentityMorphology:
    def stem(self, token: str) -> str:
        return token

    def root(self, token: str) -> str:
        return token


_ARABIC: ArabicMorphology | None = None


def arabic() -> ArabicMorphology:
    global _ARABIC
    if _ARABIC is None:
        _ARABIC = ArabicMorphology()
    return _ARABIC


def for_language(language: str) -> Morphology:
    if language == "ar":
        return arabic()
    if language == "en":
        return IdentityMorphology()
    raise ValueError(f"unsupported language: {language!r}")


def normalize_term(token: str, mode: MorphologyMode | str, morphology: Morphology | None = None) -> str:
    mode = MorphologyMode(mode)
    if mode is MorphologyMode.WORD:
        return token
    morphology = morphology or arabic()
    if mode is MorphologyMode.STEM:
        return morphology.stem(token)
    return morphology.root(token)
