"""Grammars, sentence patterns, and the licensing relation.

A grammar is a vector of 13 binary syntactic parameters; a language is
the set of word-order patterns its parameter values license.  Licensing
is exact membership lookup in a precomputed index: the simulated learner
only ever needs the boolean "can this grammar parse this pattern", and
the multi-language databases this package mirrors ship every language's
extension rather than a parser.

Parameter order (leftmost first in bit strings): SP, HIP, HCP, OpT, NS,
NT, WhM, PI, TM, VtoI, ItoC, AH, QInv.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

PARAM_NAMES = (
    "SP", "HIP", "HCP", "OpT", "NS", "NT", "WhM",
    "PI", "TM", "VtoI", "ItoC", "AH", "QInv",
)
N_PARAMS = len(PARAM_NAMES)
N_CODES = 1 << N_PARAMS

OPT_INDEX = PARAM_NAMES.index("OpT")
NS_INDEX = PARAM_NAMES.index("NS")

TOKENS = frozenset({"S", "O1", "O2", "O3", "P", "Adv", "Aux", "Verb", "not", "never"})
DEC, Q, IMP = "DEC", "Q", "IMP"
FORCES = (DEC, Q, IMP)


class DomainError(ValueError):
    """Raised for malformed domain files or unknown grammars."""


@dataclass(frozen=True)
class Grammar:
    """An ordered vector of 13 binary parameter values."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != N_PARAMS:
            raise ValueError(f"grammar needs exactly {N_PARAMS} bits")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("grammar bits must be 0 or 1")

    @classmethod
    def from_string(cls, s: str) -> "Grammar":
        return cls(tuple(int(ch) for ch in s.strip()))

    @classmethod
    def from_int(cls, code: int) -> "Grammar":
        return cls(tuple((code >> i) & 1 for i in range(N_PARAMS)))

    def as_int(self) -> int:
        code = 0
        for i, b in enumerate(self.bits):
            code |= b << i
        return code

    def as_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def flipped(self, index: int) -> "Grammar":
        bits = list(self.bits)
        bits[index] = 1 - bits[index]
        return Grammar(tuple(bits))

    def __getitem__(self, index: int) -> int:
        return self.bits[index]


ENGLISH = Grammar.from_string("0001001100011")
NS_ENGLISH = ENGLISH.flipped(NS_INDEX)


@dataclass(frozen=True)
class Sentence:
    """A token pattern plus its illocutionary force."""

    tokens: tuple[str, ...]
    force: str

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("sentence needs at least one token")
        unknown = set(self.tokens) - TOKENS
        if unknown:
            raise ValueError(f"unknown tokens: {sorted(unknown)}")
        if self.force not in FORCES:
            raise ValueError(f"force must be one of {FORCES}")
        if self.force == IMP and "S" in self.tokens:
            raise ValueError("imperative patterns never carry an overt subject")

    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class SupersetRegistry:
    """Parameters whose two values generate nested languages.

    Each entry is (parameter index, superset value).  Only the
    null-subject parameter is registered by default.
    """

    entries: tuple[tuple[int, int], ...] = ((NS_INDEX, 1),)

    def __post_init__(self):
        seen = set()
        for index, value in self.entries:
            if not 0 <= index < N_PARAMS:
                raise ValueError(f"parameter index {index} out of range")
            if value not in (0, 1):
                raise ValueError("superset value must be 0 or 1")
            if index in seen:
                raise ValueError(f"duplicate registry index {index}")
            seen.add(index)

    @classmethod
    def empty(cls) -> "SupersetRegistry":
        return cls(())

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(is-registered mask, subset value) vectors for the kernels."""
        mask = np.zeros(N_PARAMS, dtype=np.uint8)
        subset = np.zeros(N_PARAMS, dtype=np.uint8)
        for index, superset_value in self.entries:
            mask[index] = 1
            subset[index] = 1 - superset_value
        return mask, subset


def _sentence_key(s: Sentence):
    return (s.force, s.tokens)


class Domain:
    """An immutable licensing index over grammars and sentences.

    Construction canonicalizes ordering (sentences by (force, tokens),
    grammars by bit string), so two domains with the same licensing
    relation compare equal and serialize identically.  Safe for
    concurrent read access.
    """

    def __init__(self, licensing: dict[Grammar, frozenset[Sentence]]):
        if not licensing:
            raise DomainError("no grammars found")
        sentences = sorted(
            {s for lang in licensing.values() for s in lang}, key=_sentence_key
        )
        if not sentences:
            raise DomainError("no sentences found")
        self._sentences = tuple(sentences)
        self._sid = {_sentence_key(s): i for i, s in enumerate(self._sentences)}
        self._grammars = tuple(sorted(licensing, key=lambda g: g.bits))
        self._row = {g.as_int(): r for r, g in enumerate(self._grammars)}
        lic = np.zeros((len(self._grammars), len(self._sentences)), dtype=bool)
        sid_cache: dict[frozenset, np.ndarray] = {}
        for r, g in enumerate(self._grammars):
            lang = licensing[g]
            ids = sid_cache.get(lang)
            if ids is None:
                ids = np.fromiter(
                    (self._sid[_sentence_key(s)] for s in lang), dtype=np.int64
                )
                sid_cache[lang] = ids
            lic[r, ids] = True
        self._lic = lic
        self._lic.setflags(write=False)
        lookup = np.full(N_CODES, -1, dtype=np.int32)
        for code, r in self._row.items():
            lookup[code] = r
        self._lookup = lookup
        self._lookup.setflags(write=False)
        self._class_ids_cache: dict[tuple[int, str], np.ndarray] = {}

    # -- queries ---------------------------------------------------------

    @property
    def grammars(self) -> tuple[Grammar, ...]:
        return self._grammars

    @property
    def sentences(self) -> tuple[Sentence, ...]:
        return self._sentences

    def __contains__(self, g: Grammar) -> bool:
        return g.as_int() in self._row

    def sentence_id(self, s: Sentence) -> int:
        """Index of a sentence, or -1 if the pattern is not in the domain."""
        return self._sid.get(_sentence_key(s), -1)

    def licenses(self, g: Grammar, s: Sentence) -> bool:
        """True iff grammar ``g`` licenses ``s``.  Total: unknown pairs are False."""
        row = self._row.get(g.as_int(), -1)
        if row < 0:
            return False
        sid = self._sid.get(_sentence_key(s), -1)
        if sid < 0:
            return False
        return bool(self._lic[row, sid])

    def language_of(self, g: Grammar) -> frozenset[Sentence]:
        row = self._row.get(g.as_int())
        if row is None:
            raise DomainError(f"grammar not in domain: {g.as_string()}")
        ids = np.flatnonzero(self._lic[row])
        return frozenset(self._sentences[i] for i in ids)

    def class_sentence_ids(self, g: Grammar, imperative: bool) -> np.ndarray:
        """Sorted sentence ids of g's imperative (or non-imperative) patterns."""
        key = (g.as_int(), "imp" if imperative else "nonimp")
        cached = self._class_ids_cache.get(key)
        if cached is not None:
            return cached
        row = self._row.get(g.as_int())
        if row is None:
            raise DomainError(f"grammar not in domain: {g.as_string()}")
        ids = np.array(
            [
                i
                for i in np.flatnonzero(self._lic[row])
                if (self._sentences[i].force == IMP) == imperative
            ],
            dtype=np.int32,
        )
        ids.setflags(write=False)
        self._class_ids_cache[key] = ids
        return ids

    def relabel_ids(self) -> np.ndarray:
        """Per-sentence id of the declarative twin of each imperative.

        Entry i holds the id of (tokens_i, DEC) when sentence i is an
        imperative and that declarative pattern exists in the domain;
        otherwise -1.
        """
        out = np.full(len(self._sentences), -1, dtype=np.int32)
        for i, s in enumerate(self._sentences):
            if s.force == IMP:
                out[i] = self._sid.get((DEC, s.tokens), -1)
        out.setflags(write=False)
        return out

    def kernel_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(code -> row lookup, row x sentence licensing matrix)."""
        return self._lookup, self._lic

    # -- serialization ---------------------------------------------------

    def save(self, target) -> None:
        """Write the licensing relation as TSV rows (grammar, tokens, force)."""
        own = isinstance(target, (str, bytes)) or hasattr(target, "__fspath__")
        fh = open(target, "w", encoding="utf-8", newline="\n") if own else target
        try:
            fh.write("# domain licensing table\n")
            fh.write("# grammar_bits\ttokens\tforce\n")
            for g in self._grammars:
                row = self._row[g.as_int()]
                bits = g.as_string()
                for sid in np.flatnonzero(self._lic[row]):
                    s = self._sentences[sid]
                    fh.write(f"{bits}\t{s.text()}\t{s.force}\n")
        finally:
            if own:
                fh.close()

    @classmethod
    def load(cls, source) -> "Domain":
        """Parse a domain TSV from a path, text stream, or byte stream."""
        own = isinstance(source, (str, bytes)) or hasattr(source, "__fspath__")
        if own:
            fh = open(source, "r", encoding="utf-8")
        elif isinstance(source, io.TextIOBase):
            fh = source
        else:
            fh = io.TextIOWrapper(source, encoding="utf-8")
        licensing: dict[Grammar, set[Sentence]] = {}
        try:
            for lineno, raw in enumerate(fh, 1):
                line = raw.rstrip("\n")
                if not line.strip() or line.lstrip().startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise DomainError(
                        f"line {lineno}: expected 3 tab-separated fields, got {len(parts)}"
                    )
                bits, tokens, force = parts
                if len(bits) != N_PARAMS or set(bits) - {"0", "1"}:
                    raise DomainError(f"line {lineno}: bad grammar bits {bits!r}")
                try:
                    sentence = Sentence(tuple(tokens.split()), force)
                except ValueError as exc:
                    raise DomainError(f"line {lineno}: {exc}") from exc
                licensing.setdefault(Grammar.from_string(bits), set()).add(sentence)
        finally:
            if own:
                fh.close()
        if not licensing:
            raise DomainError("no grammars found")
        return cls({g: frozenset(lang) for g, lang in licensing.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Domain):
            return NotImplemented
        return (
            self._grammars == other._grammars
            and self._sentences == other._sentences
            and np.array_equal(self._lic, other._lic)
        )

    def __hash__(self):
        return hash((self._grammars, self._sentences))

    def __repr__(self):
        return f"Domain({len(self._grammars)} grammars, {len(self._sentences)} sentences)"
