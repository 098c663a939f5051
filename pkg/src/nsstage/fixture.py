"""Deterministic desk-scale language domain with an English-like target.

The bundled fixture stands in for the full downloadable multi-language
database.  It generates a family of 2,048 grammars (every parameter
combination whose subject-position and IP-headedness bits are
English-like) over 684 word-order patterns:

* a core tier licensed by every grammar in the family (declaratives,
  questions, and the 36 subjectless imperatives);
* an argument-fronting tier licensed only when the optional-topic
  parameter is on;
* subjectless declarative/question variants, produced by deleting the
  subject token from each subject-bearing pattern, licensed only when
  the null-subject parameter is on.

The remaining ten parameters do not affect surface patterns in this
family; they are string-ambiguous, which gives sampled grammars a
realistic chance of parsing any given input.  The English grammar
(0001001100011) licenses exactly 360 patterns (180 DEC / 36 IMP / 144 Q)
and its null-subject counterpart licenses those plus the 324 subjectless
variants.
"""

from __future__ import annotations

from functools import lru_cache

from .domain import DEC, IMP, NS_INDEX, OPT_INDEX, Q, Domain, Grammar, Sentence

ARG_FRAMES = (
    (),
    ("O1",),
    ("O1", "O2"),
    ("P", "O3"),
    ("O1", "P", "O3"),
    ("O1", "O2", "P", "O3"),
)
AUX_BLOCKS = ((), ("Aux",), ("Aux", "not"), ("Aux", "never"), ("never",))
BARE_BLOCKS = ((), ("never",))
NEG_BLOCKS = ((), ("not",), ("never",))

N_DEC_CORE = 90
N_DEC_TOPIC = 90
N_IMP = 36
N_Q_CORE = 72
N_Q_TOPIC = 72


def _verb_phrase(args, adv):
    pre = ("Adv",) if adv == "pre" else ()
    fin = ("Adv",) if adv == "fin" else ()
    return pre + ("Verb",) + args + fin


def _dec_bodies():
    for aux in AUX_BLOCKS:
        for args in ARG_FRAMES:
            for adv in ("none", "pre", "fin"):
                yield aux + _verb_phrase(args, adv)


def _front_options(args):
    """Frontable constituents: (fronted, remainder), object before PP."""
    primary, secondary = [], []
    if "O1" in args:
        rest = tuple(t for t in args if t != "O1")
        primary.append((("O1",), rest))
    elif args == ("P", "O3"):
        primary.append((("P", "O3"), ()))
    if "P" in args and "O1" in args:
        rest = tuple(t for t in args if t not in ("P", "O3"))
        secondary.append((("P", "O3"), rest))
    return primary, secondary


def _dec_topic_candidates():
    primaries, secondaries = [], []
    for aux in AUX_BLOCKS:
        for args in ARG_FRAMES:
            for adv in ("none", "pre", "fin"):
                prim, sec = _front_options(args)
                for front, rest in prim:
                    primaries.append(front + ("S",) + aux + _verb_phrase(rest, adv))
                for front, rest in sec:
                    secondaries.append(front + ("S",) + aux + _verb_phrase(rest, adv))
    return primaries + secondaries


def _q_core_patterns():
    out = []
    for neg in NEG_BLOCKS:
        for args in ARG_FRAMES:
            for adv in ("none", "ini", "pre", "fin"):
                ini = ("Adv",) if adv == "ini" else ()
                out.append(ini + ("Aux", "S") + neg + _verb_phrase(args, adv if adv != "ini" else "none"))
    return out


def _q_topic_candidates():
    primaries, secondaries = [], []
    for neg in NEG_BLOCKS:
        for args in ARG_FRAMES:
            for adv in ("none", "ini", "pre", "fin"):
                ini = ("Adv",) if adv == "ini" else ()
                vp_adv = adv if adv != "ini" else "none"
                prim, sec = _front_options(args)
                for front, rest in prim:
                    primaries.append(front + ini + ("Aux", "S") + neg + _verb_phrase(rest, vp_adv))
                for front, rest in sec:
                    secondaries.append(front + ini + ("Aux", "S") + neg + _verb_phrase(rest, vp_adv))
    return primaries + secondaries


def _delete_subject(tokens):
    i = tokens.index("S")
    return tokens[:i] + tokens[i + 1 :]


def _unique(seqs):
    seen = set()
    out = []
    for t in seqs:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


@lru_cache(maxsize=1)
def _pattern_tiers():
    dec_bodies = list(_dec_bodies())
    assert len(dec_bodies) == N_DEC_CORE

    dec_core = [("S",) + body for body in dec_bodies]
    # Imperatives are the bare (auxiliary-free) verb phrases.
    imp = [b for b in dec_bodies if "Aux" not in b]
    assert len(imp) == N_IMP

    dec_topic = _unique(_dec_topic_candidates())[:N_DEC_TOPIC]
    q_core = _unique(_q_core_patterns())
    assert len(q_core) == N_Q_CORE, len(q_core)
    q_topic = _unique(_q_topic_candidates())[:N_Q_TOPIC]
    assert len(dec_topic) == N_DEC_TOPIC and len(q_topic) == N_Q_TOPIC

    core = (
        [Sentence(t, DEC) for t in dec_core]
        + [Sentence(t, IMP) for t in imp]
        + [Sentence(t, Q) for t in q_core]
    )
    topic = [Sentence(t, DEC) for t in dec_topic] + [Sentence(t, Q) for t in q_topic]
    core_dels = [Sentence(_delete_subject(t), DEC) for t in dec_core] + [
        Sentence(_delete_subject(t), Q) for t in q_core
    ]
    topic_dels = [Sentence(_delete_subject(t), DEC) for t in dec_topic] + [
        Sentence(_delete_subject(t), Q) for t in q_topic
    ]

    universe = core + topic + core_dels + topic_dels
    assert len(universe) == len(set(universe)), "pattern tiers must not collide"
    subjectful = {(s.tokens, s.force) for s in core + topic}
    for s in core_dels + topic_dels:
        assert (s.tokens, s.force) not in subjectful
    # Every imperative, re-heard as a declarative, is a null-subject pattern.
    dec_del_tokens = {s.tokens for s in core_dels if s.force == DEC}
    for s in core:
        if s.force == IMP:
            assert s.tokens in dec_del_tokens
    return (
        frozenset(core),
        frozenset(topic),
        frozenset(core_dels),
        frozenset(topic_dels),
    )


def fixture_grammar_codes() -> list[int]:
    """Integer codes of the 2,048 grammars in the fixture family."""
    family_mask = 0b11  # SP and HIP must be 0 (English-like word-order core)
    return [code for code in range(1 << 13) if code & family_mask == 0]


@lru_cache(maxsize=1)
def build_fixture_domain() -> Domain:
    """Construct the bundled domain.  Deterministic; the instance is shared."""
    core, topic, core_dels, topic_dels = _pattern_tiers()
    by_class = {
        (0, 0): core,
        (1, 0): core | topic,
        (0, 1): core | core_dels,
        (1, 1): core | topic | core_dels | topic_dels,
    }
    licensing = {}
    for code in fixture_grammar_codes():
        g = Grammar.from_int(code)
        licensing[g] = by_class[(g[OPT_INDEX], g[NS_INDEX])]
    return Domain(licensing)
