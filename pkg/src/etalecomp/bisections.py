"""Compact open bisections as prefix exchanges.

A prefix exchange ``{(u_i, v_i)}`` is the partial homeomorphism
``u_i y -> v_i y``.  These form an inverse semigroup under composition;
group elements of a transformation groupoid are the total ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .symbolic import (Clopen, Subshift, SubshiftError, Word, canonicalize,
                       is_prefix, same_shift)

DEFAULT_MAX_PAIR_LENGTH = 32


class ResourceError(RuntimeError):
    """A composition produced pair words longer than the configured cap."""


class PrefixExchange:
    """Finite list of (source word, target word) pairs.

    ``pairs`` keeps the representation as given (refinement produces
    non-canonical splits); equality and hashing use the canonical form.
    """

    def __init__(self, shift: Subshift, pairs: Iterable):
        self.shift = shift
        self.pairs = tuple((tuple(u), tuple(v)) for u, v in pairs)

    def __repr__(self):
        fw = self.shift.format_word
        body = ", ".join(f"{fw(u) or 'ε'}->{fw(v) or 'ε'}" for u, v in self.pairs)
        return f"PrefixExchange({{{body}}})"

    @cached_property
    def canonical_pairs(self) -> tuple:
        return _merge_pairs(self.shift, self.pairs)

    def canonical(self) -> "PrefixExchange":
        if self.pairs == self.canonical_pairs:
            return self
        return PrefixExchange(self.shift, self.canonical_pairs)

    def __eq__(self, other):
        if not isinstance(other, PrefixExchange):
            return NotImplemented
        return same_shift(self.shift, other.shift) and self.canonical_pairs == other.canonical_pairs

    def __hash__(self):
        return hash(self.canonical_pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    @cached_property
    def source(self) -> Clopen:
        return canonicalize(self.shift, [u for u, _ in self.pairs], check=False)

    @cached_property
    def range(self) -> Clopen:
        return canonicalize(self.shift, [v for _, v in self.pairs], check=False)

    @property
    def stretch(self) -> int:
        return max((max(len(v) - len(u), 0) for u, v in self.pairs), default=0)

    @property
    def max_word_length(self) -> int:
        return max((max(len(u), len(v)) for u, v in self.pairs), default=0)

    def is_total(self) -> bool:
        return self.source.is_whole and self.range.is_whole

    def __call__(self, c: Clopen) -> Clopen:
        return apply(self, c)

    def format_pairs(self) -> list:
        fw = self.shift.format_word
        return [[fw(u), fw(v)] for u, v in self.pairs]


def _merge_pairs(shift: Subshift, pairs) -> tuple:
    current = set(pairs)
    while True:
        groups: dict = {}
        for u, v in current:
            if u and v and u[-1] == v[-1]:
                groups.setdefault((u[:-1], v[:-1]), set()).add(u[-1])
        changed = False
        for (pu, pv), kids in groups.items():
            fu = shift.follow(pu)
            if fu != shift.follow(pv) or len(kids) != len(fu):
                continue
            current.difference_update((pu + (a,), pv + (a,)) for a in kids)
            current.add((pu, pv))
            changed = True
        if not changed:
            break
    return tuple(sorted(current, key=lambda p: (p[0], p[1])))


def identity(shift: Subshift, on: Optional[Clopen] = None) -> PrefixExchange:
    if on is None:
        return PrefixExchange(shift, [((), ())])
    return PrefixExchange(shift, [(w, w) for w in on.words])


def empty_exchange(shift: Subshift) -> PrefixExchange:
    return PrefixExchange(shift, [])


def validate(pe: PrefixExchange) -> Optional[str]:
    """``None`` when ``pe`` is a valid bisection, otherwise the first violation."""
    shift = pe.shift
    for u, v in pe.pairs:
        for w in (u, v):
            try:
                shift.check_word(w)
            except SubshiftError as exc:
                return str(exc)
    sources = [u for u, _ in pe.pairs]
    targets = [v for _, v in pe.pairs]
    if len(set(sources)) != len(sources):
        return "duplicate source word"
    if len(set(targets)) != len(targets):
        return "duplicate target word"
    if not _prefix_free(sources):
        return "source not a prefix code"
    if not _prefix_free(targets):
        return "target not a prefix code"
    for u, v in pe.pairs:
        if shift.follow(u) != shift.follow(v):
            fw = shift.format_word
            return f"follower mismatch between {fw(u) or 'ε'!r} and {fw(v) or 'ε'!r}"
    return None


def is_valid(pe: PrefixExchange) -> bool:
    return validate(pe) is None


def _prefix_free(words) -> bool:
    ws = set(words)
    for w in ws:
        for i in range(len(w)):
            if w[:i] in ws:
                return False
    return True


def _prefix_index(words) -> dict:
    """Map every proper prefix of each word to the words below it."""
    idx: dict = {}
    for w in words:
        for i in range(len(w)):
            idx.setdefault(w[:i], []).append(w)
    return idx


def source(pe: PrefixExchange) -> Clopen:
    return pe.source


def range_of(pe: PrefixExchange) -> Clopen:
    return pe.range


def apply(pe: PrefixExchange, c: Clopen) -> Clopen:
    """Image of ``c`` (intersected with the source) under ``pe``."""
    if not same_shift(pe.shift, c.shift):
        raise SubshiftError("exchange and clopen live on different subshifts")
    out = []
    cwords = set(c.words)
    under = _prefix_index(c.words)
    for u, v in pe.pairs:
        hit = False
        for i in range(len(u) + 1):
            if u[:i] in cwords:
                out.append(v)
                hit = True
                break
        if hit:
            continue
        n = len(u)
        for w in under.get(u, ()):
            out.append(v + w[n:])
    return canonicalize(pe.shift, out, check=False)


def restrict(pe: PrefixExchange, c: Clopen) -> PrefixExchange:
    """The exchange of ``pe`` restricted to ``c`` intersected with its source."""
    if not same_shift(pe.shift, c.shift):
        raise SubshiftError("exchange and clopen live on different subshifts")
    out = []
    cwords = set(c.words)
    under = _prefix_index(c.words)
    for u, v in pe.pairs:
        hit = False
        for i in range(len(u) + 1):
            if u[:i] in cwords:
                out.append((u, v))
                hit = True
                break
        if hit:
            continue
        n = len(u)
        for w in under.get(u, ()):
            out.append((w, v + w[n:]))
    return PrefixExchange(pe.shift, _merge_pairs(pe.shift, out))


def invert(pe: PrefixExchange) -> PrefixExchange:
    return PrefixExchange(pe.shift, _merge_pairs(pe.shift, [(v, u) for u, v in pe.pairs]))


def compose(outer: PrefixExchange, inner: PrefixExchange,
            max_pair_length: int = DEFAULT_MAX_PAIR_LENGTH) -> PrefixExchange:
    """``outer`` after ``inner``: the map x -> outer(inner(x))."""
    if not same_shift(outer.shift, inner.shift):
        raise SubshiftError("exchanges live on different subshifts")
    osrc = {p: q for p, q in outer.pairs}
    under = _prefix_index(osrc)
    out = []
    for u, v in inner.pairs:
        done = False
        for i in range(len(v) + 1):
            q = osrc.get(v[:i])
            if q is not None:
                out.append((u, q + v[i:]))
                done = True
                break
        if done:
            continue
        n = len(v)
        for p in under.get(v, ()):
            out.append((u + p[n:], osrc[p]))
    for u, v in out:
        if len(u) > max_pair_length or len(v) > max_pair_length:
            raise ResourceError(f"composition exceeds pair length cap {max_pair_length}")
    return PrefixExchange(outer.shift, _merge_pairs(outer.shift, out))


def compose_all(maps, shift: Subshift, max_pair_length: int = DEFAULT_MAX_PAIR_LENGTH) -> PrefixExchange:
    """Composite of ``maps`` read left to right as f1 o f2 o ... (last applied first)."""
    result = identity(shift)
    for m in reversed(list(maps)):
        result = compose(m, result, max_pair_length)
    return result


def refine_exchange(pe: PrefixExchange, d: int) -> PrefixExchange:
    """Split pairs until the longer word of each pair has length >= d."""
    out = []
    stack = list(pe.pairs)
    while stack:
        u, v = stack.pop()
        if max(len(u), len(v)) >= d:
            out.append((u, v))
            continue
        for a in pe.shift.follow(u):
            stack.append((u + (a,), v + (a,)))
    return PrefixExchange(pe.shift, sorted(out))


def point_image(pe: PrefixExchange, x: Word) -> Optional[Word]:
    """Image of a finite prefix ``x`` long enough to pass every source word."""
    for u, v in pe.pairs:
        if is_prefix(u, x):
            return v + x[len(u):]
    return None


# -- presentations --------------------------------------------------------

INVERSE_SUFFIX = "^-1"


@dataclass
class Element:
    word: tuple
    exchange: PrefixExchange

    def label(self) -> str:
        return "*".join(self.word) if self.word else "id"


@dataclass
class GroupoidPresentation:
    """A subshift with named generator bisections.

    ``kind`` is ``"group"`` for transformation groupoids (every generator
    a total homeomorphism) or ``"etale"`` for general ample presentations.
    """

    shift: Subshift
    generators: dict
    kind: str = "etale"
    name: str = "custom"
    note: str = ""
    max_pair_length: int = DEFAULT_MAX_PAIR_LENGTH
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("group", "etale"):
            raise ValueError(f"unknown presentation kind {self.kind!r}")
        for name, g in self.generators.items():
            if INVERSE_SUFFIX in name or "*" in name or not name:
                raise ValueError(f"bad generator name {name!r}")
            if not same_shift(g.shift, self.shift):
                raise SubshiftError(f"generator {name} lives on a different subshift")

    def validate(self) -> Optional[str]:
        for name, g in self.generators.items():
            msg = validate(g)
            if msg:
                return f"generator {name}: {msg}"
            if self.kind == "group" and not g.is_total():
                return f"generator {name}: not a total bijection of the space"
        return None

    @property
    def letters(self) -> list:
        """Generators and their inverses, ordered by name (g before g^-1)."""
        out = []
        for name in sorted(self.generators):
            g = self.generators[name]
            out.append((name, g))
            out.append((name + INVERSE_SUFFIX, invert(g)))
        return out

    def letter(self, name: str) -> PrefixExchange:
        if name.endswith(INVERSE_SUFFIX):
            base = name[: -len(INVERSE_SUFFIX)]
            if base in self.generators:
                return invert(self.generators[base])
        elif name in self.generators:
            return self.generators[name]
        raise KeyError(f"unknown generator letter {name!r}")

    def evaluate(self, word) -> PrefixExchange:
        """Exchange of a generator word; the last letter acts first."""
        return compose_all([self.letter(x) for x in word], self.shift, self.max_pair_length)

    @property
    def stretch(self) -> int:
        return max((g.stretch for _, g in self.letters), default=0)

    @property
    def depth_floor(self) -> int:
        return max((g.max_word_length for g in self.generators.values()), default=0)


def enumerate_elements(G: GroupoidPresentation, L: int) -> list:
    """Distinct elements of generator-word length <= L in canonical order.

    Breadth first; a word is kept only if its exchange is new, so each
    element carries its shortest, then lexicographically least, word.
    """
    levels, _ = _levels(G, L)
    out = []
    for lvl in levels[: L + 1]:
        out.extend(lvl)
    return out


def enumeration_stable(G: GroupoidPresentation, L: int) -> bool:
    """True when no new element appears at some length <= L (the semigroup is finite)."""
    levels, stable_at = _levels(G, L)
    return stable_at is not None and stable_at <= L


def _levels(G: GroupoidPresentation, L: int):
    cache = G._cache.setdefault("levels", {"levels": None, "seen": None, "stable": None})
    if cache["levels"] is None:
        ident = identity(G.shift).canonical()
        cache["levels"] = [[Element((), ident)]]
        cache["seen"] = {ident}
    levels, seen = cache["levels"], cache["seen"]
    letters = G.letters
    while len(levels) <= L and cache["stable"] is None:
        nxt = []
        for el in levels[-1]:
            for name, g in letters:
                pe = compose(el.exchange, g, G.max_pair_length)
                if pe in seen:
                    continue
                seen.add(pe)
                nxt.append(Element(el.word + (name,), pe.canonical()))
        levels.append(nxt)
        if not nxt:
            cache["stable"] = len(levels) - 1
    return levels, cache["stable"]
