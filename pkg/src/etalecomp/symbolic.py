"""Clopen subsets of one-sided subshifts.

A word is a tuple of symbol indices.  A clopen set is stored as a canonical
antichain of admissible words: no word is a prefix of another, no complete
family of siblings is left unmerged, and words are sorted by (length, lex).
Two clopens are equal iff their word tuples are equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

Word = tuple

MAX_ALPHABET = 64
EPSILON = "ε"


class SubshiftError(ValueError):
    """Raised for inadmissible words or mismatched subshifts."""


@dataclass(frozen=True)
class Subshift:
    """A one-step shift of finite type on ``size`` symbols.

    ``transitions`` is a 0/1 matrix (``None`` means the full shift).
    ``initial`` restricts which symbols may start a sequence (``None`` means
    every symbol); it is used to pin a tag symbol to position 0.
    """

    size: int
    transitions: Optional[tuple] = None
    names: Optional[tuple] = None
    initial: Optional[frozenset] = None

    def __post_init__(self):
        if not 2 <= self.size <= MAX_ALPHABET:
            raise SubshiftError(f"alphabet size must be in [2, {MAX_ALPHABET}], got {self.size}")
        if self.transitions is not None:
            rows = tuple(tuple(int(bool(x)) for x in row) for row in self.transitions)
            if len(rows) != self.size or any(len(r) != self.size for r in rows):
                raise SubshiftError("transition matrix must be size x size")
            for i, r in enumerate(rows):
                if not any(r):
                    raise SubshiftError(f"symbol {i} has no admissible successor")
            if all(all(r) for r in rows):
                rows = None
            object.__setattr__(self, "transitions", rows)
        names = self.names
        if names is None:
            if self.size <= 10:
                names = tuple(str(i) for i in range(self.size))
            else:
                names = tuple(f"s{i}" for i in range(self.size))
        names = tuple(names)
        if len(names) != self.size or len(set(names)) != self.size:
            raise SubshiftError("symbol names must be distinct and one per symbol")
        for n in names:
            if not n or any(ch in n for ch in " \t\n.,|#;") or n == EPSILON or n.startswith("->"):
                raise SubshiftError(f"bad symbol name {n!r}")
        object.__setattr__(self, "names", names)
        if self.initial is not None:
            init = frozenset(self.initial)
            if not init or any(not 0 <= s < self.size for s in init):
                raise SubshiftError("initial symbol set must be a non-empty subset of the alphabet")
            if len(init) == self.size:
                init = None
            object.__setattr__(self, "initial", init)
        if self.initial is None:
            preds = [False] * self.size
            for r in (self.transitions or ()):
                for j, x in enumerate(r):
                    preds[j] = preds[j] or bool(x)
            if self.transitions is not None and not all(preds):
                bad = preds.index(False)
                raise SubshiftError(f"symbol {self.names[bad]} has no admissible predecessor")

    @classmethod
    def full(cls, size: int, names=None) -> "Subshift":
        return cls(size, None, names)

    @property
    def is_full(self) -> bool:
        return self.transitions is None and self.initial is None

    @cached_property
    def _followers(self) -> tuple:
        if self.transitions is None:
            every = tuple(range(self.size))
            return tuple(every for _ in range(self.size))
        return tuple(tuple(j for j, x in enumerate(row) if x) for row in self.transitions)

    @cached_property
    def _initial(self) -> tuple:
        if self.initial is None:
            return tuple(range(self.size))
        return tuple(sorted(self.initial))

    @cached_property
    def _single_char(self) -> bool:
        return all(len(n) == 1 for n in self.names)

    def follow(self, w: Word) -> tuple:
        """Symbols that may follow ``w`` (the initial symbols when ``w`` is empty)."""
        if not w:
            return self._initial
        return self._followers[w[-1]]

    def allowed(self, a: int, b: int) -> bool:
        return self.transitions is None or bool(self.transitions[a][b])

    def check_word(self, w: Word) -> None:
        for s in w:
            if not 0 <= s < self.size:
                raise SubshiftError(f"symbol index {s} outside alphabet")
        if w and w[0] not in self._initial:
            raise SubshiftError(f"inadmissible word {self.format_word(w)!r}: "
                                f"{self.names[w[0]]} cannot start a sequence")
        for a, b in zip(w, w[1:]):
            if not self.allowed(a, b):
                raise SubshiftError(f"inadmissible word {self.format_word(w)!r}: "
                                    f"pair {self.names[a]}{self.names[b]} is forbidden")

    def is_admissible(self, w: Word) -> bool:
        try:
            self.check_word(w)
        except SubshiftError:
            return False
        return True

    def extensions(self, w: Word, n: int) -> Iterator[Word]:
        """All admissible words ``w + y`` with ``len(y) == n``, in lex order."""
        if n == 0:
            yield w
            return
        for a in self.follow(w):
            yield from self.extensions(w + (a,), n - 1)

    def words(self, n: int) -> list:
        return list(_words(self, n))

    # -- naming ---------------------------------------------------------

    def format_word(self, w: Word) -> str:
        if not w:
            return ""
        sep = "" if self._single_char else "."
        return sep.join(self.names[s] for s in w)

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ("", EPSILON):
            return ()
        index = {n: i for i, n in enumerate(self.names)}
        if "." in text or not self._single_char:
            parts = text.split(".")
        else:
            parts = list(text)
        try:
            w = tuple(index[p] for p in parts)
        except KeyError as exc:
            raise SubshiftError(f"unknown symbol {exc.args[0]!r} in word {text!r}") from None
        self.check_word(w)
        return w

    # -- clopen constructors --------------------------------------------

    def whole(self) -> "Clopen":
        return Clopen(self, ((),))

    def empty(self) -> "Clopen":
        return Clopen(self, ())

    def cylinder(self, w) -> "Clopen":
        if isinstance(w, str):
            w = self.parse_word(w)
        return canonicalize(self, [tuple(w)])

    def clopen(self, words: Iterable) -> "Clopen":
        ws = [self.parse_word(w) if isinstance(w, str) else tuple(w) for w in words]
        return canonicalize(self, ws)


@lru_cache(maxsize=256)
def _words(shift: Subshift, n: int) -> tuple:
    return tuple(shift.extensions((), n))


def is_prefix(p: Word, w: Word) -> bool:
    return len(p) <= len(w) and w[:len(p)] == p


@dataclass(frozen=True)
class Clopen:
    """A clopen set; build with :func:`canonicalize` or the Subshift helpers."""

    shift: Subshift = field(repr=False)
    words: tuple

    def __repr__(self):
        return "Clopen({" + ", ".join(repr(self.shift.format_word(w)) for w in self.words) + "})"

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def __bool__(self):
        return bool(self.words)

    def __hash__(self):
        return hash(self.words)

    def __eq__(self, other):
        if not isinstance(other, Clopen):
            return NotImplemented
        return self.words == other.words and same_shift(self.shift, other.shift)

    @property
    def is_empty(self) -> bool:
        return not self.words

    @property
    def is_whole(self) -> bool:
        return self.words == ((),)

    @property
    def depth(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def format(self) -> list:
        return [self.shift.format_word(w) for w in self.words]

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __le__(self, other):
        return relate(self, other) in ("equal", "subset")

    def contains_word(self, w: Word) -> bool:
        """True iff the cylinder of ``w`` lies inside this set."""
        return any(is_prefix(u, w) for u in self.words)


def same_shift(a: Subshift, b: Subshift) -> bool:
    return a is b or a == b


def _require_same(a: Clopen, b: Clopen) -> None:
    if not same_shift(a.shift, b.shift):
        raise SubshiftError("clopen sets live on different subshifts")


def _sort_key(w: Word):
    return (len(w), w)


def canonicalize(shift: Subshift, words: Iterable, *, check: bool = True) -> Clopen:
    """Canonical clopen denoting the union of the cylinders of ``words``."""
    ws = set(tuple(w) for w in words)
    if check:
        for w in ws:
            shift.check_word(w)
    # antichain: drop words lying under a shorter word of the set
    kept = set()
    for w in sorted(ws, key=len):
        if not any(w[:i] in kept for i in range(len(w))):
            kept.add(w)
    # sibling merge, deepest level first
    by_len: dict = {}
    for w in kept:
        by_len.setdefault(len(w), set()).add(w)
    top = max(by_len, default=0)
    for n in range(top, 0, -1):
        level = by_len.get(n)
        if not level:
            continue
        groups: dict = {}
        for w in level:
            groups.setdefault(w[:-1], set()).add(w[-1])
        for parent, kids in groups.items():
            if len(kids) == len(shift.follow(parent)):
                level.difference_update(parent + (a,) for a in kids)
                by_len.setdefault(n - 1, set()).add(parent)
    out = sorted((w for lvl in by_len.values() for w in lvl), key=_sort_key)
    return Clopen(shift, tuple(out))


def union(a: Clopen, b: Clopen) -> Clopen:
    _require_same(a, b)
    return canonicalize(a.shift, a.words + b.words, check=False)


def union_all(shift: Subshift, sets: Iterable) -> Clopen:
    words = []
    for c in sets:
        words.extend(c.words)
    return canonicalize(shift, words, check=False)


def intersect(a: Clopen, b: Clopen) -> Clopen:
    _require_same(a, b)
    if a.is_whole:
        return b
    if b.is_whole:
        return a
    out = []
    for u in a.words:
        for v in b.words:
            if is_prefix(u, v):
                out.append(v)
            elif is_prefix(v, u):
                out.append(u)
    return canonicalize(a.shift, out, check=False)


def complement(a: Clopen) -> Clopen:
    shift = a.shift
    members = set(a.words)
    below = set()
    for w in a.words:
        for i in range(len(w)):
            below.add(w[:i])
    out = []

    def walk(w):
        if w in members:
            return
        if w not in below:
            out.append(w)
            return
        for s in shift.follow(w):
            walk(w + (s,))

    walk(())
    return canonicalize(shift, out, check=False)


def difference(a: Clopen, b: Clopen) -> Clopen:
    _require_same(a, b)
    if b.is_empty:
        return a
    return intersect(a, complement(b))


def boolean(op: str, a: Clopen, b: Optional[Clopen] = None) -> Clopen:
    if op == "complement":
        if b is not None:
            raise ValueError("complement takes one operand")
        return complement(a)
    if b is None:
        raise ValueError(f"{op} needs two operands")
    try:
        fn = {"union": union, "intersect": intersect, "difference": difference}[op]
    except KeyError:
        raise ValueError(f"unknown boolean operation {op!r}") from None
    return fn(a, b)


def relate(a: Clopen, b: Clopen) -> str:
    """One of ``equal``, ``subset``, ``superset``, ``disjoint``, ``overlapping``."""
    _require_same(a, b)
    if a == b:
        return "equal"
    both = intersect(a, b)
    if both == a:
        return "subset"
    if both == b:
        return "superset"
    if both.is_empty:
        return "disjoint"
    return "overlapping"


def is_subset(a: Clopen, b: Clopen) -> bool:
    return intersect(a, b) == a


def is_disjoint(a: Clopen, b: Clopen) -> bool:
    return intersect(a, b).is_empty


def refine(a: Clopen, d: int) -> list:
    """Depth-``d`` admissible words whose cylinders tile ``a``."""
    if any(len(w) > d for w in a.words):
        raise SubshiftError(f"cannot refine to depth {d}: set has words of length {a.depth}")
    out = []
    for w in a.words:
        out.extend(a.shift.extensions(w, d - len(w)))
    return sorted(out)


def split_to(a: Clopen, d: int) -> list:
    """Expand words shorter than ``d`` to depth ``d``; longer words stay."""
    out = []
    for w in a.words:
        if len(w) >= d:
            out.append(w)
        else:
            out.extend(a.shift.extensions(w, d - len(w)))
    return sorted(out, key=_sort_key)


def all_words_upto(shift: Subshift, depth: int) -> list:
    out = []
    for n in range(depth + 1):
        out.extend(shift.words(n))
    return out


def brute_words(shift: Subshift, n: int) -> list:
    """All admissible length-``n`` words by filtering the full product (test helper)."""
    return [w for w in product(range(shift.size), repeat=n) if shift.is_admissible(w)]


def words_of(shift: Subshift, items: Sequence) -> list:
    return [shift.parse_word(x) if isinstance(x, str) else tuple(x) for x in items]
