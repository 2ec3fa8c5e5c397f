"""Certificates and bounded searches for comparison of clopen sets.

A certificate transports a cover of the subject into the target along
pieces of group(oid) elements.  Every piece records the generator words it
was cut from, so a verifier holding the presentation can re-derive it.

Searches return an :class:`Outcome`.  Refutations come from one of two
sound channels: an invariant measure violating the inequality the relation
would force, or an exhausted search over a finite inverse semigroup.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bisections import (GroupoidPresentation, PrefixExchange, apply,
                         compose, enumerate_elements, enumeration_stable,
                         identity, invert, refine_exchange, restrict, validate)
from .measures import (MeasureVector, check_invariant, lp_small_enough, max_gap,
                       refutation_depth, uniform_bernoulli)
from .symbolic import (Clopen, canonicalize, difference, intersect,
                       is_disjoint, is_subset, refine, same_shift, union,
                       union_all)

log = logging.getLogger(__name__)

VERIFIED = "verified"
REFUTED = "refuted"
UNKNOWN = "unknown"
EXHAUSTED = "exhausted"
NOT_MINIMAL = "not_minimal"

DEFAULT_SLACK = 2
DEFAULT_BUDGET = 200_000


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Piece:
    """A bisection together with the generator words it restricts.

    ``provenance`` is a tuple of ``(word, part)``: on ``part`` the piece
    agrees with the element named by ``word``; the parts tile the source.
    """

    exchange: PrefixExchange
    provenance: tuple = ()

    @property
    def source(self) -> Clopen:
        return self.exchange.source

    @property
    def range(self) -> Clopen:
        return self.exchange.range


@dataclass
class Transporter:
    subject: Clopen
    target: Clopen
    pieces: list


@dataclass
class TupleCertificate:
    subject: tuple
    target: tuple
    entries: list          # (subject index, Piece, target index), 0-based


@dataclass
class ParadoxCertificate:
    subject: Clopen
    halves: tuple
    transporters: tuple


@dataclass
class FillingCertificate:
    sets: tuple
    bisections: tuple      # Piece per set; the union of r(E_i W_i) is everything


@dataclass
class Outcome:
    status: str
    certificate: object = None
    reason: Optional[str] = None
    measure: Optional[MeasureVector] = None
    detail: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED


# -- verification -----------------------------------------------------------

def check_provenance(G: GroupoidPresentation, piece: Piece) -> bool:
    """The piece is a finite union of restrictions of named elements of G."""
    shift = G.shift
    parts = [part for _, part in piece.provenance]
    for i, a in enumerate(parts):
        for b in parts[i + 1:]:
            if not is_disjoint(a, b):
                return False
    if union_all(shift, parts) != piece.exchange.source:
        return False
    for word, part in piece.provenance:
        try:
            el = G.evaluate(word)
        except KeyError:
            return False
        if restrict(piece.exchange, part) != restrict(el, part):
            return False
    return True


def verify_transporter(c: Transporter, G: Optional[GroupoidPresentation] = None) -> bool:
    """Subject covered by the sources; ranges pairwise disjoint and inside the target."""
    shift = c.subject.shift
    if not same_shift(shift, c.target.shift):
        return False
    for p in c.pieces:
        if validate(p.exchange) is not None:
            return False
        if G is not None and not check_provenance(G, p):
            return False
    sources = union_all(shift, [p.source for p in c.pieces])
    if not is_subset(c.subject, sources):
        return False
    ranges = [p.range for p in c.pieces]
    for i, a in enumerate(ranges):
        for b in ranges[i + 1:]:
            if not is_disjoint(a, b):
                return False
    return is_subset(union_all(shift, ranges), c.target)


def verify_tuple(c: TupleCertificate, G: Optional[GroupoidPresentation] = None,
                 exact: bool = False) -> bool:
    """Check a tuple certificate; ``exact`` also demands the two tilings of ~."""
    a, b = c.subject, c.target
    if not a:
        return not c.entries
    shift = a[0].shift
    for i, piece, k in c.entries:
        if not (0 <= i < len(a) and 0 <= k < len(b)):
            return False
        if validate(piece.exchange) is not None:
            return False
        if G is not None and not check_provenance(G, piece):
            return False
    for i, ai in enumerate(a):
        srcs = [p.source for j, p, _ in c.entries if j == i]
        cover = union_all(shift, srcs)
        if exact:
            if cover != ai or not _pairwise_disjoint(srcs):
                return False
        elif not is_subset(ai, cover):
            return False
    for k, bk in enumerate(b):
        rngs = [p.range for _, p, l in c.entries if l == k]
        if not _pairwise_disjoint(rngs):
            return False
        total = union_all(shift, rngs)
        if exact:
            if total != bk:
                return False
        elif not is_subset(total, bk):
            return False
    return True


def verify_paradox(c: ParadoxCertificate, G: Optional[GroupoidPresentation] = None) -> bool:
    v1, v2 = c.halves
    if v1.is_empty or v2.is_empty or not is_disjoint(v1, v2):
        return False
    if not (is_subset(v1, c.subject) and is_subset(v2, c.subject)):
        return False
    for t, v in zip(c.transporters, c.halves):
        if t.subject != c.subject or t.target != v or not verify_transporter(t, G):
            return False
    return True


def verify_filling(c: FillingCertificate, G: Optional[GroupoidPresentation] = None) -> bool:
    if not c.sets or len(c.sets) != len(c.bisections):
        return False
    shift = c.sets[0].shift
    images = []
    for w, p in zip(c.sets, c.bisections):
        if validate(p.exchange) is not None:
            return False
        if G is not None and not check_provenance(G, p):
            return False
        images.append(apply(p.exchange, w))
    return union_all(shift, images).is_whole


def _pairwise_disjoint(sets) -> bool:
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if not is_disjoint(a, b):
                return False
    return True


# -- the packing search -------------------------------------------------------

def _cylinder(shift, w) -> Clopen:
    return canonicalize(shift, [w], check=False)


def _weight(shift, c: Clopen) -> float:
    return sum(shift.size ** -len(w) for w in c.words)


class _Packer:
    """Assign to each subject cell an element mapping it inside a target.

    Cells are the depth-d cylinders of the subject sets; images sharing a
    target must be disjoint.  Depth-first with forward checking; the cell
    with the fewest remaining candidates is branched on first.
    """

    def __init__(self, G, subjects, targets, L, exact, slack, budget):
        self.G = G
        self.shift = G.shift
        self.subjects = list(subjects)
        self.targets = list(targets)
        self.elements = enumerate_elements(G, L)
        self.exact = exact
        self.slack = slack
        self.budget = budget
        self.nodes = 0
        self.out_of_budget = False
        self._disjoint: dict = {}

    def run(self):
        base = max((A.depth for A in self.subjects), default=0)
        for d in range(base, base + self.slack + 1):
            found = self._at_depth(d)
            if found is not None:
                return found
            if self.out_of_budget:
                return None
        return None

    def _candidates(self, w):
        cyl = _cylinder(self.shift, w)
        out = []
        for idx, el in enumerate(self.elements):
            pe = el.exchange
            if not pe.source.contains_word(w):
                continue
            img = apply(pe, cyl)
            for k, B in enumerate(self.targets):
                if is_subset(img, B):
                    out.append((_weight(self.shift, img), idx, k, img))
        out.sort(key=lambda t: t[:3])
        return out

    def _at_depth(self, d):
        cells = []
        for i, A in enumerate(self.subjects):
            for w in refine(A, d):
                cells.append((i, w))
        if not cells:
            return []
        domains = [self._candidates(w) for _, w in cells]
        if any(not dom for dom in domains):
            return None
        chosen = [None] * len(cells)
        if not self._search(domains, chosen, set(range(len(cells)))):
            return None
        return [(cells[c][0], cells[c][1], chosen[c]) for c in range(len(cells))]

    def _disj(self, a, b):
        key = (a.words, b.words)
        hit = self._disjoint.get(key)
        if hit is None:
            hit = is_disjoint(a, b)
            self._disjoint[key] = hit
        return hit

    def _search(self, domains, chosen, open_cells):
        if not open_cells:
            return not self.exact or self._tiles(chosen)
        self.nodes += 1
        if self.nodes > self.budget:
            self.out_of_budget = True
            return False
        cell = min(open_cells, key=lambda c: (len(domains[c]), c))
        open_cells.remove(cell)
        for cand in domains[cell]:
            _, _, k, img = cand
            pruned = {}
            ok = True
            for other in open_cells:
                dom = domains[other]
                keep = [x for x in dom if x[2] != k or self._disj(x[3], img)]
                if not keep:
                    ok = False
                    break
                if len(keep) != len(dom):
                    pruned[other] = dom
                    domains[other] = keep
            if ok:
                chosen[cell] = cand
                if self._search(domains, chosen, open_cells):
                    return True
                chosen[cell] = None
            for other, dom in pruned.items():
                domains[other] = dom
            if self.out_of_budget:
                break
        open_cells.add(cell)
        return False

    def _tiles(self, chosen):
        for k, B in enumerate(self.targets):
            imgs = [c[3] for c in chosen if c[2] == k]
            if union_all(self.shift, imgs) != B:
                return False
        return True

    def entries(self, assignment):
        """Group cells by (subject, element, target) into restricted pieces."""
        groups: dict = {}
        for i, w, cand in assignment:
            _, idx, k, _ = cand
            groups.setdefault((i, idx, k), []).append(w)
        out = []
        for (i, idx, k), words in sorted(groups.items()):
            el = self.elements[idx]
            part = canonicalize(self.shift, words, check=False)
            out.append((i, Piece(restrict(el.exchange, part), ((el.word, part),)), k))
        return out


def _pack(G, subjects, targets, L, *, exact=False, slack=DEFAULT_SLACK, budget=DEFAULT_BUDGET):
    packer = _Packer(G, subjects, targets, L, exact, slack, budget)
    assignment = packer.run()
    if assignment is None:
        return None, ("budget" if packer.out_of_budget else "none")
    return packer.entries(assignment), "found"


def _identity_piece(C: Clopen) -> Piece:
    return Piece(identity(C.shift, C).canonical(), (((), C),))


def _uniform_candidate(G, D):
    """The uniform Bernoulli vector at depth D when it is invariant, else None."""
    cache = G._cache.setdefault("uniform", {})
    if D not in cache:
        m = None
        if G.shift.is_full:
            m = uniform_bernoulli(G.shift, D)
            if not check_invariant(G, m):
                m = None
        cache[D] = m
    return cache[D]


def _refute(G, plus, minus):
    """Invariant measure with sum mu(plus) > sum mu(minus), as (measure, detail)."""
    D = refutation_depth(G, list(plus) + list(minus))
    if not lp_small_enough(G, D):
        log.info("skipping measure refutation: depth %d too large", D)
        return None, None
    from .measures import known_empty
    if known_empty(G, D):
        return None, None
    m = _uniform_candidate(G, D)
    if m is None or m.total(plus) <= m.total(minus):
        gap, m = max_gap(G, plus, minus, D)
        if gap is None or gap <= 0:
            return None, None
    lhs, rhs = m.total(plus), m.total(minus)
    return m, {"depth": m.depth, "lhs": lhs, "rhs": rhs}


def _failure(G, L, status):
    if status == "budget":
        return Outcome(UNKNOWN, reason="budget")
    if enumeration_stable(G, L):
        return Outcome(REFUTED, reason="exhausted")
    return Outcome(UNKNOWN, reason="bound")


def search_compare(G: GroupoidPresentation, K: Clopen, V: Clopen, L: int, *,
                   refute: bool = True, slack: int = DEFAULT_SLACK,
                   budget: int = DEFAULT_BUDGET) -> Outcome:
    """Look for a transporter certificate of K into V using words of length <= L."""
    if K.is_empty:
        return Outcome(VERIFIED, Transporter(K, V, []))
    if is_subset(K, V):
        return Outcome(VERIFIED, Transporter(K, V, [_identity_piece(K)]))
    if refute:
        m, detail = _refute(G, [K], [V])
        if m is not None:
            return Outcome(REFUTED, reason="measure", measure=m, detail=detail)
    entries, status = _pack(G, [K], [V], L, slack=slack, budget=budget)
    if entries is not None:
        return Outcome(VERIFIED, Transporter(K, V, [p for _, p, _ in entries]))
    return _failure(G, L, status)


def search_compare_tuple(G: GroupoidPresentation, a: Sequence, b: Sequence, L: int, *,
                         refute: bool = True, slack: int = DEFAULT_SLACK,
                         budget: int = DEFAULT_BUDGET) -> Outcome:
    a, b = tuple(a), tuple(b)
    if all(x.is_empty for x in a):
        return Outcome(VERIFIED, TupleCertificate(a, b, []))
    if not b:
        return Outcome(REFUTED, reason="empty target")
    if refute:
        m, detail = _refute(G, a, b)
        if m is not None:
            return Outcome(REFUTED, reason="measure", measure=m, detail=detail)
    entries, status = _pack(G, a, b, L, slack=slack, budget=budget)
    if entries is not None:
        return Outcome(VERIFIED, TupleCertificate(a, b, entries))
    return _failure(G, L, status)


def search_equivalent(G: GroupoidPresentation, a: Sequence, b: Sequence, L: int, *,
                      refute: bool = True, slack: int = DEFAULT_SLACK,
                      budget: int = DEFAULT_BUDGET) -> Outcome:
    """Certificate whose sources tile each a_i and whose ranges tile each b_k."""
    a, b = tuple(a), tuple(b)
    if all(x.is_empty for x in a) and all(x.is_empty for x in b):
        return Outcome(VERIFIED, TupleCertificate(a, b, []))
    if refute:
        for plus, minus in ((a, b), (b, a)):
            m, detail = _refute(G, plus, minus)
            if m is not None:
                return Outcome(REFUTED, reason="measure", measure=m, detail=detail)
    if not b:
        return Outcome(REFUTED, reason="empty target")
    entries, status = _pack(G, a, b, L, exact=True, slack=slack, budget=budget)
    if entries is not None:
        return Outcome(VERIFIED, TupleCertificate(a, b, entries))
    return _failure(G, L, status)


# -- certificate algebra ------------------------------------------------------

def as_tuple_certificate(c) -> TupleCertificate:
    if isinstance(c, TupleCertificate):
        return c
    return TupleCertificate((c.subject,), (c.target,), [(0, p, 0) for p in c.pieces])


def _compose_pieces(outer: Piece, inner: Piece, G=None) -> Optional[Piece]:
    pe = compose(outer.exchange, inner.exchange,
                 G.max_pair_length if G is not None else 32)
    if pe.is_empty:
        return None
    prov = []
    for w_in, part_in in inner.provenance:
        for w_out, part_out in outer.provenance:
            # points of part_in that land in part_out
            dom = intersect(part_in, apply(invert(inner.exchange), part_out))
            if not dom.is_empty:
                prov.append((w_out + w_in, dom))
    return Piece(pe, tuple(prov))


def compose_certificates(c1, c2, G: Optional[GroupoidPresentation] = None):
    """From a <= b and b <= c build a <= c (pieces U o W)."""
    t1, t2 = as_tuple_certificate(c1), as_tuple_certificate(c2)
    if len(t1.target) != len(t2.subject) or any(x != y for x, y in zip(t1.target, t2.subject)):
        raise CertificateError("middle tuples of the two certificates differ")
    entries = []
    for i, w, k in t1.entries:
        w = Piece(restrict(w.exchange, t1.subject[i]),
                  tuple((word, intersect(part, t1.subject[i])) for word, part in w.provenance
                        if not intersect(part, t1.subject[i]).is_empty))
        for k2, u, l in t2.entries:
            if k2 != k:
                continue
            r = _compose_pieces(u, w, G)
            if r is not None:
                entries.append((i, r, l))
    out = TupleCertificate(t1.subject, t2.target, entries)
    if isinstance(c1, Transporter) and isinstance(c2, Transporter):
        return Transporter(c1.subject, c2.target, [p for _, p, _ in entries])
    return out


def normalize_certificate(c: Transporter) -> Transporter:
    """Single-piece form: earlier pieces win where sources overlap."""
    shift = c.subject.shift
    remaining = c.subject
    pairs = []
    prov = []
    for p in c.pieces:
        part = intersect(remaining, p.source)
        if part.is_empty:
            continue
        pairs.extend(restrict(p.exchange, part).pairs)
        for word, src in p.provenance:
            sub = intersect(src, part)
            if not sub.is_empty:
                prov.append((word, sub))
        remaining = difference(remaining, part)
    single = PrefixExchange(shift, pairs).canonical()
    return Transporter(c.subject, c.target, [Piece(single, tuple(prov))])


def refine_certificate(c, d: int):
    def ref(p):
        return Piece(refine_exchange(p.exchange, d), p.provenance)
    if isinstance(c, Transporter):
        return Transporter(c.subject, c.target, [ref(p) for p in c.pieces])
    return TupleCertificate(c.subject, c.target, [(i, ref(p), k) for i, p, k in c.entries])


# -- derived searches ---------------------------------------------------------

def default_halves(O: Clopen):
    """Split O along the children of its first cylinder (descending single-child chains)."""
    shift = O.shift
    w = O.words[0]
    while len(shift.follow(w)) == 1:
        w = w + shift.follow(w)
    v1 = _cylinder(shift, w + (shift.follow(w)[0],))
    return v1, difference(O, v1)


def search_paradoxical(G: GroupoidPresentation, O: Clopen, L: int, *, halves=None,
                       refute: bool = True, slack: int = DEFAULT_SLACK,
                       budget: int = DEFAULT_BUDGET) -> Outcome:
    """Disjoint V1, V2 inside O with O transported into each."""
    if O.is_empty:
        raise ValueError("search_paradoxical needs a non-empty set")
    if refute:
        # any invariant mu with mu(O) > 0 contradicts 2 mu(O) <= mu(O)
        m, detail = _refute(G, [O], [])
        if m is not None:
            return Outcome(REFUTED, reason="measure", measure=m, detail=detail)
    v1, v2 = halves if halves is not None else default_halves(O)
    results = [search_compare(G, O, v, L, refute=False, slack=slack, budget=budget)
               for v in (v1, v2)]
    if all(r.verified for r in results):
        cert = ParadoxCertificate(O, (v1, v2), tuple(r.certificate for r in results))
        return Outcome(VERIFIED, cert)
    reason = "budget" if any(r.reason == "budget" for r in results) else "bound"
    return Outcome(UNKNOWN, reason=reason)


def purely_infinite_scan(G: GroupoidPresentation, d: int, L: int, *, threads: int = 1,
                         **kw) -> dict:
    """Paradoxicality of every cylinder of depth <= d."""
    if d < 1:
        raise ValueError("scan depth must be >= 1")
    words = []
    for n in range(d + 1):
        words.extend(G.shift.words(n))
    cyls = [_cylinder(G.shift, w) for w in words]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=threads) as ex:
            outcomes = list(ex.map(_scan_one, [(G, c, L, kw) for c in cyls]))
    else:
        outcomes = [search_paradoxical(G, c, L, **kw) for c in cyls]
    rows = list(zip(words, outcomes))
    return {"rows": rows, "all_verified": all(o.verified for o in outcomes),
            "all_refuted": all(o.refuted for o in outcomes)}


def _scan_one(args):
    G, c, L, kw = args
    G._cache.clear()
    return search_paradoxical(G, c, L, **kw)


def _saturate(G: GroupoidPresentation, V: Clopen, L: int):
    letters = [g for _, g in G.letters]
    S = V
    for _ in range(L):
        nxt = union_all(G.shift, [S] + [apply(g, S) for g in letters])
        if nxt == S:
            return S, True
        S = nxt
    return S, False


def orbit_saturation(G: GroupoidPresentation, V: Clopen, L: int) -> Clopen:
    """Union of e(V) over elements of word length <= L."""
    if V.is_empty:
        raise ValueError("orbit_saturation needs a non-empty set")
    return _saturate(G, V, L)[0]


def is_invariant(G: GroupoidPresentation, S: Clopen) -> bool:
    return all(is_subset(apply(g, S), S) for _, g in G.letters)


def minimal_check(G: GroupoidPresentation, d: int, L: int) -> Outcome:
    if d < 1:
        raise ValueError("depth must be >= 1")
    witnesses = []
    invariant_sets = []
    complete = True
    for w in G.shift.words(d):
        cyl = _cylinder(G.shift, w)
        S, stable = _saturate(G, cyl, L)
        if S.is_whole:
            continue
        complete = False
        if stable and is_invariant(G, S):
            witnesses.append(cyl)
            if S not in invariant_sets:
                invariant_sets.append(S)
    if complete:
        return Outcome(VERIFIED)
    if witnesses:
        return Outcome(NOT_MINIMAL, certificate=witnesses[0],
                       detail={"witnesses": witnesses, "invariant_sets": invariant_sets})
    return Outcome(UNKNOWN, reason="bound")


def _cover_search(images, whole_target, budget):
    """Pick one image per set so their union is everything."""
    n = len(images)
    nodes = [0]

    def go(i, acc):
        if acc is not None and acc.is_whole:
            return [0] * (n - i)
        if i == n:
            return None
        nodes[0] += 1
        if nodes[0] > budget:
            return None
        for idx, img in images[i]:
            nxt = img if acc is None else union(acc, img)
            rest = go(i + 1, nxt)
            if rest is not None:
                return [idx] + rest
        return None

    return go(0, None)


def n_filling_check(G: GroupoidPresentation, W: Sequence, L: int, *,
                    budget: int = DEFAULT_BUDGET, **kw) -> Outcome:
    """Bisections E_i with the union of E_i(W_i) equal to the whole space."""
    W = tuple(W)
    if not W or any(w.is_empty for w in W):
        raise ValueError("n_filling_check needs non-empty sets")
    shift = G.shift
    elements = enumerate_elements(G, L)
    images = []
    for w in W:
        seen = {}
        for idx, el in enumerate(elements):
            img = apply(el.exchange, w)
            if not img.is_empty and img not in seen:
                seen[img] = idx
        images.append([(idx, img) for img, idx in seen.items()])
    pick = _cover_search(images, shift.whole(), budget)
    if pick is not None:
        pieces = []
        for w, idx in zip(W, pick):
            el = elements[idx]
            src = el.exchange.source
            pieces.append(Piece(el.exchange, ((el.word, src),)))
        return Outcome(VERIFIED, FillingCertificate(W, tuple(pieces)))
    # through a comparison certificate: transport the whole space into the W_k
    res = search_compare_tuple(G, (shift.whole(),), W, L, budget=budget, **kw)
    if res.verified:
        by_target: dict = {}
        for _, p, k in res.certificate.entries:
            by_target.setdefault(k, []).append(p)
        pieces = []
        for k in range(len(W)):
            ps = by_target.get(k, [])
            pairs = [pr for p in ps for pr in p.exchange.pairs]
            prov = tuple(x for p in ps for x in p.provenance)
            O = PrefixExchange(shift, pairs).canonical()
            pieces.append(_invert_piece(Piece(O, prov)))
        return Outcome(VERIFIED, FillingCertificate(W, tuple(pieces)))
    reason = "exhausted" if enumeration_stable(G, L) else "bound"
    return Outcome(UNKNOWN, reason=reason)


def _invert_piece(p: Piece) -> Piece:
    inv = invert(p.exchange)
    prov = []
    for word, part in p.provenance:
        inv_word = tuple(_inverse_letter(x) for x in reversed(word))
        prov.append((inv_word, apply(p.exchange, part)))
    return Piece(inv, tuple(prov))


def _inverse_letter(x: str) -> str:
    from .bisections import INVERSE_SUFFIX
    if x.endswith(INVERSE_SUFFIX):
        return x[: -len(INVERSE_SUFFIX)]
    return x + INVERSE_SUFFIX


def locally_contracting_witness(G: GroupoidPresentation, V: Clopen, L: int, **kw) -> Outcome:
    """A bisection O with s(O) = V and r(O) a proper subset of V."""
    if V.is_empty:
        raise ValueError("locally_contracting_witness needs a non-empty set")
    for el in enumerate_elements(G, L):
        pe = el.exchange
        if not is_subset(V, pe.source):
            continue
        img = apply(pe, V)
        if is_subset(img, V) and img != V:
            piece = Piece(restrict(pe, V), ((el.word, V),))
            return Outcome(VERIFIED, Transporter(V, img, [piece]))
    v1, _ = default_halves(V)
    res = search_compare(G, V, v1, L, **kw)
    if res.verified:
        return Outcome(VERIFIED, normalize_certificate(res.certificate))
    if enumeration_stable(G, L):
        return Outcome(EXHAUSTED, reason="exhausted")
    return Outcome(UNKNOWN, reason="bound")


def global_fixed_unit_scan(G: GroupoidPresentation, d: int) -> list:
    """Depth-d cylinders on which every generator acts as the identity."""
    if d < 1:
        raise ValueError("depth must be >= 1")
    out = []
    for w in G.shift.words(d):
        cyl = _cylinder(G.shift, w)
        moved = False
        for _, g in G.letters:
            r = restrict(g, cyl)
            if not r.is_empty and r != identity(G.shift, r.source):
                moved = True
                break
        if not moved:
            out.append(cyl)
    return out


def transporter_measure_gap(m: MeasureVector, c: Transporter):
    return m.measure(c.subject) - m.measure(c.target)
