"""Built-in example systems."""
from __future__ import annotations

from dataclasses import dataclass

from .bisections import GroupoidPresentation, PrefixExchange, identity
from .symbolic import MAX_ALPHABET, Subshift, SubshiftError


@dataclass
class SystemDescriptor:
    name: str
    presentation: GroupoidPresentation
    provenance: str


def _check_relation(G, word, what):
    if G.evaluate(word) != identity(G.shift):
        raise AssertionError(f"{G.name}: relation {what} fails")


def o2_action() -> GroupoidPresentation:
    """Z2 * Z3 acting on {0,1}^N: phi flips the first bit, psi cycles 0 -> 11 -> 10 -> 0."""
    S = Subshift.full(2)
    phi = PrefixExchange(S, [((0,), (1,)), ((1,), (0,))])
    psi = PrefixExchange(S, [((0,), (1, 1)), ((1, 1), (1, 0)), ((1, 0), (0,))])
    G = GroupoidPresentation(S, {"phi": phi, "psi": psi}, kind="group", name="o2",
                             note="Z2*Z3 dynamical model of the Cuntz algebra O2")
    msg = G.validate()
    if msg:
        raise AssertionError(msg)
    _check_relation(G, ("phi", "phi"), "phi^2 = id")
    _check_relation(G, ("psi", "psi", "psi"), "psi^3 = id")
    return G


def o2_solver_word(z) -> tuple:
    """Generator word g with g(N_0) = N_z, built by reducing z to "0".

    Each step shortens or normalizes the leading symbols: a leading 0
    (with more to follow) is flipped by phi, "10" is sent to "0" by psi and
    "11" to "0" by psi^-1; a lone "1" is flipped last.  The reduction is
    then inverted.
    """
    if isinstance(z, str):
        z = tuple(int(ch) for ch in z)
    z = tuple(z)
    if not z:
        raise ValueError("o2_solver needs a non-empty word")
    if any(s not in (0, 1) for s in z):
        raise ValueError("o2_solver works over the binary alphabet")
    steps = []
    while len(z) >= 2:
        if z[0] == 0:
            steps.append("phi")
            z = (1,) + z[1:]
        elif z[1] == 0:
            steps.append("psi")
            z = (0,) + z[2:]
        else:
            steps.append("psi^-1")
            z = (0,) + z[2:]
    if z == (1,):
        steps.append("phi")
    # reduction h = steps[-1] o ... o steps[0]; answer is h^-1
    inverse = {"phi": "phi", "psi": "psi^-1", "psi^-1": "psi"}
    return tuple(inverse[s] for s in steps)


def o2_solver(z, G: GroupoidPresentation = None) -> PrefixExchange:
    G = G or o2_action()
    return G.evaluate(o2_solver_word(z))


def _free_names(n):
    letters = "abcdefghijklmnopqrstuvwxyz"
    if n > len(letters):
        raise ValueError("free_boundary supports at most 26 generators")
    names = []
    for x in letters[:n]:
        names += [x, x.upper()]
    return names


def free_boundary(n: int) -> GroupoidPresentation:
    """F_n acting on the space of reduced infinite words."""
    if n < 2:
        raise ValueError("free_boundary needs n >= 2")
    names = _free_names(n)
    k = 2 * n
    trans = [[0 if (j == (i ^ 1)) else 1 for j in range(k)] for i in range(k)]
    S = Subshift(k, tuple(map(tuple, trans)), tuple(names))
    gens = {}
    for g in range(n):
        a, a_inv = 2 * g, 2 * g + 1
        pairs = [((a_inv, s), (s,)) for s in S.follow((a_inv,))]
        pairs += [((s,), (a, s)) for s in range(k) if s != a_inv]
        gens[names[a]] = PrefixExchange(S, pairs)
    G = GroupoidPresentation(S, gens, kind="group", name=f"f{n}",
                             note=f"free group F{n} on its boundary")
    msg = G.validate()
    if msg:
        raise AssertionError(msg)
    for x in gens:
        _check_relation(G, (x, x + "^-1"), f"{x} {x}^-1 = id")
    return G


def sft_dr(matrix, names=None, name="sft") -> GroupoidPresentation:
    """Deaconu-Renault presentation of a one-step SFT: prepend maps s_a."""
    S = Subshift(len(matrix), tuple(map(tuple, matrix)), names)
    gens = {}
    for a in range(S.size):
        pairs = [((b,), (a, b)) for b in S.follow((a,)) if b in S.follow(())]
        gens["s" + S.names[a]] = PrefixExchange(S, pairs).canonical()
    G = GroupoidPresentation(S, gens, kind="etale", name=name,
                             note="Deaconu-Renault groupoid of a shift of finite type")
    msg = G.validate()
    if msg:
        raise AssertionError(msg)
    return G


def full_shift_dr(k: int) -> GroupoidPresentation:
    if k < 2:
        raise ValueError("full_shift_dr needs k >= 2")
    G = sft_dr([[1] * k for _ in range(k)], name=f"full{k}")
    G.note = "Cuntz groupoid: Deaconu-Renault groupoid of the full shift"
    return G


def golden_mean_dr() -> GroupoidPresentation:
    return sft_dr([[1, 1], [1, 0]], name="golden")


def trivial_action(k: int) -> GroupoidPresentation:
    if k < 2:
        raise ValueError("trivial_action needs k >= 2")
    return GroupoidPresentation(Subshift.full(k), {}, kind="group", name=f"trivial{k}",
                                note="trivial action on the full shift")


def amplify(G: GroupoidPresentation, m: int) -> GroupoidPresentation:
    """G x {1..m}: a fiber tag f1..fm is prepended and pinned to position 0."""
    if m < 1:
        raise ValueError("amplify needs m >= 1")
    S = G.shift
    k = S.size
    if k + m > MAX_ALPHABET:
        raise SubshiftError(f"amplified alphabet {k + m} exceeds {MAX_ALPHABET} symbols")
    tags = [f"f{i + 1}" for i in range(m)]
    base_initial = set(S.follow(()))
    rows = []
    for _ in range(m):
        rows.append(tuple([0] * m + [1 if j in base_initial else 0 for j in range(k)]))
    for i in range(k):
        rows.append(tuple([0] * m + [1 if S.allowed(i, j) else 0 for j in range(k)]))
    T = Subshift(k + m, tuple(rows), tuple(tags) + tuple(S.names), initial=frozenset(range(m)))

    def lift(w):
        return tuple(s + m for s in w)

    gens = {}
    for name, g in G.generators.items():
        pairs = [((t,) + lift(u), (t,) + lift(v)) for t in range(m) for u, v in g.canonical_pairs]
        gens[name] = PrefixExchange(T, pairs).canonical()
    A = GroupoidPresentation(T, gens, kind=G.kind, name=f"{G.name}x{m}",
                             note=f"amplification of {G.name} by {m} fibers")
    msg = A.validate()
    if msg:
        raise AssertionError(msg)
    return A


def fiber(G: GroupoidPresentation, i: int):
    """Clopen of fiber ``i`` (1-based) in an amplified presentation."""
    return G.shift.cylinder((i - 1,))


BUILTIN = {
    "o2": (o2_action, "Z2*Z3 action modelling O2"),
    "trivial2": (lambda: trivial_action(2), "trivial action on the full 2-shift"),
    "trivial3": (lambda: trivial_action(3), "trivial action on the full 3-shift"),
    "full2": (lambda: full_shift_dr(2), "Deaconu-Renault groupoid of the full 2-shift"),
    "full3": (lambda: full_shift_dr(3), "Deaconu-Renault groupoid of the full 3-shift"),
    "golden": (golden_mean_dr, "Deaconu-Renault groupoid of the golden-mean shift"),
    "f2": (lambda: free_boundary(2), "F2 acting on its boundary"),
    "f3": (lambda: free_boundary(3), "F3 acting on its boundary"),
    "o2x2": (lambda: amplify(o2_action(), 2), "amplification of the O2 model by 2 fibers"),
}


def builtin(name: str) -> GroupoidPresentation:
    try:
        factory = BUILTIN[name][0]
    except KeyError:
        raise KeyError(f"unknown built-in system {name!r}") from None
    G = factory()
    G.name = name
    return G


def catalog() -> list:
    return [SystemDescriptor(name, builtin(name), desc) for name, (_, desc) in BUILTIN.items()]
