"""Text format for system descriptions.

    # comments run to end of line
    name o2
    kind group                 # or: etale
    alphabet 0 1               # symbol names
    transitions                # optional, one 0/1 row per symbol
      1 1
      1 1
    initial 0 1                # optional, symbols allowed first
    generator phi
      0 -> 1
      1 -> 0

Words are written by concatenating symbol names (or joining them with
``.`` when some name is longer than one character); ``ε`` is the empty
word.
"""
from __future__ import annotations

from pathlib import Path

from .bisections import GroupoidPresentation, PrefixExchange
from .symbolic import EPSILON, Subshift, SubshiftError

KEYWORDS = ("name", "kind", "alphabet", "transitions", "initial", "generator")


class SystemFileError(ValueError):
    def __init__(self, message, line=0, col=0):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


def _tokens(raw):
    """(column, token) for each whitespace-separated token, 1-based columns."""
    out = []
    i = 0
    while i < len(raw):
        if raw[i].isspace():
            i += 1
            continue
        j = i
        while j < len(raw) and not raw[j].isspace():
            j += 1
        out.append((i + 1, raw[i:j]))
        i = j
    return out


def parse_system(text: str) -> GroupoidPresentation:
    name = "custom"
    kind = "etale"
    names = None
    rows = None
    initial = None
    gens = []        # (name, [(u_text, v_text, line, col)], line)
    mode = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        raw = raw.split("#", 1)[0]
        toks = _tokens(raw)
        if not toks:
            continue
        col, head = toks[0]
        if head in KEYWORDS:
            mode = None
            args = toks[1:]
            if head == "name":
                if len(args) != 1:
                    raise SystemFileError("name takes one argument", lineno, col)
                name = args[0][1]
            elif head == "kind":
                if len(args) != 1 or args[0][1] not in ("group", "etale"):
                    raise SystemFileError("kind must be 'group' or 'etale'", lineno, col)
                kind = args[0][1]
            elif head == "alphabet":
                if len(args) < 2:
                    raise SystemFileError("alphabet needs at least two symbols", lineno, col)
                names = [t for _, t in args]
            elif head == "transitions":
                if args:
                    raise SystemFileError("rows go on the following lines", lineno, args[0][0])
                rows = []
                mode = "rows"
            elif head == "initial":
                if not args:
                    raise SystemFileError("initial needs at least one symbol", lineno, col)
                initial = args
            elif head == "generator":
                if len(args) != 1:
                    raise SystemFileError("generator takes one name", lineno, col)
                gens.append((args[0][1], [], lineno))
                mode = "pairs"
            continue
        if mode == "rows":
            row = []
            for c, t in toks:
                if t not in ("0", "1"):
                    raise SystemFileError(f"transition entries must be 0 or 1, got {t!r}", lineno, c)
                row.append(int(t))
            rows.append((row, lineno, col))
        elif mode == "pairs":
            if len(toks) != 3 or toks[1][1] != "->":
                raw_s = raw.strip()
                if "->" in raw_s:
                    left, right = raw_s.split("->", 1)
                    gens[-1][1].append((left.strip(), right.strip(), lineno, col))
                    continue
                raise SystemFileError("expected 'source -> target'", lineno, col)
            gens[-1][1].append((toks[0][1], toks[2][1], lineno, col))
        else:
            raise SystemFileError(f"unexpected {head!r}", lineno, col)

    if names is None:
        raise SystemFileError("missing alphabet", 0, 0)
    trans = None
    if rows is not None:
        if len(rows) != len(names):
            raise SystemFileError(f"expected {len(names)} transition rows, got {len(rows)}",
                                  rows[-1][1] if rows else 0, 1)
        for row, ln, c in rows:
            if len(row) != len(names):
                raise SystemFileError(f"row has {len(row)} entries, expected {len(names)}", ln, c)
        trans = tuple(tuple(r) for r, _, _ in rows)
    init = None
    if initial is not None:
        try:
            init = frozenset(names.index(t) for _, t in initial)
        except ValueError:
            raise SystemFileError("initial lists an unknown symbol", 0, 0) from None
    try:
        shift = Subshift(len(names), trans, tuple(names), init)
    except SubshiftError as exc:
        raise SystemFileError(str(exc), 0, 0) from None
    generators = {}
    for gname, pairs, gline in gens:
        if gname in generators:
            raise SystemFileError(f"duplicate generator {gname!r}", gline, 1)
        parsed = []
        for u, v, ln, c in pairs:
            try:
                parsed.append((shift.parse_word(u), shift.parse_word(v)))
            except SubshiftError as exc:
                raise SystemFileError(str(exc), ln, c) from None
        generators[gname] = PrefixExchange(shift, parsed)
    try:
        G = GroupoidPresentation(shift, generators, kind=kind, name=name)
    except (ValueError, SubshiftError) as exc:
        raise SystemFileError(str(exc), 0, 0) from None
    msg = G.validate()
    if msg:
        line = next((ln for gname, _, ln in gens if msg.startswith(f"generator {gname}:")), 0)
        raise SystemFileError(msg, line, 1)
    return G


def dump_system(G: GroupoidPresentation) -> str:
    S = G.shift
    lines = []
    if G.note:
        lines.append(f"# {G.note}")
    lines.append(f"name {G.name}")
    lines.append(f"kind {G.kind}")
    lines.append("alphabet " + " ".join(S.names))
    if S.transitions is not None:
        lines.append("transitions")
        for row in S.transitions:
            lines.append("  " + " ".join(str(x) for x in row))
    if S.initial is not None:
        lines.append("initial " + " ".join(S.names[i] for i in sorted(S.initial)))
    for gname, g in G.generators.items():
        lines.append(f"generator {gname}")
        for u, v in g.pairs:
            lines.append(f"  {S.format_word(u) or EPSILON} -> {S.format_word(v) or EPSILON}")
    return "\n".join(lines) + "\n"


def load_system(source: str) -> GroupoidPresentation:
    """A built-in name or a path to a system file."""
    from .catalog import BUILTIN, builtin
    if source in BUILTIN:
        return builtin(source)
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"no built-in system or file named {source!r}")
    return parse_system(path.read_text(encoding="utf-8"))
