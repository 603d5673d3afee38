"""Local grammar graphs: parsing, rendering and validation.

A graph file (``.lg``, UTF-8, LF) looks like::

    graph Nome
    box caixa1 out="<NOME>" "Sr." ; <PRE><<..>> ; :Subgrafo ; <E>
    init inicio
    final fim
    edge inicio caixa1

Atoms inside a box alternative: ``"literal"``, ``<POS+Code+...>``,
``<MASK><<pattern>>``, ``<E>`` and ``:SubgraphName``.  ``#`` at the start
of a line begins a comment.  The ``init`` and ``final`` boxes are virtual:
they carry no input and need no ``box`` line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    DuplicateBoxId,
    EdgeToUnknownBox,
    GraphSyntaxError,
    MissingInitialOrFinal,
    RecursiveCall,
    UnresolvedSubgraph,
)

# POS tags recognized as the leading segment of a mask; anything else in
# first position is treated as a semantic code, so <Hum> and <N+Hum>
# select the same entries.
POS_TAGS = frozenset(
    {"N", "V", "A", "ADJ", "ADV", "PREP", "DET", "PRON", "CONJ", "INTJ", "NUM"}
)

BUILTIN_MASKS = frozenset({"PRE", "MOT"})

_ID_RE = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class MorphFilter:
    """Restricted regular expression over a token's characters, anchored at
    both ends.  A trailing unquantified literal or ``.`` atom gets an
    implicit ``.*`` appended, so ``..`` means "at least two characters";
    write ``.{2,2}`` for "exactly two"."""

    pattern: str

    def compiled(self):
        return compile_filter(self.pattern)

    def match(self, surface: str) -> bool:
        return compile_filter(self.pattern).fullmatch(surface) is not None


@lru_cache(maxsize=512)
def compile_filter(pattern: str):
    if not pattern:
        raise ValueError("empty morphological filter")
    out = []
    i = 0
    n = len(pattern)
    trailing_plain = False
    while i < n:
        c = pattern[i]
        if c in "*+{}]":
            raise ValueError(f"unexpected {c!r} at position {i} in filter {pattern!r}")
        if c == ".":
            out.append(".")
            plain = True
            i += 1
        elif c == "[":
            j = pattern.find("]", i + 1)
            if j < 0:
                raise ValueError(f"unterminated character class in filter {pattern!r}")
            if "[" in pattern[i + 1 : j]:
                raise ValueError(f"nested character class in filter {pattern!r}")
            out.append(pattern[i : j + 1])
            plain = False
            i = j + 1
        else:
            out.append(re.escape(c))
            plain = True
            i += 1
        quantified = False
        if i < n and pattern[i] in "*+":
            out.append(pattern[i])
            i += 1
            quantified = True
        elif i < n and pattern[i] == "{":
            j = pattern.find("}", i)
            if j < 0 or not re.fullmatch(r"\{\d+(,\d+)?\}", pattern[i : j + 1]):
                raise ValueError(f"bad quantifier in filter {pattern!r}")
            out.append(pattern[i : j + 1])
            i = j + 1
            quantified = True
        trailing_plain = plain and not quantified
    if trailing_plain:
        out.append(".*")
    return re.compile("".join(out))


@dataclass(frozen=True)
class LexicalMask:
    pos: str = None
    codes: frozenset = frozenset()
    builtin: str = None  # "PRE" | "MOT" | None

    @property
    def required(self) -> frozenset:
        req = set(self.codes)
        if self.pos:
            req.add(self.pos)
        return frozenset(req)


@dataclass(frozen=True)
class InputAtom:
    kind: str  # "literal" | "mask" | "epsilon" | "call"
    literal: str = None
    mask: LexicalMask = None
    graph_name: str = None
    filter: MorphFilter = None

    @staticmethod
    def lit(s: str) -> "InputAtom":
        return InputAtom("literal", literal=s)

    @staticmethod
    def eps() -> "InputAtom":
        return InputAtom("epsilon")

    @staticmethod
    def call(name: str) -> "InputAtom":
        return InputAtom("call", graph_name=name)

    @staticmethod
    def masked(mask: LexicalMask, filt: MorphFilter = None) -> "InputAtom":
        return InputAtom("mask", mask=mask, filter=filt)


@dataclass(frozen=True)
class GraphBox:
    id: str
    alternatives: tuple  # tuple of tuples of InputAtom
    output: str = None


@dataclass(frozen=True)
class Graph:
    name: str
    boxes: tuple  # tuple of GraphBox, file order preserved
    edges: frozenset  # of (from_id, to_id)
    initial: str
    final: str

    def box_map(self) -> dict:
        return {b.id: b for b in self.boxes}

    def successors(self) -> dict:
        succ: dict = {}
        for a, b in sorted(self.edges):
            succ.setdefault(a, []).append(b)
        return succ


@dataclass
class GrammarSet:
    graphs: dict  # name -> Graph
    main: str


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    detail: str


def parse_mask_body(body: str, line_no: int) -> LexicalMask:
    segs = body.split("+")
    if any(not s for s in segs):
        raise GraphSyntaxError(line_no, f"empty segment in mask <{body}>")
    if len(segs) == 1 and segs[0] in BUILTIN_MASKS:
        return LexicalMask(builtin=segs[0])
    if segs[0] in POS_TAGS:
        return LexicalMask(pos=segs[0], codes=frozenset(segs[1:]))
    return LexicalMask(codes=frozenset(segs))


def _read_quoted(s: str, i: int, line_no: int):
    # s[i] == '"'; returns (value, next_index)
    out = []
    i += 1
    while i < len(s):
        c = s[i]
        if c == "\\" and i + 1 < len(s):
            out.append(s[i + 1])
            i += 2
        elif c == '"':
            return "".join(out), i + 1
        else:
            out.append(c)
            i += 1
    raise GraphSyntaxError(line_no, "unterminated string literal")


def _lex_atoms(s: str, line_no: int):
    """Yield ('SEP',), ('LIT', v), ('EPS',), ('MASK', body, filter), ('CALL', name)."""
    i = 0
    n = len(s)
    while i < n:
        c = s[i]
        if c.isspace():
            i += 1
        elif c == ";":
            yield ("SEP",)
            i += 1
        elif c == '"':
            val, i = _read_quoted(s, i, line_no)
            if not val:
                raise GraphSyntaxError(line_no, "empty literal")
            yield ("LIT", val)
        elif c == "<":
            j = s.find(">", i)
            if j < 0:
                raise GraphSyntaxError(line_no, "unterminated mask")
            body = s[i + 1 : j]
            i = j + 1
            filt = None
            if s.startswith("<<", i):
                k = s.find(">>", i + 2)
                if k < 0:
                    raise GraphSyntaxError(line_no, "unterminated morphological filter")
                filt = s[i + 2 : k]
                i = k + 2
            if body == "E":
                if filt is not None:
                    raise GraphSyntaxError(line_no, "<E> cannot carry a filter")
                yield ("EPS",)
            else:
                yield ("MASK", body, filt)
        elif c == ":":
            m = re.match(r"[A-Za-z0-9_]+", s[i + 1 :])
            if not m:
                raise GraphSyntaxError(line_no, "missing subgraph name after ':'")
            yield ("CALL", m.group(0))
            i += 1 + m.end()
        else:
            raise GraphSyntaxError(line_no, f"unexpected character {c!r}")


def _parse_box_line(rest: str, line_no: int) -> GraphBox:
    m = re.match(r"\s*([A-Za-z0-9_]+)\s*", rest)
    if not m:
        raise GraphSyntaxError(line_no, "missing box id")
    box_id = m.group(1)
    rest = rest[m.end() :]
    output = None
    if rest.startswith('out="'):
        output, j = _read_quoted(rest, len("out="), line_no)
        rest = rest[j:]
    alts = [[]]
    for tok in _lex_atoms(rest, line_no):
        if tok[0] == "SEP":
            alts.append([])
        elif tok[0] == "LIT":
            alts[-1].append(InputAtom.lit(tok[1]))
        elif tok[0] == "EPS":
            alts[-1].append(InputAtom.eps())
        elif tok[0] == "CALL":
            alts[-1].append(InputAtom.call(tok[1]))
        else:
            mask = parse_mask_body(tok[1], line_no)
            filt = None
            if tok[2] is not None:
                try:
                    compile_filter(tok[2])
                except ValueError as exc:
                    raise GraphSyntaxError(line_no, str(exc)) from exc
                filt = MorphFilter(tok[2])
            alts[-1].append(InputAtom.masked(mask, filt))
    for alt in alts:
        if not alt:
            raise GraphSyntaxError(line_no, "empty alternative")
        if any(a.kind == "epsilon" for a in alt) and len(alt) > 1:
            raise GraphSyntaxError(line_no, "<E> must be alone in its alternative")
    return GraphBox(box_id, tuple(tuple(a) for a in alts), output)


def parse_graph(text: str) -> Graph:
    name = None
    boxes = []
    box_ids = set()
    edges = set()
    initial = None
    final = None
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "graph":
            if not _ID_RE.match(rest):
                raise GraphSyntaxError(line_no, f"bad graph name {rest!r}")
            name = rest
        elif head == "box":
            box = _parse_box_line(rest, line_no)
            if box.id in box_ids:
                raise DuplicateBoxId(line_no, f"duplicate box id {box.id!r}")
            box_ids.add(box.id)
            boxes.append(box)
        elif head == "init":
            if not _ID_RE.match(rest):
                raise GraphSyntaxError(line_no, f"bad init id {rest!r}")
            initial = rest
        elif head == "final":
            if not _ID_RE.match(rest):
                raise GraphSyntaxError(line_no, f"bad final id {rest!r}")
            final = rest
        elif head == "edge":
            parts = rest.split()
            if len(parts) != 2:
                raise GraphSyntaxError(line_no, "edge needs exactly two box ids")
            edges.add((parts[0], parts[1]))
        else:
            raise GraphSyntaxError(line_no, f"unknown directive {head!r}")
    if name is None:
        raise GraphSyntaxError(0, "missing 'graph' directive")
    if initial is None or final is None:
        raise MissingInitialOrFinal(f"graph {name}: missing init or final")
    for special, what in ((initial, "initial"), (final, "final")):
        if special in box_ids:
            raise GraphSyntaxError(0, f"{what} box {special!r} must not carry input")
    known = box_ids | {initial, final}
    for a, b in sorted(edges):
        for end in (a, b):
            if end not in known:
                raise EdgeToUnknownBox(0, f"edge references unknown box {end!r}")
    return Graph(name, tuple(boxes), frozenset(edges), initial, final)


def _render_atom(a: InputAtom) -> str:
    if a.kind == "literal":
        body = a.literal.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{body}"'
    if a.kind == "epsilon":
        return "<E>"
    if a.kind == "call":
        return ":" + a.graph_name
    mask = a.mask
    if mask.builtin:
        body = mask.builtin
    else:
        segs = ([mask.pos] if mask.pos else []) + sorted(mask.codes)
        body = "+".join(segs)
    s = f"<{body}>"
    if a.filter is not None:
        s += f"<<{a.filter.pattern}>>"
    return s


def render_graph(g: Graph) -> str:
    lines = [f"graph {g.name}"]
    for box in g.boxes:
        parts = ["box", box.id]
        if box.output is not None:
            out = box.output.replace("\\", "\\\\").replace('"', '\\"')
            parts.append(f'out="{out}"')
        parts.append(" ; ".join(" ".join(_render_atom(a) for a in alt) for alt in box.alternatives))
        lines.append(" ".join(parts))
    lines.append(f"init {g.initial}")
    lines.append(f"final {g.final}")
    for a, b in sorted(g.edges):
        lines.append(f"edge {a} {b}")
    return "\n".join(lines) + "\n"


def load_grammar_set(files, main: str) -> GrammarSet:
    """Parse every (name, text) pair, resolve subgraph calls and verify the
    call graph is acyclic (recursion would break the finite-state model)."""
    graphs = {}
    for _, text in files:
        g = parse_graph(text)
        graphs[g.name] = g
    if main not in graphs:
        raise UnresolvedSubgraph(main)
    calls: dict = {name: set() for name in graphs}
    for name, g in graphs.items():
        for box in g.boxes:
            for alt in box.alternatives:
                for atom in alt:
                    if atom.kind == "call":
                        if atom.graph_name not in graphs:
                            raise UnresolvedSubgraph(atom.graph_name)
                        calls[name].add(atom.graph_name)
    # cycle detection over the call graph
    state: dict = {}
    stack: list = []

    def visit(node):
        state[node] = "active"
        stack.append(node)
        for nxt in sorted(calls[node]):
            if state.get(nxt) == "active":
                cycle = stack[stack.index(nxt) :] + [nxt]
                raise RecursiveCall(cycle)
            if nxt not in state:
                visit(nxt)
        stack.pop()
        state[node] = "done"

    for name in sorted(graphs):
        if name not in state:
            visit(name)
    return GrammarSet(graphs, main)


def _epsilon_path_exists(g: Graph) -> bool:
    """True when initial reaches final consuming no token."""
    box_map = g.box_map()
    succ = g.successors()
    passable = {g.initial}
    for b in g.boxes:
        if any(len(alt) == 1 and alt[0].kind == "epsilon" for alt in b.alternatives):
            passable.add(b.id)
    seen = set()
    frontier = [g.initial]
    while frontier:
        cur = frontier.pop()
        if cur in seen:
            continue
        seen.add(cur)
        if cur == g.final:
            return True
        if cur in passable or cur == g.initial:
            frontier.extend(succ.get(cur, ()))
    return False


def validate(g: Graph) -> list:
    """Structural diagnostics; an empty list means the graph is usable."""
    diags = []
    succ = g.successors()
    pred: dict = {}
    for a, b in g.edges:
        pred.setdefault(b, []).append(a)
    reachable = set()
    frontier = [g.initial]
    while frontier:
        cur = frontier.pop()
        if cur in reachable:
            continue
        reachable.add(cur)
        frontier.extend(succ.get(cur, ()))
    coreach = set()
    frontier = [g.final]
    while frontier:
        cur = frontier.pop()
        if cur in coreach:
            continue
        coreach.add(cur)
        frontier.extend(pred.get(cur, ()))
    for box in g.boxes:
        if box.id not in reachable:
            diags.append(Diagnostic("warning", "Unreachable", f"box {box.id!r} is unreachable from init"))
        elif box.id not in coreach:
            diags.append(Diagnostic("warning", "NotCoReachable", f"box {box.id!r} cannot reach final"))
    if succ.get(g.final):
        diags.append(Diagnostic("error", "FinalHasSuccessor", f"final box {g.final!r} has outgoing edges"))
    if g.final not in reachable:
        diags.append(Diagnostic("error", "FinalUnreachable", f"final box {g.final!r} is unreachable"))
    if _epsilon_path_exists(g):
        diags.append(Diagnostic("error", "EmptyMatch", "grammar can match the empty token sequence"))
    return diags


def validate_set(gs: GrammarSet) -> list:
    diags = []
    for name in sorted(gs.graphs):
        for d in validate(gs.graphs[name]):
            diags.append(Diagnostic(d.severity, d.code, f"{name}: {d.detail}"))
    return diags
