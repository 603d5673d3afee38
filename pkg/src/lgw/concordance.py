"""Concordances: occurrences with one line of left/right context.

File format (``.cnc``, UTF-8, LF): a header line

    #concordance v1 <grammar> <text_id> <left_width> <right_width>

then one TSV line per occurrence, ``start<TAB>end<TAB>left<TAB>match<TAB>right``
with backslash, TAB, LF and CR escaped as ``\\\\``, ``\\t``, ``\\n``, ``\\r``.
Lines are kept in positional (start, end) order; empty grammar or text id
is written as ``-``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import MalformedConcordanceLine, SpanOutOfBounds

_NEWLINE_RE = re.compile(r"\r\n|\r|\n")


@dataclass(frozen=True)
class ContextConfig:
    left_chars: int = 40
    right_chars: int = 60


@dataclass(frozen=True)
class ConcordanceLine:
    start: int
    end: int
    left: str
    match: str
    right: str


@dataclass
class Concordance:
    lines: list
    source_grammar: str = ""
    source_text_id: str = ""
    left_width: int = 40
    right_width: int = 60


def build_concordance(
    occs, text: str, cfg: ContextConfig = ContextConfig(), *, grammar=None, text_id=""
) -> Concordance:
    """One line per distinct (start, end, merged) occurrence, contexts
    clipped at the text bounds and newlines normalized to spaces."""
    if grammar is None:
        grammar = occs[0].grammar if occs else ""
    seen = set()
    lines = []
    for o in occs:
        if o.start < 0 or o.end > len(text) or o.start >= o.end:
            raise SpanOutOfBounds(f"occurrence span ({o.start}, {o.end}) out of bounds")
        key = (o.start, o.end, o.merged)
        if key in seen:
            continue
        seen.add(key)
        left = _NEWLINE_RE.sub(" ", text[max(0, o.start - cfg.left_chars) : o.start])
        right = _NEWLINE_RE.sub(" ", text[o.end : o.end + cfg.right_chars])
        lines.append(ConcordanceLine(o.start, o.end, left, o.merged, right))
    lines.sort(key=lambda l: (l.start, l.end, l.match))
    return Concordance(
        lines,
        source_grammar=grammar,
        source_text_id=text_id,
        left_width=cfg.left_chars,
        right_width=cfg.right_chars,
    )


def _esc(s: str) -> str:
    return (
        s.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def _unesc(s: str) -> str:
    out = []
    i = 0
    while i < len(s):
        c = s[i]
        if c == "\\" and i + 1 < len(s):
            nxt = s[i + 1]
            out.append({"t": "\t", "n": "\n", "r": "\r", "\\": "\\"}.get(nxt, nxt))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def _header_field(s: str) -> str:
    if any(c.isspace() for c in s):
        raise ValueError(f"whitespace not allowed in header field {s!r}")
    return s or "-"


def write_concordance(c: Concordance) -> str:
    out = [
        f"#concordance v1 {_header_field(c.source_grammar)} "
        f"{_header_field(c.source_text_id)} {c.left_width} {c.right_width}"
    ]
    for l in c.lines:
        out.append(
            f"{l.start}\t{l.end}\t{_esc(l.left)}\t{_esc(l.match)}\t{_esc(l.right)}"
        )
    return "\n".join(out) + "\n"


def parse_concordance(s: str) -> Concordance:
    # split on LF only: splitlines() would also break on form feeds and
    # similar characters, which are legal (escaped-free) inside fields
    lines = [l.rstrip("\r") for l in s.split("\n")]
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MalformedConcordanceLine(1, "missing header")
    m = re.fullmatch(r"#concordance v1 (\S+) (\S+) (\d+) (\d+)", lines[0])
    if not m:
        raise MalformedConcordanceLine(1, f"bad header {lines[0]!r}")
    grammar = "" if m.group(1) == "-" else m.group(1)
    text_id = "" if m.group(2) == "-" else m.group(2)
    conc_lines = []
    for line_no, raw in enumerate(lines[1:], 2):
        if not raw:
            continue
        fields = raw.split("\t")
        if len(fields) != 5:
            raise MalformedConcordanceLine(
                line_no, f"expected 5 TAB-separated fields, got {len(fields)}"
            )
        try:
            start, end = int(fields[0]), int(fields[1])
        except ValueError:
            raise MalformedConcordanceLine(line_no, "non-integer span") from None
        conc_lines.append(
            ConcordanceLine(
                start, end, _unesc(fields[2]), _unesc(fields[3]), _unesc(fields[4])
            )
        )
    return Concordance(
        conc_lines,
        source_grammar=grammar,
        source_text_id=text_id,
        left_width=int(m.group(3)),
        right_width=int(m.group(4)),
    )
