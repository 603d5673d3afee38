"""Exception types shared across the workbench.

Every error carries an ``exit_code`` used by the CLI: 2 for input/parse
problems, 3 for semantic mismatches, 4 for empty-result conditions.
"""


class LgwError(Exception):
    exit_code = 2


class MalformedLine(LgwError):
    """A lexicon line is missing its comma or period separator."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class GraphSyntaxError(LgwError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class DuplicateBoxId(GraphSyntaxError):
    pass


class MissingInitialOrFinal(LgwError):
    pass


class EdgeToUnknownBox(GraphSyntaxError):
    pass


class UnresolvedSubgraph(LgwError):
    def __init__(self, name: str):
        super().__init__(f"unresolved subgraph: {name}")
        self.name = name


class RecursiveCall(LgwError):
    """Grammars must stay finite-state: subgraph calls may not form a cycle."""

    def __init__(self, cycle):
        super().__init__("recursive subgraph call: " + " -> ".join(cycle))
        self.cycle = tuple(cycle)


class SpanOutOfBounds(LgwError):
    pass


class MalformedConcordanceLine(LgwError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class TextMismatch(LgwError):
    exit_code = 3


class MalformedTag(LgwError):
    def __init__(self, position: int, reason: str = "malformed <EM> tag"):
        super().__init__(f"offset {position}: {reason}")
        self.position = position


class NestedTag(LgwError):
    def __init__(self, position: int):
        super().__init__(f"offset {position}: nested <EM> tags are not allowed")
        self.position = position


class OverlappingOccurrences(LgwError):
    pass


class MissingPair(LgwError):
    def __init__(self, pair):
        super().__init__(f"no relation report for pair {pair[0]!r}/{pair[1]!r}")
        self.pair = tuple(pair)


class EmptyKeepSet(LgwError):
    exit_code = 4
