"""Exception hierarchy for the hemln package.

All library errors derive from :class:`HemlnError` so callers (and the CLI)
can distinguish data/usage problems from genuine bugs.
"""


class HemlnError(Exception):
    """Base class for all hemln errors."""


# --- model -----------------------------------------------------------------

class MalformedGraph(HemlnError):
    """Self-loop, dangling edge endpoint, or negative node id."""


class DuplicateLayer(HemlnError):
    pass


class NodeIdCollision(HemlnError):
    """A node id appears in more than one layer."""


class UnknownLayer(HemlnError):
    pass


class UnknownNode(HemlnError):
    pass


class EndpointNotInLayer(HemlnError):
    """An inter-layer link endpoint is missing from its declared layer."""


class DuplicatePair(HemlnError):
    """A second inter-layer edge set for the same layer pair."""


# --- community -------------------------------------------------------------

class EmptyGraph(HemlnError):
    pass


class MissingNode(HemlnError):
    pass


class DuplicateNode(HemlnError):
    pass


class InvalidQuantile(HemlnError):
    pass


# --- cbg -------------------------------------------------------------------

class NoInterLayerEdges(HemlnError):
    pass


class UnknownCommunity(HemlnError):
    pass


class EmptyCbg(HemlnError):
    """Weight normalization requested on a bipartite graph with no edges."""


# --- matching --------------------------------------------------------------

class TooLarge(HemlnError):
    """Brute-force oracle guard exceeded."""


# --- spec parsing ----------------------------------------------------------

class SpecError(HemlnError):
    pass


class SpecSyntaxError(SpecError):
    """Bad token; carries position and what was expected."""

    def __init__(self, message: str, position: int):
        super().__init__(f"at token {position}: {message}")
        self.position = position


class SubscriptMismatch(SpecError):
    pass


class EmptySpec(SpecError):
    pass


class NonSerialSpec(SpecError):
    """Parenthesized (explicit-precedence) specifications are not supported;
    only serial left-to-right chains are accepted."""


class MissingInterLayerEdges(SpecError):
    pass


class DisconnectedSpec(SpecError):
    pass


# --- engine ----------------------------------------------------------------

class InternalCaseError(HemlnError):
    """A tuple matched no row of the extend/update case table (a bug)."""


class UnknownKey(HemlnError):
    pass


# --- io --------------------------------------------------------------------

class IoError(HemlnError):
    pass


class ParseError(HemlnError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvariantViolation(HemlnError):
    pass


class ReferentialIntegrity(HemlnError):
    pass


class EmptyInput(HemlnError):
    pass
