"""Shared exception hierarchy.

Every error raised by the library derives from CatcError so callers (and the
CLI) can sort failures into parse / semantic / budget buckets.
"""


class CatcError(Exception):
    pass


# -- parse-time -------------------------------------------------------------

class ParseError(CatcError):
    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", col {col}" if col is not None else "")
            loc = f" ({loc})"
        super().__init__(msg + loc)


class UnknownIdentifier(ParseError):
    pass


class RedefinedIdentifier(ParseError):
    pass


class UseBeforeDefinition(ParseError):
    pass


class CycleDetected(ParseError):
    pass


# -- semantic ---------------------------------------------------------------

class SemanticError(CatcError):
    pass


class UnknownVertex(SemanticError):
    pass


class UnknownMorphism(SemanticError):
    pass


class UnknownBasicMorphism(UnknownMorphism):
    pass


class ObjectMismatch(SemanticError):
    pass


class EmptySubdiagram(SemanticError):
    pass


class StaleBasicAttachment(SemanticError):
    pass


class NotConstructive(SemanticError):
    pass


class CapabilityMissing(SemanticError):
    pass


class DimensionMismatch(SemanticError):
    pass


class NotAFormula(SemanticError):
    pass


class VariableOutOfRange(SemanticError):
    pass


class MultipleOutputsUnsupported(SemanticError):
    pass


class NoNontrivialSolution(SemanticError):
    pass


class RankAmbiguous(SemanticError):
    pass


class DomainError(SemanticError):
    pass


class EmbeddingCheckFailed(SemanticError):
    """An embedding produced by the search failed its independent recheck."""


# -- budgets ----------------------------------------------------------------

class BudgetExceeded(CatcError):
    pass


class SearchBudgetExceeded(BudgetExceeded):
    pass


class DegreeBudgetExceeded(BudgetExceeded):
    pass
