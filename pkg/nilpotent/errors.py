"""
Error hierarchy shared by the domain modules, the CLI and the HTTP API.

Every error carries a stable ``code`` so the API can populate
``ErrorResponse.code`` and the CLI can print a short tag.
"""

from __future__ import annotations


class NilformsError(Exception):
    """Base class for all domain errors."""

    code = "nilforms_error"

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class InvalidInput(NilformsError):
    code = "invalid_input"


class NotTwoStep(NilformsError):
    """Some basis triple has a non-vanishing double bracket."""

    code = "not_two_step"

    def __init__(self, triple: tuple[int, int, int], value: str) -> None:
        i, j, k = triple
        super().__init__(f"[[e{i},e{j}],e{k}] = {value} is not zero")
        self.triple = triple


class BadIndex(NilformsError):
    code = "bad_index"


class DuplicateBracket(NilformsError):
    code = "duplicate_bracket"


class DegenerateMetric(NilformsError):
    code = "degenerate_metric"


class VectorNotInCenter(NilformsError):
    code = "vector_not_in_center"


class OddDimension(NilformsError):
    code = "odd_dimension"


class NotAutomorphism(NilformsError):
    code = "not_automorphism"


class SelfLoop(NilformsError):
    code = "self_loop"


class DuplicateEdge(NilformsError):
    code = "duplicate_edge"


class NoEdges(NilformsError):
    code = "no_edges"


class UnknownName(NilformsError):
    code = "unknown_name"
