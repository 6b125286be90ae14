"""Exception hierarchy.  Each family maps to one CLI exit code."""


class FolnfError(Exception):
    exit_code = 2


class ValidationError(FolnfError):
    """Input violates a precondition (wrong order, singular map, bad parameters)."""

    exit_code = 2


class GenericityError(FolnfError):
    """Input is not a generic order-two singularity."""

    exit_code = 3


class ResonanceError(GenericityError):
    """A rectification coefficient has a zero multiplier at degree ``k``."""

    def __init__(self, k, message=None):
        self.k = k
        super().__init__(message or f"resonant rectification equation at k={k}")


class NormalFormObstruction(GenericityError):
    """The homological system at degree ``m`` is inconsistent."""

    def __init__(self, m, message=None):
        self.m = m
        super().__init__(message or f"normal-form obstruction at degree {m}")


class ParseError(FolnfError):
    exit_code = 4


class ExpressionSyntaxError(ParseError):
    def __init__(self, message, text="", position=0, line=None):
        self.text = text
        self.position = position
        self.line = line
        where = f"line {line}, " if line is not None else ""
        super().__init__(f"{message} ({where}position {position}): {text!r}")


class UndeclaredGeneratorError(ParseError):
    def __init__(self, name, declared):
        self.name = name
        self.declared = declared
        super().__init__(f"generator {name!r} is not declared (declared: {', '.join(declared) or 'none'})")


class DegreeOverflowError(ParseError):
    def __init__(self, i, j, order):
        self.i, self.j, self.order = i, j, order
        super().__init__(f"monomial x^{i} y^{j} exceeds truncation order {order}")


class DocumentError(ParseError):
    """Malformed JSON document or schema mismatch."""


class DigestMismatch(ValidationError):
    pass
