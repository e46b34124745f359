"""Exception hierarchy shared by every engine in the package."""


class RelWeilError(Exception):
    """Base class for all errors raised by :mod:`relweil`."""


class PreconditionError(RelWeilError, ValueError):
    """An input violates a documented precondition."""


class ZeroDivisorEncountered(RelWeilError, ZeroDivisionError):
    """Inversion failed in a quotient ring ``base[T]/(q)`` that is not a field.

    ``factor`` and ``cofactor`` are monic, coprime, of positive degree and
    multiply to the modulus; callers split the computation along them.
    """

    def __init__(self, ring, factor, cofactor):
        self.ring = ring
        self.factor = factor
        self.cofactor = cofactor
        super().__init__(f"zero divisor in {ring}: modulus splits as ({factor})*({cofactor})")


class NotDivisible(RelWeilError, ArithmeticError):
    """Exact division was requested but the divisor does not divide."""


class FieldMismatch(RelWeilError, TypeError):
    pass


class UnsupportedDegree(RelWeilError):
    pass


class InseparableField(RelWeilError):
    pass


class VariableCollision(RelWeilError):
    pass


class ZeroDenominator(RelWeilError):
    pass


class NotEliminable(RelWeilError):
    pass


class SingularInstance(RelWeilError):
    pass


class DegenerateInstance(RelWeilError):
    pass


class NotSquarefree(RelWeilError):
    pass


class FormulaMismatch(RelWeilError):
    pass


class InconsistentProfile(RelWeilError):
    """A ramification profile cannot come from actual covers (e.g. parity)."""


class NonzeroResidue(RelWeilError):
    def __init__(self, residue):
        self.residue = residue
        super().__init__(f"non-zero residue: {residue}")


class NegativeDimension(RelWeilError):
    pass


class NegativeRank(RelWeilError):
    pass


class ParseError(RelWeilError):
    def __init__(self, message, line=None, column=None, path=None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = []
        if path:
            where.append(f"at {path}")
        if line is not None:
            where.append(f"line {line}, column {column}")
        super().__init__(message + (f" ({', '.join(where)})" if where else ""))


class SchemaError(RelWeilError):
    def __init__(self, violations):
        # violations: list of (path, message)
        self.violations = list(violations)
        lines = [f"{p or '<root>'}: {m}" for p, m in self.violations]
        super().__init__("job does not match schema:\n  " + "\n  ".join(lines))
