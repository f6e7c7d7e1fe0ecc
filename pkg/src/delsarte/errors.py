"""Exception hierarchy.

``DomainError`` covers bad inputs (CLI exit code 1); ``SoundnessError`` and
its subclasses cover infeasible certificates and broken invariants (exit 2).
"""


class DelsarteError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DelsarteError, ValueError):
    """Input outside the documented domain of an operation."""


class SchemeError(DomainError):
    """An explicit metric space fails the association-scheme axioms."""


class ParseError(SchemeError):
    pass


class EquipartitionViolation(SchemeError):
    def __init__(self, i, j, k, witnesses):
        self.i, self.j, self.k = i, j, k
        self.witnesses = witnesses
        (x1, z1, c1), (x2, z2, c2) = witnesses
        super().__init__(
            f"equipartition fails for (i,j,k)=({i},{j},{k}): pair ({x1},{z1}) has "
            f"{c1} midpoints, pair ({x2},{z2}) has {c2}"
        )


class DegenerateScheme(SchemeError):
    def __init__(self, k):
        self.k = k
        super().__init__(f"degenerate scheme: p_(1,{k})^({k + 1}) = 0")


class SpectralAmbiguity(SchemeError):
    pass


class MultiplicityExtractionError(SchemeError):
    pass


class SizeCapExceeded(DomainError):
    pass


class SoundnessError(DelsarteError):
    """A check that must hold for valid inputs failed."""


class InfeasibleCertificate(SoundnessError):
    def __init__(self, condition: str, index: int, value=None):
        self.condition = condition
        self.index = index
        self.value = value
        super().__init__(f"certificate infeasible: {condition} violated at x={index} (value {value})")


class CertificateUnavailable(DomainError):
    """A certificate family's preconditions do not hold for these parameters."""


class NoSignChange(CertificateUnavailable):
    """A sign scan found no nonpositive value in range."""


class NoAdmissibleU(CertificateUnavailable):
    pass


class Q1NotDecreasing(CertificateUnavailable):
    pass


class NotQPolynomial(CertificateUnavailable):
    pass


class NoValidRPerp(CertificateUnavailable):
    pass


class LpError(SoundnessError):
    pass
