"""Exception hierarchy.

Every error raised for a mathematically invalid request derives from
:class:`DomainError`; the CLI maps these to exit code 1.
"""


class DomainError(ValueError):
    pass


class NonPrime(DomainError):
    pass


class ZeroPolynomial(DomainError):
    pass


class ZeroToNegativePower(DomainError):
    pass


class PrimeMismatch(DomainError):
    pass


class DegenerateFactor(DomainError):
    pass


class NullityNotOne(DomainError):
    pass


class MonomialInput(DomainError):
    pass


class RegimeMismatch(DomainError):
    pass


class GeneralPositionFailure(DomainError):
    pass


class UnsupportedSupportSize(DomainError):
    pass


class TooLarge(DomainError):
    pass


class PrecisionTooLow(DomainError):
    """Hensel certification was inconclusive for some residue.

    Not raised by :func:`padictrop.oracle.zp_root_count`, which reports the
    inconclusive residues instead; kept for callers that want a hard failure.
    """
