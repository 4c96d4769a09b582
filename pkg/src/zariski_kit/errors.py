"""Exception hierarchy shared by the engine and the CLI."""


class ZariskiKitError(Exception):
    """Base class for every error raised by zariski_kit."""


class InputError(ZariskiKitError, ValueError):
    """Malformed or inconsistent input data (CLI exit code 2)."""


class PreconditionError(ZariskiKitError):
    """An operation was called outside its declared hypotheses."""


class NotPseudoEffectiveData(ZariskiKitError):
    """The supplied cone data violate the hypotheses under which a Zariski
    decomposition exists (singular support Gram, negative coefficients, or a
    support that is not negative definite)."""


class OracleViolation(ZariskiKitError):
    """Brute-force enumeration found zero or several decompositions."""


class DegenerateCone(ZariskiKitError):
    """The generators' Gram determinant vanishes."""


class ResourceError(ZariskiKitError):
    """A configured size or factorization cap was exceeded."""
