"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the construction is defined."""


class VerificationError(AssertionError):
    """An exact identity that must hold did not.

    ``identity`` names the relation that failed and ``probe`` describes the
    input it failed on, so callers can emit a machine-readable report.
    """

    def __init__(self, identity, probe, detail=""):
        self.identity = identity
        self.probe = probe
        self.detail = detail
        msg = f"{identity} failed on {probe}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
