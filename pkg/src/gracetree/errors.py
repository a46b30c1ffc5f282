"""Exception types shared across the package."""


class GracetreeError(Exception):
    """Base class for all package errors."""


class InvalidInputError(GracetreeError):
    """Malformed or out-of-domain input (bad tree, bad sequence, wrong class)."""


class ContractViolationError(GracetreeError):
    """A documented precondition was broken by the caller."""


class TransferRejectedError(GracetreeError):
    """The arithmetic condition for a transfer does not hold."""


class ReplayFailureError(GracetreeError):
    """A transfer plan could not be replayed in the given context.

    Carries the failing step index; indicates a plan/context bug.
    """

    def __init__(self, step_index, message):
        super().__init__(f"step {step_index}: {message}")
        self.step_index = step_index


class SearchRefusedError(GracetreeError):
    """The brute-force oracle refused to run (size cap exceeded)."""


class DefectError(GracetreeError):
    """An internal invariant failed; a construction produced a wrong result."""
