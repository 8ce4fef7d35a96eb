"""Exception hierarchy shared by every module."""


class FondSafeError(Exception):
    """Base class for all errors raised by fondsafe."""


class ModelSyntaxError(FondSafeError):
    """Malformed model text. Carries the 1-based line and column."""

    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"{line}:{col}: {message}")


class ValidationError(FondSafeError):
    """Well-formed text describing an ill-formed task."""


class UnknownState(ValidationError):
    def __init__(self, descriptor):
        self.descriptor = descriptor
        super().__init__(f"unknown state {descriptor!r}")


class UnknownAction(ValidationError):
    def __init__(self, state, name):
        self.state = state
        self.name = name
        super().__init__(f"action {name!r} is not applicable in state {state!r}")


class ExpansionError(FondSafeError):
    """Raised while turning a factored model into explicit states."""


class OutOfRangeAssignment(ExpansionError):
    def __init__(self, action, var, value):
        self.action = action
        self.var = var
        self.value = value
        super().__init__(f"action {action!r} assigns {var} := {value}, outside its domain")


class NoApplicableAction(ExpansionError):
    def __init__(self, state):
        self.state = state
        super().__init__(f"no applicable action in non-fail state {state}")


class StateSpaceLimitExceeded(FondSafeError):
    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"state-space limit of {limit} states exceeded")


class RecursionDepthExceeded(FondSafeError):
    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"search depth limit of {limit} exceeded")


class UndefinedPolicyAt(FondSafeError):
    def __init__(self, state):
        self.state = state
        super().__init__(f"policy undefined at state {state}")


class BudgetExhausted(FondSafeError):
    """The cooperative wall-clock budget of a run ran out."""
