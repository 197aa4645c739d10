"""Exception hierarchy shared by every module."""


class VagueKnowError(Exception):
    """Base class for all domain errors raised by vagueknow."""


class UnknownLabel(VagueKnowError, KeyError):
    def __init__(self, label, line=None):
        self.label = label
        self.line = line
        super().__init__(label)

    def __str__(self):
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{where}unknown state label {self.label!r}"


class SelfDistinction(VagueKnowError, ValueError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"cannot distinguish state {label!r} from itself")


class InvalidStateSpace(VagueKnowError, ValueError):
    pass


class InvariantBreach(VagueKnowError):
    """A relation matrix is not reflexive or not symmetric."""


class ParseError(VagueKnowError, ValueError):
    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class NotTransitive(VagueKnowError):
    def __init__(self, witness):
        self.witness = witness
        a, b, c = witness
        super().__init__(
            f"relation is not transitive: {a}~{b}, {b}~{c} but {a} and {c} are distinguishable"
        )


class NotACore(VagueKnowError, ValueError):
    def __init__(self, members, closure=None):
        self.members = members
        self.closure = closure
        msg = f"{{{','.join(members)}}} is not a core"
        if closure is not None:
            msg += f" (closure is {{{','.join(closure)}}})"
        super().__init__(msg)


class BodyOutOfBounds(VagueKnowError, ValueError):
    pass


class LengthMismatch(VagueKnowError, ValueError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"expected {expected} values, got {got}")


class CapExceeded(VagueKnowError, ValueError):
    def __init__(self, n, cap):
        self.n = n
        self.cap = cap
        super().__init__(f"n={n} exceeds the enumeration cap of {cap} states")
