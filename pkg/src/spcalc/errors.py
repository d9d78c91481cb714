"""Exception hierarchy shared by the engine, the DSL and the CLI."""


class SpcalcError(Exception):
    pass


class BackendMismatch(SpcalcError):
    pass


class InvalidDiagram(SpcalcError):
    pass


class SizeBoundExceeded(SpcalcError):
    pass


class UnknownObject(SpcalcError):
    pass


class UnknownFamily(SpcalcError):
    pass


class AmbientMismatch(SpcalcError):
    pass


class InvalidTarget(SpcalcError):
    pass


class PremiseViolated(SpcalcError):
    pass


class InvalidMonoidal(SpcalcError):
    pass


class NotDirected(SpcalcError):
    pass


class UnknownSuite(SpcalcError):
    pass


class UnsupportedBase(SpcalcError):
    """The presheaf engine only runs over the set-like backends."""


class ValidationError(SpcalcError):
    pass


class ParseError(SpcalcError):
    def __init__(self, msg, line=0, col=0, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        text = f"{line}:{col}: {msg}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        super().__init__(text)


class CommandError(SpcalcError):
    pass
