"""Exception types shared across the library."""

from __future__ import annotations


class SchemaError(ValueError):
    """Document text does not match the expected JSON shape.

    `path` points at the offending field, e.g. "opens[2][0]".
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class InvariantError(ValueError):
    """A mathematical invariant failed.

    `law` is a short stable name ("transitivity", "distributivity", ...)
    and `witnesses` are the elements exhibiting the failure, as carrier
    indices at library level or as element names once a document layer
    has translated them.
    """

    def __init__(self, law: str, witnesses=(), message: str = ""):
        self.law = law
        self.witnesses = tuple(witnesses)
        self.message = message
        text = f"{law}: {message}" if message else law
        if self.witnesses:
            text += " (witness: {})".format(", ".join(map(str, self.witnesses)))
        super().__init__(text)


class PreconditionError(ValueError):
    """An operation was invoked outside its stated preconditions."""
