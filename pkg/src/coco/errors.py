"""Exception types shared across the package.

Every error that can cross the wire carries its class name as the protocol
error code; servers serialize exceptions by code and clients re-raise the
matching type.
"""
from __future__ import annotations


class CocoError(Exception):
    """Base class for protocol-visible errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class EncodingError(CocoError):
    """Content is not valid UTF-8 text."""


class PatchRangeError(CocoError):
    """A hunk addresses lines outside the base document."""


class UnknownRevision(CocoError):
    """A revision id is not present in the graph."""


class NoCommonAncestor(CocoError):
    """Two revisions share no history."""


class IntegrityError(CocoError):
    """Stored revision data does not match its content hash."""


class NotLockHolder(CocoError):
    """Lock operation from a principal that does not hold the lock."""


class LeaseDenied(CocoError):
    """Lock wait abandoned before the ticket was served."""


class ProtocolError(CocoError):
    """Malformed request, name, or principal."""


class NotFound(CocoError):
    """The named file has no content on the server."""


class NothingToResolve(CocoError):
    """No outstanding conflict branch for this principal."""


class HarnessError(CocoError):
    """Scenario setup or client spawn failed."""


class IoError(CocoError):
    """Report destination could not be written."""


_WIRE_ERRORS = (
    EncodingError,
    PatchRangeError,
    UnknownRevision,
    NoCommonAncestor,
    IntegrityError,
    NotLockHolder,
    LeaseDenied,
    ProtocolError,
    NotFound,
    NothingToResolve,
    HarnessError,
    IoError,
)

ERRORS_BY_CODE = {cls.__name__: cls for cls in _WIRE_ERRORS}


def error_from_code(code: str, message: str = "") -> CocoError:
    """Rebuild the exception a server reported, defaulting to ProtocolError."""
    cls = ERRORS_BY_CODE.get(code, ProtocolError)
    return cls(message or code)
