"""Exception hierarchy shared across the engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""


class InvalidMapError(EngineError):
    """A combinatorial map violates a structural invariant."""


class NotEmbeddedError(EngineError):
    """A curve, arc, or walk is not embedded where it must be."""


class SignConflictError(EngineError):
    """A sign assignment is inconsistent with the orientation convention."""


class MissingCertificateError(EngineError):
    """A query needs a user-supplied certificate that is absent."""


class UnsupportedTopologyError(EngineError):
    """The requested topology is outside the supported enumeration classes."""


class SplitPreconditionError(EngineError):
    """A convex or sutured splitting precondition failed."""


class ScenarioError(EngineError):
    """A scenario file is malformed or internally inconsistent."""
