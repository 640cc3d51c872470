"""Shared exception types."""
from __future__ import annotations


class WigglekitError(Exception):
    """Base class for package errors."""


class FormatError(WigglekitError, ValueError):
    """A file or wire payload did not match its documented schema."""
