# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""Exception hierarchy shared by all engines.

Every error carries a human readable ``detail`` and the process ``exit_code`` the
command line front end reports for it, much like an HTTP exception carries its
status code. Imbalanced equations are *not* errors; they are reported as data.
"""
from __future__ import annotations


class DimeqError(Exception):
    """Base class for all dimeq errors."""

    exit_code: int = 2

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class PartitionParseError(DimeqError):
    """Malformed partition text (names the offending token)."""


class GroupParseError(DimeqError):
    """Malformed group text."""


class DomainError(DimeqError):
    """Arguments outside the mathematical domain of an operation."""


class ModeError(DimeqError):
    """A functional that is not admissible in the requested equation mode."""


class CatalogLookupError(DimeqError):
    """No catalog entry matches the requested id pattern."""
