# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""Run settings.

There are no configuration files and no environment variables: every invocation is
fully described by its flags. Precedence is therefore simply

1) CLI flags (--format/--workers/--log-level/-v)
2) Defaults: format=table, workers=1, log_level=WARNING
"""
from __future__ import annotations

import logging
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

OutputFormat = Literal["table", "json"]

_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    """Resolved settings for one CLI run."""
    model_config = ConfigDict(frozen=True)

    output_format: OutputFormat = "table"
    workers: int = Field(default=1, ge=1, le=64)
    log_level: str = "WARNING"

    @field_validator("log_level", mode="before")
    @classmethod
    def _normalize_level(cls, value: str) -> str:
        level = str(value).upper()
        if level not in _LEVELS:
            raise ValueError(f"unknown log level {value!r}")
        return level

    @classmethod
    def from_flags(
        cls,
        output_format: Optional[str] = None,
        workers: Optional[int] = None,
        log_level: Optional[str] = None,
        verbose: int = 0,
    ) -> "Settings":
        """Build settings from parsed flags; an explicit --log-level wins over -v."""
        values = {}
        if output_format:
            values["output_format"] = output_format
        if workers is not None:
            values["workers"] = workers
        if log_level:
            values["log_level"] = log_level
        elif verbose:
            values["log_level"] = "DEBUG" if verbose > 1 else "INFO"
        return cls(**values)

    def configure_logging(self) -> None:
        """Install the stderr handler for this run."""
        logging.basicConfig(
            level=getattr(logging, self.log_level),
            format="%(levelname)s %(name)s: %(message)s",
            force=True,
        )
