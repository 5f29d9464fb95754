import logging

import pytest
from pydantic import ValidationError

from dimeq.config import Settings


def test_defaults():
    s = Settings.from_flags()
    assert (s.output_format, s.workers, s.log_level) == ("table", 1, "WARNING")


def test_flags_override_defaults():
    s = Settings.from_flags(output_format="json", workers=4, log_level="info")
    assert (s.output_format, s.workers, s.log_level) == ("json", 4, "INFO")


@pytest.mark.parametrize("verbose,level", [(0, "WARNING"), (1, "INFO"), (2, "DEBUG"), (5, "DEBUG")])
def test_verbose_count(verbose, level):
    assert Settings.from_flags(verbose=verbose).log_level == level


def test_explicit_level_wins_over_verbose():
    assert Settings.from_flags(log_level="error", verbose=2).log_level == "ERROR"


@pytest.mark.parametrize("kwargs", [{"log_level": "loud"}, {"workers": 0}, {"output_format": "yaml"}])
def test_invalid_settings(kwargs):
    with pytest.raises(ValidationError):
        Settings.from_flags(**kwargs)


def test_settings_are_frozen():
    with pytest.raises(ValidationError):
        Settings().workers = 3


def test_configure_logging_sets_root_level():
    Settings(log_level="DEBUG").configure_logging()
    assert logging.getLogger().level == logging.DEBUG
    Settings().configure_logging()
    assert logging.getLogger().level == logging.WARNING
