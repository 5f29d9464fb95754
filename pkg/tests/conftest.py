import itertools
import json
from pathlib import Path

import pytest

from dimeq.dimeq_runner import run
from dimeq.groups import gl, so, sp
from dimeq.partitions import Partition


@pytest.fixture()
def sp16():
    return sp(16)


@pytest.fixture()
def sp16_gk56():
    """The four GK-56 orbits of Sp_16 reached from (5^2 3^2) by the orbit shift."""
    return [
        Partition.of(6, 5, 5),
        Partition.of(8, 3, 3, 2),
        Partition.of(6, 6, 2, 2),
        Partition.of(8, 4, 2, 1, 1),
    ]


@pytest.fixture()
def all_groups():
    """Every split family member up to a size, for oracle sweeps."""
    def _groups(max_size: int):
        for size in range(1, max_size + 1):
            yield gl(size)
            yield so(size)
            if size % 2 == 0:
                yield sp(size)
    return _groups


@pytest.fixture()
def cli():
    """Runs the CLI in-process and returns (exit_code, output)."""
    def _run(*argv: str):
        return run(list(argv))
    return _run


@pytest.fixture()
def cli_json(cli):
    """Runs the CLI with --format json and decodes stdout."""
    def _run(*argv: str):
        code, out = cli(*argv, "--format", "json")
        return code, (json.loads(out) if out else None)
    return _run


@pytest.fixture()
def spec_file(tmp_path: Path):
    """Writes an IntegralDescriptor JSON document and returns its path."""
    def _write(payload) -> str:
        path = tmp_path / "integral.json"
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture()
def compositions():
    """Every ordered tuple of positive blocks summing to n."""
    def _compositions(n: int):
        for cuts in itertools.product((False, True), repeat=n - 1):
            blocks, run = [], 1
            for cut in cuts:
                if cut:
                    blocks.append(run)
                    run = 1
                else:
                    run += 1
            yield tuple(blocks + [run])
    return _compositions
