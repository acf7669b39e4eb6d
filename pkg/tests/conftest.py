import shutil
from dataclasses import replace

import pytest

from chiralmem.cli import run
from chiralmem.config import parse_config
from chiralmem.presets import PRESETS

N_JOBS = 8

# Files whose bytes must be identical across two runs of the same config.
COMPARED = ("*.csv", "summary.json")


@pytest.fixture(scope="session")
def preset_runner(tmp_path_factory):
    """Run a preset twice with an identical config; cache the two result dirs.

    The second run overwrites the first in place (same output_dir, so the
    configs are truly identical); the first run's compared files are
    stashed beforehand.
    """
    cache = {}

    def get(name: str):
        if name not in cache:
            base = tmp_path_factory.mktemp(f"preset_{name}")
            out = base / "out"
            cfg = replace(parse_config(PRESETS[name]), output_dir=str(out))
            run(cfg, n_jobs=N_JOBS)
            first = base / "first"
            first.mkdir()
            for pattern in COMPARED:
                for f in out.glob(pattern):
                    shutil.copy2(f, first / f.name)
            run(cfg, n_jobs=N_JOBS)
            cache[name] = (first, out)
        return cache[name]

    return get
