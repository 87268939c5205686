import numpy as np
import pytest

from dlacs.cli import main as cli_main
from dlacs.frame_io import save_pgm
from dlacs.synth import smooth_frame


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    """Directory of smooth synthetic PGMs used by training-path tests."""
    d = tmp_path_factory.mktemp("corpus")
    for i in range(3):
        save_pgm(smooth_frame(256, 256, seed=100 + i, sigma=1.5, dither=1.5), d / f"f{i}.pgm")
    return d


@pytest.fixture(scope="session")
def mask_file(tmp_path_factory, corpus_dir):
    """Mask file trained once via the CLI (8x8x4, 4-bit) and reused."""
    path = tmp_path_factory.mktemp("masks") / "default.dlm"
    rc = cli_main(
        [
            "train",
            "--input", str(corpus_dir),
            "--out", str(path),
            "--crop", "64",
            "--count", "6",
            "--seed", "7",
            "--epochs", "40",
        ]
    )
    assert rc == 0
    return path


@pytest.fixture()
def rng():
    return np.random.default_rng(0)
