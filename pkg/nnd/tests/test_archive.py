import numpy as np
import pytest

from dlacs_nn.archive import ArchiveError, load_archive, save_archive
from dlacs_nn.infer import arrays_to_state, state_to_arrays
from dlacs_nn.model import build_decoder


def test_round_trip_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    tensors = {
        "a.weight": rng.standard_normal((3, 2, 3, 3)).astype(np.float32),
        "b.bias": rng.standard_normal(7).astype(np.float32),
        "scalar": np.float32(4.25).reshape(()),
    }
    p = tmp_path / "w.tnsr"
    save_archive(p, tensors)
    back = load_archive(p)
    assert set(back) == set(tensors)
    for k in tensors:
        assert back[k].dtype == np.float32
        assert np.array_equal(back[k], tensors[k])
    # double round trip gives identical bytes
    p2 = tmp_path / "w2.tnsr"
    save_archive(p2, back)
    assert p.read_bytes() == p2.read_bytes()


def test_truncated_archive(tmp_path):
    p = tmp_path / "w.tnsr"
    save_archive(p, {"x": np.zeros(4, dtype=np.float32)})
    (tmp_path / "t.tnsr").write_bytes(p.read_bytes()[:-8])
    with pytest.raises(ArchiveError):
        load_archive(tmp_path / "t.tnsr")


def test_model_state_round_trip(tmp_path):
    model = build_decoder(8, 8, 4, 5, np.zeros((4, 8, 8), dtype=np.float32), seed=1)
    arrays = state_to_arrays(model)
    p = tmp_path / "w.tnsr"
    save_archive(p, arrays)
    model2 = build_decoder(8, 8, 4, 5, np.zeros((4, 8, 8), dtype=np.float32), seed=2)
    arrays_to_state(model2, load_archive(p))
    for k, v in model.state_dict().items():
        assert np.array_equal(v.numpy(), model2.state_dict()[k].numpy()), k
