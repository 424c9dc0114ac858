import json

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from matmeans.hermitian import random_hermitian
from matmeans.io import load_matrix, matrix_from_json, matrix_to_json, save_matrix
from matmeans.verify.codec import decode_inputs, encode_inputs

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


def test_real_matrix_omits_imaginary_part():
    obj = matrix_to_json(np.array([[1.0, 2.0], [2.0, 5.0]]))
    assert obj["dim"] == 2 and "im" not in obj
    np.testing.assert_array_equal(matrix_from_json(obj), [[1, 2], [2, 5]])


def test_missing_imaginary_part_is_zero():
    m = matrix_from_json({"dim": 1, "re": [[3.0]]})
    assert m.shape == (1, 1) and m[0, 0] == 3.0


def test_file_round_trip_is_bit_exact(tmp_path, rng):
    a = random_hermitian(rng, 5)
    path = tmp_path / "a.json"
    save_matrix(path, a)
    json.loads(path.read_text())
    b = load_matrix(path)
    assert np.array_equal(a, b)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, (3, 3), elements=finite), arrays(np.float64, (3, 3), elements=finite))
def test_round_trip_property(re, im):
    m = re + 1j * im
    back = matrix_from_json(json.loads(json.dumps(matrix_to_json(m))))
    assert np.array_equal(back.view(np.float64), m.view(np.float64))


def test_codec_round_trip(rng):
    inputs = {
        "A": random_hermitian(rng, 3),
        "w": np.array([0.1, 0.2, 0.7]),
        "f": "pow:0.5",
        "p": 1 / 3,
        "k": 2,
        "flag": True,
        "mats": [np.eye(2), 2 * np.eye(2)],
        "margin": float("-inf"),
    }
    text = json.dumps(encode_inputs(inputs), allow_nan=False)
    out = decode_inputs(json.loads(text))
    assert np.array_equal(out["A"], inputs["A"])
    assert np.array_equal(out["w"], inputs["w"])
    assert out["f"] == "pow:0.5" and out["p"] == 1 / 3 and out["k"] == 2 and out["flag"] is True
    assert np.array_equal(out["mats"][1], 2 * np.eye(2))
    assert out["margin"] == float("-inf")
