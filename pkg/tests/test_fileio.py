"""Deterministic JSON emitter and the matrix/subspace/probe file formats."""

import numpy as np
import pytest

from localize import FileFormatError, Subspace
from localize.fileio import (
    dumps_json,
    format_float,
    load_json,
    load_matrix,
    load_probes,
    load_subspace,
    matrix_payload,
    parse_matrix,
    parse_probes,
    parse_subspace,
    subspace_payload,
    vector_payload,
)


class TestFloatFormat:
    @pytest.mark.parametrize(
        "value",
        [0.0, 1.0, -1.0, 0.1, 1.0 / 3.0, np.pi, 1e-300, 1e300, 2.0 ** -52, -0.3333333333333333],
    )
    def test_exact_roundtrip(self, value):
        assert float(format_float(value)) == value

    def test_seventeen_digits(self):
        assert format_float(0.1) == "0.10000000000000001"


class TestEmitter:
    def test_deterministic_and_ordered(self):
        doc = {"b": [1.0, 2.0], "a": {"nested": [[0.5, -0.5]]}, "flag": True, "none": None}
        text = dumps_json(doc)
        assert text == dumps_json(doc)
        # insertion order is preserved, not sorted
        assert text.index('"b"') < text.index('"a"')
        assert "true" in text and "null" in text

    def test_numeric_lists_stay_compact(self):
        text = dumps_json({"row": [1.0, 2.5]})
        assert "[1, 2.5]" in text

    def test_parses_back(self):
        import json

        doc = {"dim": 2, "data": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}
        assert json.loads(dumps_json(doc)) == doc

    def test_rejects_unserializable(self):
        with pytest.raises(FileFormatError):
            dumps_json({"bad": object()})


class TestMatrixFormat:
    def test_roundtrip_bit_exact(self):
        rng = np.random.default_rng(12)
        arr = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        back = parse_matrix(matrix_payload(arr))
        assert back.tobytes() == arr.astype(np.complex128).tobytes()

    def test_missing_field(self):
        with pytest.raises(FileFormatError, match="missing field 'dim'"):
            parse_matrix({"data": []})

    def test_row_count(self):
        with pytest.raises(FileFormatError, match="expected 2 rows"):
            parse_matrix({"dim": 2, "data": [[[1.0, 0.0], [0.0, 0.0]]]})

    def test_bad_pair(self):
        doc = {"dim": 1, "data": [[[1.0, 0.0, 0.0]]]}
        with pytest.raises(FileFormatError, match=r"\[re, im\]"):
            parse_matrix(doc)

    def test_bool_dim_rejected(self):
        with pytest.raises(FileFormatError, match="expected an integer"):
            parse_matrix({"dim": True, "data": []})


class TestSubspaceFormat:
    def test_orthonormalizes(self):
        doc = {
            "ambient_dim": 2,
            "vectors": [[[3.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [1.0, 0.0]]],
        }
        sub = parse_subspace(doc)
        assert sub.dim == 2
        gram = sub.basis.conj().T @ sub.basis
        assert np.allclose(gram, np.eye(2), atol=1e-12)

    def test_near_dependent_reports_index(self):
        doc = {
            "ambient_dim": 2,
            "vectors": [[[1.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [1e-14, 0.0]]],
        }
        with pytest.raises(FileFormatError, match=r"vectors\[1\]"):
            parse_subspace(doc)

    def test_zero_vector_rejected(self):
        doc = {"ambient_dim": 2, "vectors": [[[0.0, 0.0], [0.0, 0.0]]]}
        with pytest.raises(FileFormatError, match=r"vectors\[0\]"):
            parse_subspace(doc)

    def test_empty_is_zero_subspace(self):
        sub = parse_subspace({"ambient_dim": 3, "vectors": []})
        assert sub.dim == 0
        assert sub.ambient_dim == 3

    def test_too_many_vectors(self):
        doc = {
            "ambient_dim": 1,
            "vectors": [[[1.0, 0.0]], [[0.0, 1.0]]],
        }
        with pytest.raises(FileFormatError):
            parse_subspace(doc)

    def test_payload_roundtrip(self):
        sub = Subspace.span(np.array([[1.0, 1.0], [1.0, -1.0], [0.0, 1.0]]))
        back = parse_subspace(subspace_payload(sub))
        assert back.dim == sub.dim
        assert np.allclose(back.projector(), sub.projector(), atol=1e-12)


class TestProbesFormat:
    def test_parses(self):
        doc = {
            "dim": 2,
            "probes": [
                {"vector": [[1.0, 0.0], [0.0, 0.0]], "weight": 2.0},
                {"vector": [[0.0, 0.0], [1.0, 0.0]], "weight": 3.0},
            ],
        }
        dim, probes = parse_probes(doc)
        assert dim == 2
        assert len(probes) == 2
        vec, weight = probes[0]
        assert weight == 2.0
        assert np.allclose(vec, [1.0, 0.0])

    def test_needs_probes(self):
        with pytest.raises(FileFormatError, match="at least one probe"):
            parse_probes({"dim": 2, "probes": []})

    def test_weight_must_be_number(self):
        doc = {"dim": 1, "probes": [{"vector": [[1.0, 0.0]], "weight": "heavy"}]}
        with pytest.raises(FileFormatError, match="weight"):
            parse_probes(doc)


class TestLoaders:
    def test_load_matrix(self, tmp_path):
        target = tmp_path / "m.json"
        arr = np.array([[1.0, 2.0j], [-2.0j, 5.0]])
        target.write_text(dumps_json(matrix_payload(arr)))
        assert np.allclose(load_matrix(target), arr)

    def test_load_subspace(self, tmp_path):
        target = tmp_path / "s.json"
        target.write_text(dumps_json(subspace_payload(Subspace.line(np.array([1.0, 1.0])))))
        assert load_subspace(target).dim == 1

    def test_load_probes(self, tmp_path):
        target = tmp_path / "p.json"
        doc = {"dim": 1, "probes": [{"vector": [[1.0, 0.0]], "weight": 1.5}]}
        target.write_text(dumps_json(doc))
        dim, probes = load_probes(target)
        assert dim == 1 and probes[0][1] == 1.5

    def test_malformed_json_reports_position(self, tmp_path):
        target = tmp_path / "bad.json"
        target.write_text('{"dim": 2,\n  "data": [,]\n}')
        with pytest.raises(FileFormatError, match="line 2"):
            load_json(target)

    def test_missing_file_wrapped_with_path(self, tmp_path):
        # filesystem problems surface as format errors naming the file
        with pytest.raises(FileFormatError, match="absent.json"):
            load_json(tmp_path / "absent.json")


class TestVectorPayload:
    def test_splits_complex(self):
        assert vector_payload(np.array([1.0 + 2.0j])) == [[1.0, 2.0]]
