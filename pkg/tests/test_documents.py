import json

import numpy as np
import pytest

from fisherinfo.documents import (
    load_model_document,
    load_povm_document,
    matrix_from_pairs,
    model_from_document,
    pairs_from_matrix,
    povm_from_document,
    povm_to_document,
    state_to_pairs,
)
from fisherinfo.errors import DocumentError
from fisherinfo.linalg import PAULI_X, PAULI_Z, unitary_exp
from fisherinfo.quantum import projective_povm, pure_state


def model_doc(**overrides):
    doc = {
        "dim": 2,
        "kind": "unitary",
        "generator": pairs_from_matrix(PAULI_Z),
        "initial_state": [[2 ** -0.5, 0.0], [2 ** -0.5, 0.0]],
    }
    doc.update(overrides)
    return doc


def test_pair_encoding_round_trips_exactly():
    rng = np.random.default_rng(103)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert np.array_equal(matrix_from_pairs(pairs_from_matrix(a), 3, "m"), a)


def test_model_document_round_trip():
    family, rho0 = model_from_document(model_doc(passes=2))
    assert np.array_equal(family.generator, PAULI_Z)
    assert family.passes == 2
    expected = pure_state(np.array([1.0, 1.0]) / np.sqrt(2.0))
    assert np.max(np.abs(rho0.mat - expected.mat)) < 1e-15


def test_model_document_defaults_to_one_pass():
    family, _ = model_from_document(model_doc())
    assert family.passes == 1
    assert family.channels == ()


def test_model_document_with_composed_channels():
    u = unitary_exp(PAULI_X, np.pi / 4.0)
    doc = model_doc(compose=[
        {"kraus": [pairs_from_matrix(u)]},
        {"kraus": [pairs_from_matrix(np.eye(2))], "placement": "pre"},
    ])
    family, _ = model_from_document(doc)
    assert len(family.channels) == 2
    assert family.channels[0][1] == "post"
    assert family.channels[1][1] == "pre"
    assert np.max(np.abs(family.channels[0][0].kraus[0] - u)) < 1e-15


@pytest.mark.parametrize("corruption", [
    {"dim": 0},
    {"dim": "2"},
    {"kind": "kraus"},
    {"kind": None},
    {"passes": 0},
    {"passes": 1.5},
    {"generator": None},
    {"generator": [[[1.0, 0.0]]]},
    {"generator": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0]]]},
    {"generator": [[[1.0, 0.0], "x"], [[0.0, 0.0], [0.0, 0.0]]]},
    {"generator": [[[1.0, 0.0], [1.0]], [[0.0, 0.0], [0.0, 0.0]]]},
    {"initial_state": [[1.0, 0.0]]},
    {"initial_state": [[0.7, 0.0], [0.7, 0.0]]},
    {"compose": ["not-an-object"]},
    {"compose": [{"kraus": []}]},
    {"compose": [{"kraus": [pairs_from_matrix(np.eye(2))], "placement": "sideways"}]},
    {"compose": [{"kraus": [pairs_from_matrix(0.5 * np.eye(2))]}]},
])
def test_model_document_rejects_corruptions(corruption):
    with pytest.raises(DocumentError):
        model_from_document(model_doc(**corruption))


def test_non_hermitian_generator_is_a_document_error():
    bad = [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]
    with pytest.raises(DocumentError):
        model_from_document(model_doc(generator=bad))


def test_povm_document_round_trip():
    povm = projective_povm(np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0))
    doc = povm_to_document(povm)
    back = povm_from_document(doc)
    assert back.labels == povm.labels
    for a, b in zip(back.effects, povm.effects):
        assert np.array_equal(a, b)


@pytest.mark.parametrize("corruption", [
    {"dim": -1},
    {"effects": None},
    {"effects": []},
    {"labels": [0, 0]},
])
def test_povm_document_rejects_corruptions(corruption):
    povm = projective_povm(np.eye(2))
    doc = povm_to_document(povm)
    doc.update(corruption)
    with pytest.raises(DocumentError):
        povm_from_document(doc)


def test_povm_document_rejects_incomplete_effects():
    doc = {"dim": 2, "effects": [pairs_from_matrix(0.5 * np.eye(2))]}
    with pytest.raises(DocumentError):
        povm_from_document(doc)


def test_state_to_pairs_encodes_the_density_matrix():
    rho = pure_state(np.array([1.0, 0.0]))
    assert state_to_pairs(rho) == [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]


def test_document_loading_from_files(tmp_path):
    model_path = tmp_path / "model.json"
    model_path.write_text(json.dumps(model_doc()))
    family, rho0 = load_model_document(str(model_path))
    assert family.dim == 2

    povm_path = tmp_path / "povm.json"
    povm_path.write_text(json.dumps(povm_to_document(projective_povm(np.eye(2)))))
    assert load_povm_document(str(povm_path)).dim == 2


def test_document_loading_failure_modes(tmp_path):
    with pytest.raises(DocumentError):
        load_model_document(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(DocumentError):
        load_model_document(str(bad))
    toplevel = tmp_path / "list.json"
    toplevel.write_text("[1, 2, 3]")
    with pytest.raises(DocumentError):
        load_povm_document(str(toplevel))
