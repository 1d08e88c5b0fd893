import math

import numpy as np
import pytest

import projcoords as pc


def test_generate_and_distances():
    x = pc.generate("rp2_uniform", 200, seed=3)
    assert x.shape == (200, 3)
    assert np.allclose(np.linalg.norm(x, axis=1), 1.0)
    assert np.array_equal(x, pc.generate("rp2_uniform", 200, seed=3))
    d = pc.distance_matrix(x, "rp")
    assert d.shape == (200, 200)
    assert np.allclose(d, d.T)
    assert d.max() <= math.pi / 2 + 1e-12


def test_persistence_of_a_square():
    filt = [([i], 0.0) for i in range(4)] + [(e, 1.0) for e in ([0, 1], [1, 2], [2, 3], [0, 3])]
    bars = pc.persistent_cohomology(filt, prime=2, max_dim=1)
    dim1 = [b for b in bars if b["dim"] == 1]
    assert len(dim1) == 1
    assert dim1[0]["death"] is None
    assert dim1[0]["birth"] == 1.0


def test_sparse_rips_feeds_persistence():
    x = pc.generate("torus_product", 300, seed=1)
    d = pc.distance_matrix(x, "flat_torus")
    filt = pc.sparse_rips(d, 20, 0.1, max_dim=2)
    births = [b for _, b in filt]
    assert births == sorted(births)
    bars = pc.persistent_cohomology(filt, prime=2, max_dim=1)
    assert sum(1 for b in bars if b["dim"] == 0 and b["death"] is None) == 1


def test_tetrahedron_harmonic():
    tris = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
    theta, _ = pc.harmonic_smoothing(tris, [{"simplex": [0, 1, 2], "value": 1}])
    vals = {tuple(e["simplex"]): e["value"] for e in theta}
    assert vals[(0, 1, 2)] == pytest.approx(0.25)
    assert vals[(0, 1, 3)] == pytest.approx(-0.25)


def test_ppca_and_viz():
    rng = np.random.default_rng(0)
    y = rng.normal(size=(100, 4)) * np.array([1.0, 0.6, 0.3, 0.1])
    r = pc.principal_components(y, "rp")
    b = r["basis"]
    assert np.allclose(b.conj().T @ b, np.eye(4), atol=1e-10)
    assert r["pvar"][-1] == pytest.approx(1.0)
    disk = pc.viz_rp_disk(np.real(pc.project(y, "rp", 2)))
    assert disk.shape == (100, 2)
    assert np.all(np.linalg.norm(disk, axis=1) <= 1.0 + 1e-12)
    h = pc.viz_cp1_hopf(np.array([[1, 0], [0, 1], [1, 1]], dtype=complex))
    assert np.allclose(h, [[0, 0, 1], [0, 0, -1], [1, 0, 0]])
    assert pc.choose_dimension([0.2, 0.5, 0.9, 1.0]) == (3, 3)


def test_pipeline(tmp_path):
    r = pc.run_pipeline(str(tmp_path), dataset="rp2_uniform", count=300, landmarks=15, sparsity=0.3, seed=2)
    s = r["summary"]
    assert s["config"]["count"] == 300
    assert 1 <= s["chosen_k"] <= 14
    assert r["coords"].shape == (300, 15)
    assert (tmp_path / "summary.json").exists()
    again = pc.run_pipeline(dataset="rp2_uniform", count=300, landmarks=15, sparsity=0.3, seed=2)
    assert np.array_equal(again["coords"], r["coords"])


def test_errors():
    with pytest.raises(pc.InvalidInput):
        pc.generate("moebius", 10)
    with pytest.raises(ValueError):
        pc.run_pipeline(colour="blue")
    with pytest.raises(pc.NumericalFailure):
        pc.run_pipeline(dataset="rp2_uniform", count=400, landmarks=20, sparsity=0.3, field="cp", prime=2)
