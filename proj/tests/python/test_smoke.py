import numpy as np
import pytest

import ncdomain as ncd

F = "X1 + X2 + 3 X1*X2"
G = "2 X1 + X2 + 6 X2*X1"
H = "X1 + 2 X2 + X1*X1"
BALL = "1/2 X1 + 1/2 X2 + 1/2 X1*X1 + 1/2 X2*X2 + X1*X2"


def test_example_classification():
    r = ncd.decide_equivalence(F, G)
    assert r == {"equivalent": True, "sigma": [2, 1], "lambda": ["1/2", "1"]}
    assert ncd.decide_equivalence(F, H) == {"equivalent": False}
    assert ncd.canonical_form(F)["text"] == ncd.canonical_form(G)["text"]


def test_parse_and_validate():
    assert ncd.parse_symbol(F)["terms"][2] == {"word": [1, 2], "coeff": "3"}
    assert ncd.validate(F)["valid"]
    assert ncd.validate("X2")["issues"][0]["clause"] == "a_{g_i}>0"
    with pytest.raises(ValueError):
        ncd.parse_symbol("X1 + ")


def test_sphericality():
    assert ncd.decide_spherical(BALL)["verdict"] == "spherical"
    r = ncd.decide_spherical(F)
    assert r["verdict"] == "aspherical"
    assert r["residual_exact"] == "3"


def test_fock():
    rows = ncd.weights(F, 2)
    assert {"word": [1, 2], "b": "4"} in rows
    eig, ok = ncd.shift_membership(F, 4)
    assert ok and eig == pytest.approx(1.0)
    assert ncd.shift_norm("2 X1", [1, 1], 2) == pytest.approx(0.5)


def test_refutations():
    assert ncd.refute_product(F, [1])["value"] == pytest.approx(1.04)
    assert ncd.refute_thullen(F)["refuted"]


def test_matrix_level():
    m = np.array([[1, 2], [3, 4]], dtype=complex)
    n = np.array([[5, 6], [7, 8]], dtype=complex)
    swap = np.array([[0, 0.5], [1, 0]], dtype=complex)
    s = ncd.dual_map_apply(swap, [m, n])
    assert np.allclose(s[0], n / 2) and np.allclose(s[1], m)
    eig, inside = ncd.matrix_membership("X1 + X2", [0.5 * np.eye(2), np.zeros((2, 2))])
    assert inside and eig == pytest.approx(0.25)
    sigma, psi = ncd.support_partition(np.eye(3, dtype=complex))
    assert sigma == [[1], [2], [3]] and psi == sigma


def test_cartan():
    free_map = {"n": 2, "degree": 2, "coords": [[{"word": [1], "re": 1}], [{"word": [2], "re": 1}]]}
    one = ncd.cartan_forced_zeros(free_map, 1)
    assert one["degrees"][0]["forced"] == [[1, 1], [2, 2]]
    assert one["degrees"][0]["free_directions"] == 1
    assert ncd.cartan_forced_zeros(free_map, 2)["complete"]


def test_cli_entry(tmp_path):
    f = tmp_path / "f.txt"
    f.write_text(F)
    g = tmp_path / "g.txt"
    g.write_text(G)
    code, out = ncd.run_cli("classify", f, g)
    assert code == 0 and out["sigma"] == [2, 1]
    code, _ = ncd.run_cli("classify", f, tmp_path / "missing.txt")
    assert code == 2
