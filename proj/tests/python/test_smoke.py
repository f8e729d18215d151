import numpy as np
import pytest

import dfakit


def dephasing():
    p0 = np.array([[1, 0], [0, 0]], dtype=complex)
    p1 = np.array([[0, 0], [0, 1]], dtype=complex)
    return dfakit.KrausChannel(2, [p0, p1])


def test_import_surface():
    assert dfakit.__version__ == "0.1.0"
    ch = dephasing()
    assert ch.dim == 2
    assert ch.num_kraus == 2
    assert "KrausChannel" in repr(ch)


def test_validate_and_apply():
    ch = dephasing()
    flags = dfakit.validate(ch, tol=1e-8)
    assert flags.unital and flags.trace_preserving
    x = np.array([[1.0, 2.0 + 1.0j], [2.0 - 1.0j, 3.0]], dtype=complex)
    out = dfakit.apply(ch, x)
    assert isinstance(out, np.ndarray)
    np.testing.assert_allclose(out, np.diag(np.diag(x)), atol=1e-14)


def test_report_dephasing():
    rep = dfakit.inclusion_report(dephasing())
    assert (rep.dim_a_commutant, rep.dim_fixed, rep.dim_dfa, rep.dim_b_commutant) == (
        2,
        2,
        2,
        2,
    )
    assert rep.chain_ok
    assert rep.luders_applicable
    assert rep.luders_ok is True
    assert rep.oracle_distance < 1e-10


def test_report_refuses_non_unital():
    e01 = np.array([[0, 1], [0, 0]], dtype=complex)
    e00 = np.array([[1, 0], [0, 0]], dtype=complex)
    with pytest.raises(ValueError):
        dfakit.inclusion_report(dfakit.KrausChannel(2, [e01, e00]))


def test_random_channel_deterministic():
    a = dfakit.random_channel("luders", 3, 2, seed=7)
    b = dfakit.random_channel("luders", 3, 2, seed=7)
    for x, y in zip(a.kraus(), b.kraus()):
        np.testing.assert_array_equal(x, y)
    assert dfakit.validate(a, tol=1e-8).unital


def test_dfa_of_unitary_is_everything():
    u = dfakit.haar_unitary(3, seed=11)
    ch = dfakit.KrausChannel(3, [u])
    assert dfakit.decoherence_free_algebra(ch).dim == 9
    oracle = dfakit.dfa_oracle(ch)
    assert dfakit.compare_subspaces(
        dfakit.decoherence_free_algebra(ch), oracle, 1e-8
    ).equal


def test_commutant_from_numpy():
    z = np.diag([1.0, -1.0]).astype(complex)
    diag = dfakit.commutant([z])
    assert diag.dim == 2
    assert dfakit.contains(diag, np.diag([3.0, 4.0]).astype(complex), 1e-10)


def test_file_round_trip(tmp_path):
    ch = dfakit.random_channel("padded", 2, 2, seed=5)
    path = tmp_path / "channel.json"
    dfakit.write_channel(path, ch)
    back = dfakit.read_channel(path)
    for x, y in zip(ch.kraus(), back.kraus()):
        np.testing.assert_array_equal(x, y)
    assert dfakit.format_channel(back) == path.read_text()


def test_parse_error():
    with pytest.raises(dfakit.ParseError):
        dfakit.parse_channel("{not json")
    assert issubclass(dfakit.ParseError, ValueError)


def test_reduce_padded():
    ch = dfakit.random_channel("padded", 3, 2, seed=9)
    red = dfakit.reduce_kraus(ch)
    assert red.reduced.num_kraus < ch.num_kraus
    x = dfakit.ginibre(3, 3, seed=1)
    np.testing.assert_allclose(
        dfakit.apply(ch, x), dfakit.apply(red.reduced, x), atol=1e-12
    )
