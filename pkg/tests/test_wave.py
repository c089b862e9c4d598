import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramnet.errors import ValidationError
from paramnet.wave import (
    PortLabel,
    ScatterMatrix,
    Tolerance,
    allclose,
    block,
    dagger,
    db_power,
    identity,
    is_unitary,
    matmul,
    sub_block,
    wrap_phase,
)

from conftest import labelled, random_unitary


def test_port_label_repr_and_name():
    p = PortLabel("jpc1", "a", "f1")
    assert p.name == "jpc1.a"
    assert str(p) == "jpc1.a@f1"


def test_port_label_rejects_unknown_channel():
    with pytest.raises(ValidationError):
        PortLabel("jpc1", "a", "f3")


@pytest.mark.parametrize(
    "data, message",
    [
        (np.zeros((2, 3)), "square"),
        (np.zeros((3, 3)), "port labels"),
    ],
)
def test_scatter_matrix_shape_checks(data, message):
    ports = (PortLabel("x", "1"), PortLabel("x", "2"))
    with pytest.raises(ValidationError, match=message):
        ScatterMatrix(ports, data)


def test_scatter_matrix_rejects_duplicate_ports():
    p = PortLabel("x", "1")
    with pytest.raises(ValidationError, match="unique"):
        ScatterMatrix((p, p), np.eye(2))


def test_data_is_copied_and_frozen():
    raw = np.eye(2, dtype=complex)
    m = labelled(raw)
    raw[0, 0] = 5
    assert m.data[0, 0] == 1
    with pytest.raises(ValueError):
        m.data[0, 0] = 2


def test_index_accepts_all_key_forms():
    m = ScatterMatrix.from_names("hyb", ("1", "2", "1p", "2p"), np.eye(4))
    assert m.index("1p") == 2
    assert m.index("hyb.2p") == 3
    assert m.index(PortLabel("hyb", "2", "f1")) == 1
    with pytest.raises(ValidationError, match="unknown"):
        m.index("3")


def test_s_reads_output_row_input_column():
    m = labelled([[0, 2], [3, 0]])
    assert m.s("2", "1") == 3
    assert m.s("1", "2") == 2


def test_reorder_permutes_rows_and_columns():
    m = labelled([[1, 2], [3, 4]])
    r = m.reorder(["2", "1"])
    assert r.ports == (m.ports[1], m.ports[0])
    np.testing.assert_array_equal(r.data, [[4, 3], [2, 1]])
    with pytest.raises(ValidationError):
        m.reorder(["1", "1"])


@pytest.mark.parametrize(
    "data, expected",
    [
        (np.eye(3), True),
        (np.array([[0, 1j], [1j, 0]]), True),
        (np.array([[1, 1], [1, -1]]) / math.sqrt(2), True),
        (np.array([[1, 0], [0, 0.9]]), False),
        (np.array([[0, 1], [0, 0]]), False),
    ],
)
def test_is_unitary_examples(data, expected):
    assert is_unitary(labelled(data)) is expected


def test_is_unitary_respects_tolerance():
    m = labelled(np.diag([1.0, 1.0 + 1e-7]))
    assert not is_unitary(m)
    assert is_unitary(m, Tolerance(1e-6, 1e-12))


@pytest.mark.parametrize("abs_eps, rel_eps", [(-1.0, 1e-9), (0.0, 1e-9), (1e-9, 0.0)])
def test_tolerance_must_be_strictly_positive(abs_eps, rel_eps):
    with pytest.raises(ValidationError):
        Tolerance(abs_eps, rel_eps)


def test_db_power_examples():
    assert db_power(2 * math.sqrt(2) / 3) == pytest.approx(-0.5115252244738, abs=1e-12)
    assert db_power(1j) == 0.0
    assert db_power(0.0) == -math.inf
    np.testing.assert_allclose(db_power(np.array([0.1, 1.0])), [-20.0, 0.0])


def test_sub_block_keeps_labels():
    m = labelled(np.arange(9).reshape(3, 3))
    sb = sub_block(m, ["1", "3"])
    assert [p.port for p in sb.ports] == ["1", "3"]
    np.testing.assert_array_equal(sb.data, [[0, 2], [6, 8]])
    with pytest.raises(ValidationError):
        sub_block(m, ["1"], ["2"])
    np.testing.assert_array_equal(block(m, ["1"], ["2", "3"]), [[1, 2]])


def test_identity_and_matmul():
    m = labelled([[0, 1], [1, 0]])
    assert allclose(matmul(m, m), identity(m.ports))
    with pytest.raises(ValidationError):
        matmul(m, labelled(np.eye(3)))


@pytest.mark.parametrize(
    "phi, expected",
    [(0.0, 0.0), (math.pi, math.pi), (-math.pi, math.pi), (3 * math.pi / 2, -math.pi / 2),
     (-5 * math.pi / 2, -math.pi / 2)],
)
def test_wrap_phase(phi, expected):
    assert wrap_phase(phi) == pytest.approx(expected, abs=1e-15)


seeds = st.integers(0, 2**32 - 1)
sizes = st.integers(1, 6)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, n=sizes)
def test_dagger_is_an_involution(seed, n):
    rng = np.random.default_rng(seed)
    m = labelled(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    assert np.array_equal(dagger(dagger(m)).data, m.data)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, n=sizes)
def test_matmul_is_associative_on_unitaries(seed, n):
    rng = np.random.default_rng(seed)
    a, b, c = (labelled(random_unitary(rng, n)) for _ in range(3))
    left = matmul(matmul(a, b), c)
    right = matmul(a, matmul(b, c))
    assert allclose(left, right, atol=1e-12)
    assert is_unitary(left)


@settings(max_examples=100, deadline=None)
@given(x=st.floats(1e-6, 1e3), y=st.floats(1e-6, 1e3))
def test_db_of_product_is_sum_of_db(x, y):
    assert db_power(x * y) == pytest.approx(db_power(x) + db_power(y), abs=1e-9)
