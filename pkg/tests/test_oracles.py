import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cswitch import qmath
from cswitch.oracles import (
    BooleanFunction,
    FunctionClass,
    OracleParseError,
    OracleSet,
    classify,
    diag_oracle,
    enumerate_oracle_sets,
    gate_name,
    ground_truth_odd_constants,
    identify_pauli,
    parse_oracle_set,
    product_oracle,
    two_qubit_oracle,
)

ALL_TABLES = [(0, 0), (0, 1), (1, 0), (1, 1)]

bits = st.integers(0, 1)


def test_boolean_function_validates_bits():
    with pytest.raises(ValueError):
        BooleanFunction(0, 2)


def test_oracle_set_requires_n_at_least_one():
    with pytest.raises(ValueError):
        OracleSet(functions=())


class TestClassify:
    @pytest.mark.parametrize(
        "table, expected",
        [
            ((0, 0), FunctionClass.CONSTANT),
            ((1, 1), FunctionClass.CONSTANT),
            ((0, 1), FunctionClass.BALANCED),
            ((1, 0), FunctionClass.BALANCED),
        ],
    )
    def test_examples(self, table, expected):
        assert classify(BooleanFunction(*table)) is expected


class TestDiagOracle:
    @pytest.mark.parametrize(
        "table, expected",
        [
            ((0, 0), qmath.I2),
            ((1, 1), -qmath.I2),
            ((0, 1), qmath.Z),
            ((1, 0), -qmath.Z),
        ],
    )
    def test_named_gates(self, table, expected):
        assert np.array_equal(diag_oracle(BooleanFunction(*table)), expected)

    @pytest.mark.parametrize("table", ALL_TABLES)
    def test_unitary_diagonal_plus_minus_one(self, table):
        d = diag_oracle(BooleanFunction(*table))
        assert qmath.is_unitary(d, 1e-12)
        assert d[0, 1] == 0 and d[1, 0] == 0
        assert set(np.diag(d)) <= {1.0 + 0j, -1.0 + 0j}

    @pytest.mark.parametrize("table", ALL_TABLES)
    def test_commutation_matches_class(self, table):
        f = BooleanFunction(*table)
        d = diag_oracle(f)
        if classify(f) is FunctionClass.CONSTANT:
            assert np.max(np.abs(qmath.commutator(d, qmath.X))) == 0.0
        else:
            assert np.max(np.abs(qmath.anticommutator(d, qmath.X))) == 0.0


class TestTwoQubitOracle:
    @pytest.mark.parametrize("table", ALL_TABLES)
    def test_defining_transformation(self, table):
        # Independent oracle: act on each basis state |x>|y> and check the
        # XOR target directly.
        f = BooleanFunction(*table)
        u = two_qubit_oracle(f)
        for x in (0, 1):
            for y in (0, 1):
                state = np.zeros(4, dtype=complex)
                state[2 * x + y] = 1.0
                out = u @ state
                expected_index = 2 * x + (y ^ f(x))
                assert out[expected_index] == 1.0
                assert qmath.norm_sq(out) == pytest.approx(1.0)

    def test_constant_zero_is_identity(self):
        assert np.array_equal(two_qubit_oracle(BooleanFunction(0, 0)), qmath.I4)

    def test_identity_balanced_is_cnot(self):
        # Expected matrix enumerated from the transformation, not assumed:
        # control is the first qubit.
        cnot = np.zeros((4, 4), dtype=complex)
        for x in (0, 1):
            for y in (0, 1):
                cnot[2 * x + (y ^ x), 2 * x + y] = 1.0
        assert np.array_equal(two_qubit_oracle(BooleanFunction(0, 1)), cnot)

    def test_constant_one_flips_second_qubit(self):
        assert np.array_equal(
            two_qubit_oracle(BooleanFunction(1, 1)), qmath.tensor(qmath.I2, qmath.X)
        )

    @pytest.mark.parametrize("table", ALL_TABLES)
    def test_permutation_and_involution(self, table):
        u = two_qubit_oracle(BooleanFunction(*table))
        assert np.array_equal(np.abs(u).sum(axis=0), np.ones(4))
        assert np.array_equal(np.abs(u).sum(axis=1), np.ones(4))
        assert np.array_equal(u @ u, qmath.I4)


class TestProductOracle:
    def test_single_constant(self):
        assert np.array_equal(product_oracle(OracleSet.from_pairs([(0, 0)])), qmath.I2)

    def test_constant_pair(self):
        s = OracleSet.from_pairs([(0, 0), (1, 1)])
        assert np.array_equal(product_oracle(s), -qmath.I2)

    def test_balanced_pair(self):
        s = OracleSet.from_pairs([(0, 1), (1, 0)])
        assert np.array_equal(product_oracle(s), -qmath.I2)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_always_pauli_with_z_iff_odd_balanced(self, n):
        for s in enumerate_oracle_sets(n):
            name = identify_pauli(product_oracle(s))
            n_balanced = sum(1 for f in s if classify(f) is FunctionClass.BALANCED)
            if n_balanced % 2 == 1:
                assert name in ("Z", "-Z")
            else:
                assert name in ("I", "-I")


class TestGroundTruth:
    def test_examples(self):
        assert ground_truth_odd_constants(OracleSet.from_pairs([(0, 0)]))
        assert ground_truth_odd_constants(OracleSet.from_pairs([(0, 0), (0, 1)]))
        assert not ground_truth_odd_constants(OracleSet.from_pairs([(0, 1), (1, 0)]))

    @given(st.lists(st.tuples(bits, bits), min_size=1, max_size=6))
    def test_matches_direct_count(self, tables):
        s = OracleSet.from_pairs(tables)
        odd = sum(1 for f0, f1 in tables if f0 == f1) % 2 == 1
        assert ground_truth_odd_constants(s) == odd


@pytest.mark.parametrize("n, size", [(1, 4), (2, 16), (3, 64), (4, 256)])
def test_configuration_space_size(n, size):
    sets = list(enumerate_oracle_sets(n))
    assert len(sets) == size
    assert len({s.to_json() for s in sets}) == size


class TestSerialization:
    def test_json_round_trip(self):
        s = OracleSet.from_pairs([(0, 0), (0, 1)])
        assert s.to_json() == "[[0,0],[0,1]]"
        assert parse_oracle_set(s.to_json()) == s

    def test_aliases(self):
        assert parse_oracle_set("c0,b01") == OracleSet.from_pairs([(0, 0), (0, 1)])
        assert parse_oracle_set("c1 b10") == OracleSet.from_pairs([(1, 1), (1, 0)])

    def test_gate_names(self):
        assert [gate_name(BooleanFunction(*t)) for t in ALL_TABLES] == ["I", "Z", "-Z", "-I"]

    def test_empty_array_rejected(self):
        with pytest.raises(OracleParseError, match="non-empty|n >= 1"):
            parse_oracle_set("[]")

    def test_unknown_alias(self):
        with pytest.raises(OracleParseError, match="alias"):
            parse_oracle_set("c0,b11")

    def test_malformed_json_reports_position(self):
        with pytest.raises(OracleParseError, match=r"line \d+, column \d+"):
            parse_oracle_set("[[0,0],")

    def test_bad_bits_rejected(self):
        with pytest.raises(OracleParseError):
            parse_oracle_set("[[0,2]]")
