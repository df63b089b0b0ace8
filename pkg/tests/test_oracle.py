import pytest

from dkp.generator import GenSpec, generate
from dkp.model import DkpInstance
from dkp.oracle import DEFAULT_GROUP_LIMIT, OracleLimitError, brute_force


def test_oracle_t2(t2):
    value, witness = brute_force(t2)
    assert value == 30 and witness.value == 30 and witness.feasible


def test_oracle_zero_capacity(t2):
    value, witness = brute_force(DkpInstance(t2.profits, t2.weights, 0))
    assert value == 0 and witness.selection == (-1, -1)


def test_oracle_no_groups():
    value, witness = brute_force(DkpInstance([], [], 3))
    assert value == 0 and witness.selection == ()


def test_oracle_group_limit():
    inst = generate(GenSpec("unc", DEFAULT_GROUP_LIMIT + 1, 1))
    with pytest.raises(OracleLimitError):
        brute_force(inst)
    small = generate(GenSpec("unc", 3, 1))
    value, witness = brute_force(small, group_limit=3)
    assert witness.value == value


def test_oracle_handles_default_limit():
    inst = generate(GenSpec("strong", DEFAULT_GROUP_LIMIT, 4))
    value, witness = brute_force(inst)
    assert witness.feasible and witness.value == value > 0
