import pytest

from coxhecke import CoxeterSystem


@pytest.fixture
def free3():
    """Free product of three involutions: no commuting pairs."""
    return CoxeterSystem("stu")


@pytest.fixture
def z2sq_z2():
    """Z2^2 * Z2: s is the free factor, t and u commute."""
    return CoxeterSystem(["s", "t", "u"], [("t", "u")])


@pytest.fixture
def pentagon():
    """Five generators whose commutation graph is a 5-cycle."""
    return CoxeterSystem("pqrst", [("p", "q"), ("q", "r"), ("r", "s"),
                                   ("s", "t"), ("t", "p")])


@pytest.fixture
def dihedral():
    """Infinite dihedral: two non-commuting involutions."""
    return CoxeterSystem("st")


@pytest.fixture
def z2xz2():
    """Direct product of two involutions (finite, four elements)."""
    return CoxeterSystem("st", [("s", "t")])


@pytest.fixture
def named_systems(free3, z2sq_z2, pentagon):
    return {"free3": free3, "z2sq-z2": z2sq_z2, "pentagon": pentagon}
