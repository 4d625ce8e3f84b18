from fractions import Fraction

import pytest

from hopftwist import (GroupPresentation, Variables, build_expr_twist,
                       build_table_twist, parse_tensor)


@pytest.fixture(scope="session")
def heis4():
    """4-dim unipotent presentation X, Y, V, W with the standard defects."""
    vars = Variables(unipotent=["X", "Y", "V", "W"])
    q = {
        "V": parse_tensor("X(x)Y", vars, 2),
        "W": parse_tensor("V(x)Y + 1/2 X(x)Y^2", vars, 2),
    }
    return GroupPresentation(vars, q)


@pytest.fixture(scope="session")
def heis4_twist(heis4):
    """Twist supported on the abelian (X, V) subgroup, pulled back."""
    support = GroupPresentation(Variables(unipotent=["X", "V"]))
    return build_expr_twist(heis4, support, [("X", "V", 1)],
                            {"X": "X", "Y": "0", "V": "V", "W": "0"})


@pytest.fixture(scope="session")
def heis4_table_twist(heis4):
    """Full-support table twist on the same presentation."""
    return build_table_twist(
        heis4,
        [("X", "V", "1/2"), ("W", "Y", "1/2"), ("V", "X", "-1/2"), ("Y", "W", "-1/2")],
        [("V", "X", "1/2"), ("Y", "W", "1/2"), ("X", "V", "-1/2"), ("W", "Y", "-1/2")])


@pytest.fixture(scope="session")
def torus_heis():
    vars = Variables(laurent=["F"], unipotent=["X", "Y", "V"])
    q = {"V": parse_tensor("X(x)Y", vars, 2)}
    return GroupPresentation(vars, q)


@pytest.fixture(scope="session")
def torus_twist(torus_heis):
    support = GroupPresentation(Variables(laurent=["F"], unipotent=["t"]))
    return build_expr_twist(torus_heis, support, [("F", "t", 1)],
                            {"F": "F", "X": "t", "Y": "t", "V": "1/2 t^2"})
