"""Small worked-example profiles used throughout the tests and by ``--fixtures``."""

from __future__ import annotations

import math

from .core import Profile
from .generators import GeneratorConfig, generate


def e1() -> Profile:
    """Two voters, six candidates; MaxSum ties {a,b} and {x,y}, MaxNash picks {x,y}."""
    return Profile.from_orders(["a>x>c>d>y>b", "c>y>b>a>x>d"])


def e2() -> Profile:
    """{x,y} splits the voters evenly but {a,b} is better balanced in discrepancy."""
    return Profile.from_orders(["x>a>b>y", "a>y>x>b", "b>y>x>a"], weights=[2, 1, 1])


def e3() -> Profile:
    """{c,d} matching-dominates {a,b}, yet MaxSwap selects both."""
    return Profile.from_orders(["d>b>a>c", "a>c>b>d", "c>a>d>b"], weights=[10, 1, 1])


def e4() -> Profile:
    """a is unanimously first; the only conflicting pair is {b,c}."""
    return Profile.from_orders(["a>b>c", "a>c>b"])


def e5() -> Profile:
    """{a,b} matching-dominates {x,y}."""
    return Profile.from_orders(["a>x>y>b", "a>y>x>b", "b>x>a>y", "b>y>a>x"], names=["a", "b", "x", "y"])


def impossibility_start() -> Profile:
    return Profile.from_orders(["a>b>c>d", "b>a>d>c"])


def impossibility_moved() -> Profile:
    """The first profile after pushing a down in the second vote."""
    return Profile.from_orders(["a>b>c>d", "b>d>c>a"])


def identity(n: int = 4, m: int = 4) -> Profile:
    return generate(GeneratorConfig("identity", n, m))


def antagonism(n: int = 4, m: int = 4) -> Profile:
    return generate(GeneratorConfig("antagonism", n, m))


def uniformity(m: int = 4) -> Profile:
    return generate(GeneratorConfig("uniformity", math.factorial(m), m))


FIXTURES = {
    "E1": e1,
    "E2": e2,
    "E3": e3,
    "E4": e4,
    "E5": e5,
    "impossibility-start": impossibility_start,
    "impossibility-moved": impossibility_moved,
    "identity": identity,
    "antagonism": antagonism,
    "uniformity": uniformity,
}
