"""Discrete groups, Cayley-ball truncations and Kesten-type spectral tests."""

from .cayley import BallTooLarge, CayleyBall, CayleyOperator, ball
from .discrete import (DiscreteGroup, FiniteTableGroup, FreeGroup, GroupSpecError, ProductGroup, ZdGroup,
                       builtin_group, builtin_groups)
from .kesten import (Condition5Report, KestenReport, closed_walks, co_amenability_verdict, condition5_check,
                     kesten_estimate)
