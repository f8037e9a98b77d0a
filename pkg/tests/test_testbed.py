import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from levyopt import get_objective, is_feasible
from levyopt.testbed import OBJECTIVES, evaluate_bump, evaluate_f0, evaluate_f2, evaluate_f5, evaluate_f6

# reference values from an independent 30-digit evaluation with mpmath
F0_ONES = 183.731625
F5_MINUS32 = 0.99800383881864891
F5_PLUS32 = 23.8094366156
F5_ORIGIN = 12.6705058129
BUMP_1_2 = 0.99529960645327803

GRID = np.array([-32.0, -16.0, 0.0, 16.0, 32.0])


class TestF0:
    def test_origin(self):
        assert evaluate_f0(np.zeros(4)) == 0.0

    def test_outside_well(self):
        assert evaluate_f0([0.3, 0, 0, 0]) == pytest.approx(0.09, abs=1e-12)

    def test_inside_wells(self):
        assert evaluate_f0(np.ones(4)) == pytest.approx(F0_ONES, abs=1e-9)

    def test_wrong_dim(self):
        with pytest.raises(ValueError):
            evaluate_f0(np.zeros(3))

    @given(arrays(float, 4, elements=st.floats(-1000, 1000)))
    def test_nonnegative(self, x):
        assert evaluate_f0(x) >= 0


class TestF2:
    @pytest.mark.parametrize("n", [2, 5, 10, 30])
    def test_ones(self, n):
        assert evaluate_f2(np.ones(n)) == 0.0

    def test_small_cases(self):
        assert evaluate_f2([0.0, 0.0]) == 1.0
        assert evaluate_f2([-1.0, 1.0]) == 4.0

    def test_dim_one(self):
        with pytest.raises(ValueError):
            evaluate_f2([1.0])

    @given(arrays(float, 6, elements=st.floats(-2.048, 2.048)))
    def test_nonnegative(self, x):
        assert evaluate_f2(x) >= 0


class TestF5:
    def test_anchors(self):
        assert evaluate_f5([-32.0, -32.0]) == pytest.approx(F5_MINUS32, abs=1e-5)
        assert evaluate_f5([32.0, 32.0]) == pytest.approx(F5_PLUS32, abs=0.05)
        assert evaluate_f5([0.0, 0.0]) == pytest.approx(F5_ORIGIN, abs=0.01)

    def test_wrong_dim(self):
        with pytest.raises(ValueError):
            evaluate_f5([0.0, 0.0, 0.0])

    def test_foxholes_are_lower_than_far_points(self):
        rng = np.random.default_rng(0)
        nodes = np.array([(a, b) for b in GRID for a in GRID])
        worst_node = max(evaluate_f5(p) for p in nodes)
        pts = rng.uniform(-65.536, 65.536, size=(20_000, 2))
        d = np.min(np.max(np.abs(pts[:, None, :] - nodes[None]), axis=2), axis=1)
        far = pts[d >= 2.0]
        assert len(far) > 1000
        assert min(evaluate_f5(p) for p in far) > worst_node


class TestF6:
    def test_values(self):
        assert evaluate_f6(np.zeros(10)) == 0.0
        assert evaluate_f6([0.5]) == pytest.approx(20.25, abs=1e-12)
        assert evaluate_f6([1.0, 1.0]) == pytest.approx(2.0, abs=1e-12)

    @given(arrays(float, 5, elements=st.floats(-5.12, 5.12)))
    def test_nonnegative(self, x):
        assert evaluate_f6(x) >= -1e-12


class TestBump:
    @pytest.mark.parametrize("c", [0.9, 1.3, 2.0, 3.7])
    def test_diagonal(self, c):
        assert evaluate_bump([c, c]) == pytest.approx(1.0, abs=1e-9)

    def test_anchor(self):
        assert evaluate_bump([1.0, 2.0]) == pytest.approx(BUMP_1_2, abs=1e-4)

    def test_origin(self):
        with pytest.raises(ValueError):
            evaluate_bump(np.zeros(3))

    @given(arrays(float, 4, elements=st.floats(0.01, 10)))
    def test_at_most_one(self, x):
        assert evaluate_bump(x) <= 1.0 + 1e-12

    def test_feasibility(self):
        obj = get_objective("bump")
        assert is_feasible(obj.space, np.full(50, 5.0))
        two = get_objective("bump", 2).space
        assert not is_feasible(two, [0.5, 0.5])
        assert not is_feasible(two, [7.6, 7.6])  # sum above 15
        assert is_feasible(two, [1.0, 1.0])


class TestRegistry:
    def test_names(self):
        assert list(OBJECTIVES) == ["f0", "f2", "f5", "f6", "bump"]

    def test_default_dims(self):
        assert {n: get_objective(n).dim for n in OBJECTIVES} == {"f0": 4, "f2": 10, "f5": 2, "f6": 10, "bump": 50}

    def test_fixed_dims(self):
        with pytest.raises(ValueError):
            get_objective("f5", 3)
        with pytest.raises(ValueError):
            get_objective("f0", 5)

    def test_unknown(self):
        with pytest.raises(KeyError):
            get_objective("f9")

    def test_known_best(self):
        assert get_objective("f5").known_best_value == pytest.approx(F5_MINUS32, abs=1e-12)
        assert get_objective("bump").known_best_value is None
        assert get_objective("f6", 3).known_best_value == 0.0

    def test_box_membership(self):
        sp = get_objective("f2").space
        assert is_feasible(sp, np.zeros(10))
        x = np.zeros(10)
        x[0] = 2.1
        assert not is_feasible(sp, x)

    def test_objective_call_checks_dim(self):
        with pytest.raises(ValueError):
            get_objective("f6", 3)(np.zeros(4))
