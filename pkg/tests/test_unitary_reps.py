"""u(n) representations, Weyl dimensions and Kostant data"""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from clifford_module import omega
from unitary_reps import (
    DominantWeight,
    LieRep,
    antiholomorphic_form_weight,
    build_rep,
    dolbeault_weight,
    highest_weights,
    holomorphic_form_weight,
    kostant_data,
    kostant_data_for_weights,
    spin_component_weight,
    weyl_dim,
)
from hurwitz_zeta import binomial


def _elementary(n, j, k):
    E = np.zeros((n, n), dtype=complex)
    E[j - 1, k - 1] = 1
    return E


@st.composite
def dominant_weights(draw, n):
    shift = draw(st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1, 3)]))
    gaps = draw(st.lists(st.integers(min_value=0, max_value=3), min_size=n - 1, max_size=n - 1))
    top = draw(st.integers(min_value=-3, max_value=3)) + shift
    entries = [top]
    for gap in gaps:
        entries.append(entries[-1] - gap)
    return DominantWeight(entries)


class TestDominantWeight:

    def test_rejects_non_dominant(self):
        with pytest.raises(ValueError, match="dominant"):
            DominantWeight([0, 1])

    def test_rejects_non_integral_difference(self):
        with pytest.raises(ValueError, match="integral"):
            DominantWeight([Fraction(1, 2), 0])

    def test_equality_with_tuples(self):
        assert DominantWeight(["1/2", "-1/2"]) == (Fraction(1, 2), Fraction(-1, 2))
        assert DominantWeight([1, 1]).shifted(Fraction(1, 2)) == DominantWeight(["3/2", "3/2"])


class TestWeylDim:

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_defining_like(self, n):
        assert weyl_dim([2] + [1] * (n - 1)) == n

    def test_trivial(self):
        assert weyl_dim([0, 0, 0]) == 1

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_spin_components(self, n):
        for l in range(n + 1):
            assert weyl_dim(spin_component_weight(n, l)) == binomial(n, l)
        assert sum(weyl_dim(spin_component_weight(n, l)) for l in range(n + 1)) == 2 ** n

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_form_weights(self, n):
        for p in range(n + 1):
            assert weyl_dim(holomorphic_form_weight(n, p)) == binomial(n, p)
            assert weyl_dim(antiholomorphic_form_weight(n, p)) == binomial(n, p)
        assert weyl_dim(dolbeault_weight(n)) == 1


class TestKostantData:

    def test_dolbeault_n3(self):
        data = kostant_data(dolbeault_weight(3), 3)
        assert [d.b_k for d in data] == [1, 2, 1]
        assert [d.z_value for d in data] == [-3, 2, -1]

    def test_trivial_n3(self):
        data = kostant_data([0, 0, 0], 3)
        assert [d.b_k for d in data] == [1, 2, 1]
        assert [d.z_value for d in data] == [-1, 0, 1]
        assert [d.kernel_flag for d in data] == [False, True, False]

    def test_spin_middle_component_n2(self):
        data = kostant_data(["1/2", "-1/2"], 2)
        assert [d.b_k for d in data] == [1, 1]
        assert [d.z_value for d in data] == [-1, -1]

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            kostant_data([0], 1)
        with pytest.raises(ValueError):
            kostant_data([0, 0], 3)

    @seed(6)
    @settings(max_examples=60, deadline=None)
    @given(data=st.data(), n=st.integers(min_value=2, max_value=5))
    def test_extreme_degrees(self, data, n):
        # H^0 and H^{n-1} are the u(n-1) modules with weights lambda_2.. and ..lambda_{n-1}
        weight = data.draw(dominant_weights(n))
        rows = kostant_data(weight, n)
        assert all(row.b_k > 0 for row in rows)
        assert rows[0].b_k == weyl_dim(weight.entries[1:])
        assert rows[-1].b_k == weyl_dim(weight.entries[:-1])

    @seed(7)
    @settings(max_examples=60, deadline=None)
    @given(data=st.data(), n=st.integers(min_value=2, max_value=5))
    def test_euler_characteristic(self, data, n):
        weight = data.draw(dominant_weights(n))
        b = [row.b_k for row in kostant_data(weight, n)]
        assert sum((-1) ** k * bk for k, bk in enumerate(b)) == 0
        assert sum(b) <= 2 ** (n - 1) * weyl_dim(weight)

    def test_concatenation(self):
        weights = [spin_component_weight(2, l) for l in range(3)]
        rows = kostant_data_for_weights(weights, 2)
        assert len(rows) == 6
        assert sum(row.b_k for row in rows) == 6


class TestCatalog:

    @pytest.mark.parametrize("spec", [
        ("trivial", 2), ("defining", 3), ("exterior", 3, 2), ("spin", 2), ("spin", 3),
        ("trace_shift", ("defining", 2), Fraction(1, 2)),
        ("tensor", ("defining", 2), ("defining", 2)),
        ("direct_sum", ("trivial", 2), ("spin", 2)),
    ])
    def test_bracket(self, spec):
        rep = build_rep(spec)
        n = rep.n
        for (a, b), (c, d) in itertools.product(itertools.product(range(1, n + 1), repeat=2), repeat=2):
            assert rep.bracket_residual(_elementary(n, a, b), _elementary(n, c, d)) < 1e-10

    def test_spin_diagonal_action(self):
        rep = build_rep(("spin", 2))
        t1, t2 = 0.7, -1.3
        expected = -0.5j * ((2 * t1 + t2) * omega(2, 1) + (t1 + 2 * t2) * omega(2, 2))
        assert np.allclose(rep.act(np.diag([1j * t1, 1j * t2])), expected)

    def test_trace_shift_trivial(self):
        rep = build_rep(("trace_shift", ("trivial", 2), Fraction(3, 2)))
        assert highest_weights(rep) == [DominantWeight(["3/2", "3/2"])]

    def test_mismatched_rank(self):
        with pytest.raises(ValueError, match="share n"):
            build_rep(("direct_sum", ("trivial", 2), ("trivial", 3)))

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown"):
            build_rep(("adjoint", 2))


class TestHighestWeights:

    def test_exterior(self):
        assert highest_weights(build_rep(("exterior", 2, 1))) == [DominantWeight([1, 0])]

    @pytest.mark.parametrize("spec, expected", [
        (("defining", 2), [1, 0]),
        (("exterior", 3, 1), [1, 0, 0]),
        (("exterior", 3, 2), [1, 1, 0]),
    ])
    def test_skips_non_dominant_weight_spaces(self, spec, expected):
        assert highest_weights(build_rep(spec)) == [DominantWeight(expected)]

    def test_spin2(self):
        assert highest_weights(build_rep(("spin", 2))) == [
            DominantWeight(["3/2", "3/2"]), DominantWeight(["1/2", "-1/2"]), DominantWeight(["-3/2", "-3/2"])]

    def test_multiplicity(self):
        rep = build_rep(("direct_sum", ("trivial", 2), ("trivial", 2)))
        assert highest_weights(rep) == [DominantWeight([0, 0])] * 2

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_spin_components(self, n):
        expected = sorted((spin_component_weight(n, l) for l in range(n + 1)), reverse=True)
        assert highest_weights(build_rep(("spin", n))) == expected

    def test_tensor_square(self):
        # C^2 (x) C^2 = Sym^2 + Lambda^2
        weights = highest_weights(build_rep(("tensor", ("defining", 2), ("defining", 2))))
        assert weights == [DominantWeight([2, 0]), DominantWeight([1, 1])]

    def test_conjugated_rep(self, rng):
        U = unitary_group.rvs(3, random_state=rng)
        base = build_rep(("defining", 3))
        rep = LieRep(3, {key: U @ m @ U.conj().T for key, m in base.generators.items()})
        assert highest_weights(rep) == [DominantWeight([1, 0, 0])]
