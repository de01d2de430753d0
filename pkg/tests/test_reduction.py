import numpy as np
import pytest

from symq.collective import (
    PureSymmetricState,
    dicke_state,
    kitagawa_ueda_state,
    random_symmetric_state,
    squeezed_bath_state,
)
from symq.reduction import (
    NonPhysicalStateError,
    PairState,
    bath_pair_closed,
    dicke_pair_closed,
    full_partial_trace,
    ku_pair_closed,
    pair_density,
    pair_moments,
    collective_moments,
    reduce_pure,
)


def assert_pair_valid(pair: PairState):
    np.testing.assert_allclose(pair.t, pair.t.T, atol=1e-12)
    assert abs(np.trace(pair.t) - 1) < 1e-10
    assert np.linalg.norm(pair.s) <= 1 + 1e-10
    assert np.abs(np.diag(pair.t)).max() <= 1 + 1e-10
    assert pair_density(pair).min_eigenvalue >= -1e-10


class TestReducePure:
    def test_two_qubit_triplet(self):
        pair = reduce_pure(dicke_state(2, 0))
        np.testing.assert_allclose(pair.s, 0, atol=1e-15)
        np.testing.assert_allclose(pair.t, np.diag([1, 1, -1]), atol=1e-14)

    @pytest.mark.parametrize("n", [2, 3, 5, 10])
    def test_all_up(self, n):
        pair = reduce_pure(dicke_state(n, n / 2))
        np.testing.assert_allclose(pair.s, [0, 0, 1], atol=1e-14)
        np.testing.assert_allclose(pair.t, np.diag([0, 0, 1]), atol=1e-14)

    def test_rejects_single_qubit(self):
        with pytest.raises(ValueError):
            reduce_pure(dicke_state(1, 0.5))

    def test_random_states_are_valid(self, rng):
        for n in range(2, 21):
            for _ in range(100):
                assert_pair_valid(reduce_pure(random_symmetric_state(n, rng)))

    def test_family_states_are_valid(self):
        for n in (2, 4, 6, 12):
            for m in np.arange(-n / 2, n / 2 + 1):
                assert_pair_valid(reduce_pure(dicke_state(n, m)))
            for chi_t in np.linspace(0, np.pi, 13):
                assert_pair_valid(reduce_pure(kitagawa_ueda_state(n, chi_t)))
            for x in (0.05, 0.5, 0.95):
                assert_pair_valid(reduce_pure(squeezed_bath_state(n, x)))

    def test_moments_round_trip(self, rng):
        state = random_symmetric_state(7, rng)
        mean, anti = collective_moments(state)
        mean2, anti2 = pair_moments(reduce_pure(state), 7)
        np.testing.assert_allclose(mean, mean2, atol=1e-12)
        np.testing.assert_allclose(anti, anti2, atol=1e-12)


class TestPairDensity:
    def test_triplet_projector(self):
        rho = pair_density(PairState([0, 0, 0], np.diag([1, 1, -1]))).rho
        v = np.array([0, 1, 1, 0]) / np.sqrt(2)
        np.testing.assert_allclose(rho, np.outer(v, v), atol=1e-15)

    def test_product_state_projector(self):
        rho = pair_density(PairState([0, 0, 1], np.diag([0, 0, 1]))).rho
        expected = np.zeros((4, 4))
        expected[0, 0] = 1
        np.testing.assert_allclose(rho, expected, atol=1e-15)

    def test_isotropic_point(self):
        # eigenvalues of (1 + sum_i s1_i s2_i / 3)/4: triplet 1/3, singlet 0
        dens = pair_density(PairState([0, 0, 0], np.eye(3) / 3))
        np.testing.assert_allclose(np.linalg.eigvalsh(dens.rho), [0, 1 / 3, 1 / 3, 1 / 3], atol=1e-15)
        assert dens.is_physical

    def test_hermitian_unit_trace(self, rng):
        for _ in range(20):
            rho = pair_density(reduce_pure(random_symmetric_state(5, rng))).rho
            np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
            assert abs(np.trace(rho) - 1) < 1e-12
            # no weight on the singlet
            singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
            assert abs(singlet @ rho @ singlet) < 1e-12

    def test_reports_nonphysical(self):
        dens = pair_density(PairState([0, 0, 1], np.diag([1, 1, -1])))
        assert dens.min_eigenvalue < -1e-8
        assert not dens.is_physical

    @pytest.mark.parametrize(
        "s, t",
        [
            ([0, 0, 0], np.diag([1, 1, 0])),
            ([0, 0, 1.1], np.diag([0, 0, 1])),
            ([0, 0, 0], [[0, 0.1, 0], [0.2, 0, 0], [0, 0, 1]]),
            ([0, 0, 0], np.diag([2, -1, 0])),
        ],
    )
    def test_pair_state_rejects(self, s, t):
        with pytest.raises(NonPhysicalStateError):
            PairState(s, t)


class TestPartialTraceOracle:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_random_states(self, rng, n):
        for _ in range(20):
            state = random_symmetric_state(n, rng)
            np.testing.assert_allclose(
                pair_density(reduce_pure(state)).rho, full_partial_trace(state), atol=1e-10
            )

    def test_limit(self):
        amps = np.zeros(14)
        amps[0] = 1
        with pytest.raises(ValueError):
            full_partial_trace(PureSymmetricState(13, amps))


class TestClosedForms:
    def test_dicke_two_qubits(self):
        pair = dicke_pair_closed(2, 0)
        np.testing.assert_allclose(pair.t, np.diag([1, 1, -1]))

    def test_dicke_all_up(self):
        pair = dicke_pair_closed(4, 2)
        np.testing.assert_allclose(pair.s, [0, 0, 1])
        np.testing.assert_allclose(pair.t, np.diag([0, 0, 1]))

    @pytest.mark.parametrize("n", [2, 3, 4, 7, 10])
    def test_dicke_matches_reduction(self, n):
        for m in np.arange(-n / 2, n / 2 + 1):
            assert dicke_pair_closed(n, m).allclose(reduce_pure(dicke_state(n, m)), 1e-10)

    def test_dicke_rejects(self):
        with pytest.raises(ValueError):
            dicke_pair_closed(4, 0.5)

    @pytest.mark.parametrize("n", [2, 3, 9])
    def test_ku_unevolved(self, n):
        pair = ku_pair_closed(n, 0.0)
        np.testing.assert_allclose(pair.s, [0, 0, -1])
        np.testing.assert_allclose(pair.t, np.diag([0, 0, 1]))

    def test_ku_two_qubits_quarter_pi(self):
        pair = ku_pair_closed(2, np.pi / 4)
        assert pair.t[0, 1] == pytest.approx(0.70710678118654752, abs=1e-15)
        assert pair.t[1, 1] == pytest.approx(0.0, abs=1e-15)
        assert pair.t[2, 2] == pytest.approx(1.0, abs=1e-15)
        assert pair.s[2] == pytest.approx(-0.70710678118654752, abs=1e-15)
        assert pair.allclose(reduce_pure(kitagawa_ueda_state(2, np.pi / 4)), 1e-12)

    @pytest.mark.parametrize("n, chi_t", [(4, 0.3), (6, 0.5), (8, 2.1), (5, 1.0)])
    def test_ku_matches_reduction(self, n, chi_t):
        assert ku_pair_closed(n, chi_t).allclose(reduce_pure(kitagawa_ueda_state(n, chi_t)), 1e-10)

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 20])
    @pytest.mark.parametrize("x", [0.02, 0.5, 0.9, 0.98])
    def test_bath_matches_reduction(self, n, x):
        closed = bath_pair_closed(n, x)
        assert closed.allclose(reduce_pure(squeezed_bath_state(n, x)), 1e-9)
        assert abs(np.trace(closed.t) - 1) < 1e-10

    def test_bath_symmetric_limit(self):
        pair = bath_pair_closed(2, 1 - 1e-9)
        assert abs(pair.s[2]) < 1e-8
        assert pair_density(pair).min_eigenvalue > -1e-8
