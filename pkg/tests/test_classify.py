import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symq.classify import (
    SeparableEnsemble,
    classify,
    partial_transpose,
    ppt_entangled,
    separable_pair,
    theorem2_audit,
)
from symq.collective import kitagawa_ueda_state, random_symmetric_state
from symq.invariants import (
    InvariantSet,
    compute_invariants,
    dicke_invariants_closed,
    ku_invariants_closed,
)
from symq.reduction import (
    NonPhysicalStateError,
    PairState,
    dicke_pair_closed,
    pair_density,
    reduce_pure,
)

unit_vectors = st.tuples(
    *[st.floats(-1, 1, allow_subnormal=False)] * 3
).filter(lambda v: np.linalg.norm(v) > 1e-3).map(lambda v: np.array(v) / np.linalg.norm(v))


class TestClassify:
    def test_dicke_two_qubit_center(self):
        flags = classify(dicke_invariants_closed(2, 0))
        assert flags.zero_spin_i1 and not flags.i3_nonzero
        assert flags.any_entanglement_flag

    def test_ku_two_qubits(self):
        flags = classify(ku_invariants_closed(2, np.pi / 4))
        assert flags.spin_squeezed and not flags.longitudinal

    def test_coherent(self):
        flags = classify(InvariantSet.from_values(0, 1, 1, 1, 0, 0))
        assert flags.i3_nonzero
        assert not flags.any_entanglement_flag
        assert flags.as_row() == (0, 0, 0, 0)

    def test_dicke_window(self):
        # N=6, M=2: t33 = (16 - 6)/30 > 0 while I4 - I3^2 < 0
        flags = classify(dicke_invariants_closed(6, 2))
        assert flags.window and not flags.spin_squeezed and not flags.longitudinal

    def test_dicke_boundary_is_longitudinal(self):
        # N=4, M=1 has t33 = 0 exactly, so I4 = 0 sits on the closed I4 branch
        flags = classify(dicke_invariants_closed(4, 1))
        assert flags.longitudinal and not flags.window

    def test_longitudinal_branch(self):
        # Dicke N=6, M=1: t33 = (4 - 6)/30 < 0, so I4 < 0
        flags = classify(dicke_invariants_closed(6, 1))
        assert flags.longitudinal and not flags.spin_squeezed

    def test_tolerance_recorded_and_used(self):
        inv = InvariantSet.from_values(0, 1, 1, 1, -1e-9, 0)
        assert classify(inv).spin_squeezed
        assert not classify(inv, tol=1e-8).spin_squeezed
        assert classify(inv, tol=1e-8).tolerances == {"zero": 1e-8}

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.floats(-2, 2), min_size=6, max_size=6))
    def test_flag_logic(self, vals):
        flags = classify(InvariantSet.from_values(*vals))
        if flags.zero_spin_i1:
            assert not flags.i3_nonzero
        assert flags.any_entanglement_flag == any(flags.as_row())

    @settings(max_examples=300, deadline=None)
    @given(st.integers(2, 12), st.integers(0, 2**32 - 1))
    def test_exclusivity_on_states(self, n, seed):
        pair = reduce_pure(random_symmetric_state(n, np.random.default_rng(seed)))
        flags = classify(compute_invariants(pair))
        assert not (flags.spin_squeezed and flags.longitudinal)


class TestSeparablePair:
    def test_single_term(self):
        pair = separable_pair(SeparableEnsemble([1.0], [[0, 0, 1]]))
        np.testing.assert_array_equal(pair.s, [0, 0, 1])
        np.testing.assert_array_equal(pair.t, np.diag([0, 0, 1]))

    def test_plus_minus_z(self):
        pair = separable_pair(SeparableEnsemble([0.5, 0.5], [[0, 0, 1], [0, 0, -1]]))
        np.testing.assert_array_equal(pair.s, 0)
        np.testing.assert_array_equal(pair.t, np.diag([0, 0, 1]))
        audit = theorem2_audit(SeparableEnsemble([0.5, 0.5], [[0, 0, 1], [0, 0, -1]]))
        assert audit.i4 == 0 and audit.i5 == 0

    def test_six_axes(self):
        axes = np.vstack([np.eye(3), -np.eye(3)])
        pair = separable_pair(SeparableEnsemble(np.full(6, 1 / 6), axes))
        np.testing.assert_allclose(pair.s, 0, atol=1e-15)
        np.testing.assert_allclose(pair.t, np.eye(3) / 3, atol=1e-15)

    def test_rejects_mixed_factor(self):
        with pytest.raises(ValueError):
            separable_pair(SeparableEnsemble([1.0], [[0, 0, 0.5]]))

    @pytest.mark.parametrize(
        "weights, vectors",
        [([0.5, 0.6], [[0, 0, 1], [1, 0, 0]]), ([1.0], [[0, 0, 1.1]]), ([1.0, 0.0], [[0, 0, 1]]), ([-0.5, 1.5], [[0, 0, 1], [1, 0, 0]])],
    )
    def test_ensemble_validation(self, weights, vectors):
        with pytest.raises(ValueError):
            SeparableEnsemble(weights, vectors)

    def test_single_term_i1_product_form(self):
        v = np.array([0.6, 0.0, 0.8])
        audit = theorem2_audit(SeparableEnsemble([1.0], [v]))
        # a rank-one T has zero determinant
        assert audit.i1 == pytest.approx(0, abs=1e-15)
        assert audit.passed()


class TestTheorem2:
    def test_random_ensembles(self, rng):
        worst = np.inf
        for _ in range(2000):
            ens = SeparableEnsemble.random(rng, int(rng.integers(1, 11)))
            worst = min(worst, theorem2_audit(ens).worst)
        assert worst >= -1e-10

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(unit_vectors, min_size=1, max_size=10),
        st.integers(0, 2**32 - 1),
    )
    def test_property(self, vectors, seed):
        w = np.random.default_rng(seed).dirichlet(np.ones(len(vectors)))
        audit = theorem2_audit(SeparableEnsemble(w / w.sum(), vectors))
        assert audit.passed()

    def test_audit_failure_detected(self):
        inv = compute_invariants(dicke_pair_closed(2, 0))
        assert inv.i1 < -1e-10


class TestPPT:
    def test_partial_transpose_of_product(self):
        a = np.array([[1, 2], [3, 4]])
        b = np.array([[5, 6], [7, 8]])
        np.testing.assert_array_equal(partial_transpose(np.kron(a, b)), np.kron(a, b.T))

    def test_triplet(self):
        dens = pair_density(dicke_pair_closed(2, 0))
        assert ppt_entangled(dens)
        assert np.linalg.eigvalsh(partial_transpose(dens.rho)).min() == pytest.approx(-0.5)

    def test_product(self):
        assert not ppt_entangled(pair_density(PairState([0, 0, 1], np.diag([0, 0, 1]))))

    def test_separable_ensembles(self, rng):
        for _ in range(1000):
            ens = SeparableEnsemble.random(rng, int(rng.integers(1, 11)))
            assert not ppt_entangled(pair_density(separable_pair(ens)))

    def test_rejects_nonphysical(self):
        rho = np.diag([1.1, 0, 0, -0.1])
        with pytest.raises(NonPhysicalStateError):
            ppt_entangled(rho)

    def test_clamps_roundoff(self):
        rho = np.diag([1.0, 0, 0, -1e-12])
        assert not ppt_entangled(rho)

    def test_soundness_random_states(self, rng):
        flagged = 0
        for _ in range(2000):
            pair = reduce_pure(random_symmetric_state(int(rng.integers(2, 11)), rng))
            flags = classify(compute_invariants(pair))
            if flags.any_entanglement_flag:
                flagged += 1
                assert ppt_entangled(pair_density(pair))
        assert flagged > 500

    def test_soundness_ku(self):
        for n in (3, 4, 8):
            for chi_t in np.linspace(0.01, 3.1, 40):
                pair = reduce_pure(kitagawa_ueda_state(n, chi_t))
                if classify(compute_invariants(pair)).any_entanglement_flag:
                    assert ppt_entangled(pair_density(pair))
