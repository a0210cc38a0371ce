import math

import numpy as np
import pytest

from qregsim import (
    GateSpec,
    RangeError,
    RegisterError,
    RegisterLayout,
    StateVector,
    apply_function_add,
    apply_function_xor,
    apply_function_xor_controlled,
    apply_phase_oracle,
    build_modexp,
    build_two_to_one,
    deutsch_family,
    grover_diffusion,
    hadamard,
    inner_product,
    kronecker_family,
    make_basis_state,
    normalize,
    outcome_distribution,
    qft,
    schmidt_rank,
    state_from_terms,
)

RT2 = 1.0 / math.sqrt(2.0)


def random_state(layout, rng):
    amps = rng.normal(size=layout.dim) + 1j * rng.normal(size=layout.dim)
    return normalize(StateVector(layout, amps))


class TestHadamard:
    def test_single_qubit_plus(self):
        layout = RegisterLayout((("a", 1),))
        out = hadamard(make_basis_state(layout, {"a": 0}), "a")
        np.testing.assert_allclose(out.amplitudes, [RT2, RT2])

    def test_single_qubit_minus(self):
        layout = RegisterLayout((("a", 1),))
        out = hadamard(make_basis_state(layout, {"a": 1}), "a")
        np.testing.assert_allclose(out.amplitudes, [RT2, -RT2])

    def test_two_qubit_uniform(self):
        layout = RegisterLayout((("a", 2), ("v", 2)))
        out = hadamard(make_basis_state(layout, {"a": 0, "v": 0}), "a")
        expected = state_from_terms(layout, [({"a": x, "v": 0}, 0.5) for x in range(4)])
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-15)

    @pytest.mark.parametrize("width", range(1, 7))
    def test_sign_law_brute_force(self, width):
        # independent oracle: amplitude of |z> in H|x> is (-1)^popcount(x & z) / sqrt(N)
        layout = RegisterLayout((("a", width),))
        dim = 1 << width
        for x in range(dim):
            out = hadamard(make_basis_state(layout, {"a": x}), "a")
            expected = np.array(
                [(-1.0) ** bin(x & z).count("1") for z in range(dim)]
            ) / math.sqrt(dim)
            np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)

    def test_self_inverse(self):
        layout = RegisterLayout((("a", 3), ("v", 1)))
        state = random_state(layout, np.random.default_rng(0))
        back = hadamard(hadamard(state, "a"), "a")
        np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-12)

    def test_unknown_register(self):
        layout = RegisterLayout((("a", 1),))
        with pytest.raises(RegisterError):
            hadamard(make_basis_state(layout, {"a": 0}), "b")


class TestFourier:
    def test_zero_maps_to_uniform_positive(self):
        layout = RegisterLayout((("a", 3),))
        out = qft(make_basis_state(layout, {"a": 0}), "a")
        np.testing.assert_allclose(out.amplitudes, np.full(8, 1 / math.sqrt(8)), atol=1e-12)

    def test_inverse_round_trip(self):
        layout = RegisterLayout((("a", 4),))
        state = random_state(layout, np.random.default_rng(1))
        back = qft(qft(state, "a"), "a", inverse=True)
        np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-12)

    def test_comb_support(self):
        # brute-force 16-point transform of a period-4 comb as the oracle
        layout = RegisterLayout((("a", 4),))
        comb = normalize(
            state_from_terms(layout, [({"a": x}, 1.0) for x in (1, 5, 9, 13)])
        )
        expected = np.array(
            [
                sum(np.exp(2j * np.pi * x * z / 16) * comb.amplitudes[x] for x in range(16))
                / math.sqrt(16)
                for z in range(16)
            ]
        )
        out = qft(comb, "a")
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)
        support = set(np.nonzero(np.abs(out.amplitudes) > 1e-12)[0])
        assert support == {0, 4, 8, 12}

    def test_unitarity_preserves_overlaps(self):
        layout = RegisterLayout((("a", 3), ("v", 2)))
        rng = np.random.default_rng(2)
        x, y = random_state(layout, rng), random_state(layout, rng)
        assert inner_product(qft(x, "a"), qft(y, "a")) == pytest.approx(
            inner_product(x, y), abs=1e-12
        )


class TestFunctionGates:
    def test_xor_maps_single_term(self):
        oracle = deutsch_family()[0b01]
        layout = RegisterLayout((("a", 1), ("v", 1)))
        out = apply_function_xor(make_basis_state(layout, {"a": 1, "v": 0}), oracle, "a", "v")
        assert out.amplitude({"a": 1, "v": 1}) == 1.0

    def test_xor_self_inverse(self):
        oracle = build_two_to_one(3, 5, np.random.default_rng(3))
        layout = RegisterLayout((("a", 3), ("v", 3)))
        state = random_state(layout, np.random.default_rng(4))
        back = apply_function_xor(
            apply_function_xor(state, oracle, "a", "v"), oracle, "a", "v"
        )
        np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-12)

    def test_phase_kickback_against_minus_state(self):
        # expanding |x>(|0>-|1>)/sqrt2 -> |x>(|f>-|1^f>)/sqrt2 = (-1)^f |x>(|0>-|1>)/sqrt2
        oracle = kronecker_family(2)[3]
        layout = RegisterLayout((("a", 2), ("v", 1)))
        rng = np.random.default_rng(5)
        weights = rng.normal(size=4) + 1j * rng.normal(size=4)
        weights /= np.linalg.norm(weights)
        state = state_from_terms(
            layout,
            [({"a": x, "v": v}, w * (RT2 if v == 0 else -RT2))
             for x, w in enumerate(weights) for v in range(2)],
        )
        out = apply_function_xor(state, oracle, "a", "v")
        expected = state_from_terms(
            layout,
            [({"a": x, "v": v}, (-1.0) ** oracle.value(x) * w * (RT2 if v == 0 else -RT2))
             for x, w in enumerate(weights) for v in range(2)],
        )
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-12)
        via_phase = apply_phase_oracle(state, oracle, "a")
        np.testing.assert_allclose(out.amplitudes, via_phase.amplitudes, atol=1e-12)

    def test_add_matches_xor_on_cleared_output(self):
        oracle = build_two_to_one(2, 2, (3, 1))
        layout = RegisterLayout((("a", 2), ("v", 2)))
        state = hadamard(make_basis_state(layout, {"a": 0, "v": 0}), "a")
        np.testing.assert_allclose(
            apply_function_add(state, oracle, "a", "v").amplitudes,
            apply_function_xor(state, oracle, "a", "v").amplitudes,
            atol=1e-15,
        )

    def test_add_entangles_argument_with_value(self):
        oracle = build_two_to_one(2, 2, (0, 1), family="two_to_one_arith")
        layout = RegisterLayout((("a", 2), ("v", 2)))
        state = hadamard(make_basis_state(layout, {"a": 0, "v": 0}), "a")
        out = apply_function_add(state, oracle, "a", "v")
        expected = state_from_terms(layout, [({"a": x, "v": x % 2}, 0.5) for x in range(4)])
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-15)

    def test_modexp_on_uniform_argument(self):
        oracle = build_modexp(7, 15, 4)
        layout = RegisterLayout((("a", 4), ("v", 4)))
        state = hadamard(make_basis_state(layout, {"a": 0, "v": 0}), "a")
        out = apply_function_add(state, oracle, "a", "v")
        expected = state_from_terms(
            layout, [({"a": x, "v": pow(7, x, 15)}, 0.25) for x in range(16)]
        )
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-15)

    def test_unitary_modular_addition(self):
        oracle = build_modexp(2, 15, 3)
        layout = RegisterLayout((("a", 3), ("v", 4)))
        rng = np.random.default_rng(6)
        x, y = random_state(layout, rng), random_state(layout, rng)
        gx = apply_function_add(x, oracle, "a", "v")
        gy = apply_function_add(y, oracle, "a", "v")
        assert inner_product(gx, gy) == pytest.approx(inner_product(x, y), abs=1e-12)

    def test_width_mismatch(self):
        oracle = build_modexp(7, 15, 4)
        layout = RegisterLayout((("a", 3), ("v", 4)))
        with pytest.raises(RegisterError):
            apply_function_add(make_basis_state(layout, {}), oracle, "a", "v")


class TestDiffusion:
    def test_uniform_is_fixed_point(self):
        layout = RegisterLayout((("a", 2),))
        uniform = hadamard(make_basis_state(layout, {"a": 0}), "a")
        out = grover_diffusion(uniform, "a")
        np.testing.assert_allclose(out.amplitudes, uniform.amplitudes, atol=1e-12)

    def test_single_round_search_matrix_product(self):
        # oracle: 4x4 matrix product computed explicitly
        mark = 2
        sign_flip = np.diag([(-1.0) ** (x == mark) for x in range(4)])
        mean_inversion = np.full((4, 4), 0.5) - np.eye(4)
        uniform = np.full(4, 0.5)
        expected = mean_inversion @ sign_flip @ uniform
        np.testing.assert_allclose(expected, np.eye(4)[mark], atol=1e-12)

        layout = RegisterLayout((("a", 2),))
        state = hadamard(make_basis_state(layout, {"a": 0}), "a")
        flipped = apply_phase_oracle(state, kronecker_family(2)[mark], "a")
        out = grover_diffusion(flipped, "a")
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)

    def test_self_inverse(self):
        layout = RegisterLayout((("a", 3),))
        state = random_state(layout, np.random.default_rng(7))
        back = grover_diffusion(grover_diffusion(state, "a"), "a")
        np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-12)


class TestControlledFunctionGate:
    def test_sharp_mode_matches_plain_gate(self):
        family = deutsch_family()
        layout = RegisterLayout((("m", 2), ("a", 1), ("v", 1)))
        state = hadamard(make_basis_state(layout, {"m": 1, "a": 0, "v": 0}), "a")
        controlled = apply_function_xor_controlled(state, family, "m", "a", "v")
        plain = apply_function_xor(state, family[1], "a", "v")
        np.testing.assert_allclose(controlled.amplitudes, plain.amplitudes, atol=1e-15)

    def test_mode_register_too_narrow(self):
        family = deutsch_family()
        layout = RegisterLayout((("m", 1), ("a", 1), ("v", 1)))
        with pytest.raises(RegisterError):
            apply_function_xor_controlled(
                make_basis_state(layout, {}), family, "m", "a", "v"
            )

    def test_support_outside_family_rejected(self):
        family = deutsch_family()[:3]
        layout = RegisterLayout((("m", 2), ("a", 1), ("v", 1)))
        state = make_basis_state(layout, {"m": 3, "a": 0, "v": 0})
        with pytest.raises(RangeError):
            apply_function_xor_controlled(state, family, "m", "a", "v")

    def test_mode_register_left_unchanged(self):
        family = kronecker_family(2)
        layout = RegisterLayout((("m", 2), ("a", 2), ("v", 1)))
        state = hadamard(hadamard(make_basis_state(layout, {}), "m"), "a")
        out = apply_function_xor_controlled(state, family, "m", "a", "v")
        before = outcome_distribution(state, "m").as_dict()
        after = outcome_distribution(out, "m").as_dict()
        assert before == pytest.approx(after)


class TestGateLocality:
    def test_gate_on_one_register_leaves_product_structure(self):
        layout = RegisterLayout((("a", 2), ("v", 2)))
        rng = np.random.default_rng(8)
        left = rng.normal(size=4) + 1j * rng.normal(size=4)
        right = rng.normal(size=4) + 1j * rng.normal(size=4)
        state = normalize(StateVector(layout, np.kron(left, right)))
        before = outcome_distribution(state, "v").as_dict()
        for gate in (lambda s: hadamard(s, "a"), lambda s: qft(s, "a"),
                     lambda s: grover_diffusion(s, "a")):
            out = gate(state)
            assert schmidt_rank(out, (("a",), ("v",))) == 1
            assert outcome_distribution(out, "v").as_dict() == pytest.approx(before)


class TestGateSpec:
    def test_round_trip_with_oracle(self):
        spec = GateSpec("function-add", ("a", "v"), oracle=build_modexp(7, 15, 4))
        rebuilt = GateSpec.from_dict(spec.to_dict())
        assert rebuilt == spec

    def test_round_trip_with_family(self):
        spec = GateSpec(
            "function-xor-controlled", ("m", "a", "v"), family=tuple(deutsch_family())
        )
        rebuilt = GateSpec.from_dict(spec.to_dict())
        assert rebuilt == spec

    def test_apply_dispatch(self):
        layout = RegisterLayout((("a", 2), ("v", 2)))
        state = make_basis_state(layout, {"a": 0, "v": 0})
        via_spec = GateSpec("hadamard", ("a",)).apply(state)
        np.testing.assert_allclose(via_spec.amplitudes, hadamard(state, "a").amplitudes)

    def test_unknown_kind_rejected(self):
        with pytest.raises(RegisterError):
            GateSpec("toffoli", ("a",))
