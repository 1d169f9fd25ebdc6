import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binchain.coefficients import (
    BiasedModel,
    FiniteVector,
    Geometric,
    PowerLaw,
    SignPattern,
    classify,
    coherent_configurations,
    validate,
)
from binchain.errors import (
    EmptySupportError,
    GcdError,
    NormalizationError,
    ParameterError,
)


def test_validate_ok():
    validate(FiniteVector((0.5, -0.5)))
    validate(Geometric(0.5, SignPattern((1,))))
    validate(PowerLaw(2.0, SignPattern((1, -1))))


def test_validate_normalization_error():
    with pytest.raises(NormalizationError):
        validate(FiniteVector((0.5, 0.25)))


def test_validate_empty_support():
    with pytest.raises(EmptySupportError):
        validate(FiniteVector((0.0, 0.0)))


def test_validate_parameter_errors():
    with pytest.raises(ParameterError):
        Geometric(1.0)
    with pytest.raises(ParameterError):
        Geometric(0.0)
    with pytest.raises(ParameterError):
        PowerLaw(1.0)
    with pytest.raises(ParameterError):
        SignPattern(())
    with pytest.raises(ParameterError):
        SignPattern((1, 2))


def test_abs_sign_theta():
    m = FiniteVector((0.5, -0.5))
    assert m.abs_theta(2) == 0.5 and m.sign_theta(2) == -1
    assert m.abs_theta(3) == 0.0 and m.sign_theta(3) == 0
    g = Geometric(0.5, SignPattern((1,)))
    assert g.abs_theta(3) == pytest.approx(0.125)
    assert g.sign_theta(3) == 1


def test_tail_values():
    assert Geometric(0.5).tail(3) == pytest.approx(0.25)
    assert FiniteVector((0.5, -0.5)).tail(2) == pytest.approx(0.5)
    for m in (FiniteVector((0.5, -0.5)), Geometric(0.3), PowerLaw(2.0)):
        assert m.tail(1) == pytest.approx(1.0, abs=1e-14)


def test_powerlaw_tail_matches_zeta():
    import mpmath

    for alpha in (1.2, 2.0, 3.5):
        m = PowerLaw(alpha)
        z = float(mpmath.zeta(alpha))
        assert m.normalizer == pytest.approx(z, rel=1e-13)
        for k in (1, 2, 5, 100, 5000, 10 ** 7):
            exact = float(mpmath.zeta(alpha, k)) / z  # Hurwitz zeta: tail sum
            assert m.tail(k) == pytest.approx(exact, rel=1e-10, abs=1e-13)


def test_support_gcd():
    assert FiniteVector((0.0, 0.5, 0.0, -0.5)).support_gcd() == 2
    assert FiniteVector((0.5, -0.5)).support_gcd() == 1
    assert PowerLaw(2.0, SignPattern((1, -1))).support_gcd() == 1


def test_condition_ii():
    assert FiniteVector((0.5, -0.5)).condition_ii()
    assert not FiniteVector((0.5, 0.5)).condition_ii()
    assert not FiniteVector((-0.5, 0.5)).condition_ii()
    # periodic pattern with a negative even lag
    assert PowerLaw(2.0, SignPattern((1, -1))).condition_ii()
    assert not PowerLaw(2.0, SignPattern((1,))).condition_ii()


def _tail_square_increments(model, levels=7):
    """Dyadic increments of sum T(k)^2: decreasing iff the sum converges."""
    out = []
    for j in range(2, levels):
        lo, hi = 2 ** j, 2 ** (j + 1)
        out.append(sum(model.tail(k) ** 2 for k in range(lo, hi)))
    return out


def test_condition_iii_numeric_oracle():
    heavy = PowerLaw(1.2, SignPattern((1, 1, -1, 1)))
    light = PowerLaw(2.0, SignPattern((1, 1, -1, 1)))
    inc_heavy = _tail_square_increments(heavy)
    inc_light = _tail_square_increments(light)
    # divergent: dyadic blocks grow; convergent: they shrink roughly by half
    assert inc_heavy[-1] > 1.2 * inc_heavy[-2]
    assert inc_light[-1] < 0.8 * inc_light[-2]
    assert not heavy.condition_iii()
    assert light.condition_iii()
    assert FiniteVector((0.5, -0.5)).condition_iii()
    assert Geometric(0.9).condition_iii()
    assert PowerLaw(1.5001).condition_iii() and not PowerLaw(1.4999).condition_iii()


def test_classify_examples():
    assert classify(FiniteVector((0.5, 0.5))).kind == "nonunique_constant"
    assert classify(FiniteVector((-0.5, 0.5))).kind == "nonunique_checkerboard"
    assert classify(FiniteVector((0.5, -0.5))).kind == "unique"
    v = classify(FiniteVector((0.0, 0.5, 0.0, -0.5)))
    assert v.kind == "nonunique_gcd" and v.k0 == 2
    assert v.reduced is not None and v.reduced.kind == "unique"
    pattern = SignPattern((1, 1, -1, 1))  # negative even lags exist
    assert classify(PowerLaw(1.2, pattern)).kind == "undetermined"
    assert classify(PowerLaw(2.0, pattern)).kind == "unique"


def test_classify_support_invariance():
    base = FiniteVector((0.5, -0.5))
    padded = FiniteVector((0.5, -0.5, 0.0, 0.0))
    assert classify(base).kind == classify(padded).kind


def test_coherent_configurations():
    consts = coherent_configurations(FiniteVector((0.5, 0.5)))
    assert sorted(c.period for c in consts) == [(-1,), (1,)]
    boards = coherent_configurations(FiniteVector((-0.5, 0.5)))
    assert sorted(c.period for c in boards) == [(-1, 1), (1, -1)]
    assert coherent_configurations(FiniteVector((0.5, -0.5))) == []
    with pytest.raises(GcdError):
        coherent_configurations(FiniteVector((0.0, 0.5, 0.0, -0.5)))


def test_coherent_configurations_satisfy_definition():
    for model in (FiniteVector((0.5, 0.5)), FiniteVector((-0.5, 0.5)),
                  FiniteVector((0.25, 0.25, 0.5)), Geometric(0.5, SignPattern((-1, 1)))):
        if model.support_gcd() != 1:
            continue
        for conf in coherent_configurations(model):
            lags = (model.support() if isinstance(model, FiniteVector)
                    else range(1, 2 * model.pattern.period + 1))
            for k in lags:
                for n in range(4):
                    assert conf.value_at(n) * conf.value_at(n - k) * model.theta(k) > 0


def test_biased_model_invariants():
    b = BiasedModel(FiniteVector((0.5, -0.5)), theta0=0.5, r0=0.5)
    assert b.prob_terminal_plus() == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        BiasedModel(FiniteVector((1.0,)), theta0=0.0, r0=1.0)
    with pytest.raises(ParameterError):
        BiasedModel(FiniteVector((1.0,)), theta0=0.8, r0=0.5)


@st.composite
def finite_models(draw):
    m = draw(st.integers(1, 6))
    vals = draw(st.lists(st.floats(-1, 1, allow_nan=False), min_size=m, max_size=m))
    total = sum(abs(v) for v in vals)
    if total == 0:
        vals[0] = 1.0
        total = 1.0
    return FiniteVector(tuple(v / total for v in vals))


@given(finite_models(), st.integers(1, 12))
@settings(max_examples=200, deadline=None)
def test_partial_mass_plus_tail_is_one(model, K):
    validate(model)
    partial = sum(model.abs_theta(k) for k in range(1, K + 1))
    assert abs(partial + model.tail(K + 1) - 1.0) <= 1e-10


@given(st.floats(1.05, 4.0), st.integers(1, 200))
@settings(max_examples=80, deadline=None)
def test_tail_nonincreasing(alpha, k):
    m = PowerLaw(alpha)
    assert m.tail(k) >= m.tail(k + 1) - 1e-15


def test_tail_horizon_reports_decay():
    for m in (Geometric(0.5), PowerLaw(2.5), FiniteVector((0.5, -0.5))):
        h = m.tail_horizon(1e-6)
        assert m.tail(h) < 1e-6


@given(finite_models(), st.integers(0, 4))
@settings(max_examples=100, deadline=None)
def test_classify_zero_padding_invariance(model, pad):
    padded = FiniteVector(model.values + (0.0,) * pad)
    assert classify(model).kind == classify(padded).kind
