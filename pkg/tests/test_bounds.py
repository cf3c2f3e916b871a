import math

from hypothesis import given, settings, strategies as st
import pytest

from linlog import bounds as B, groups
from linlog.errors import DomainError, PreconditionError
from linlog.heights import Subspace


def single(hp=2.0, e_param=math.e, y=0, norm=1.0, D=1):
    return B.BoundInput(groups.GroupDescriptor.torus(1, y), D, 1, 0.0, (B.HeightCurve("linear", hp),),
                        (norm,), B.ArchPlace(e_param))


def u0_by_hand(hp, e_param, a, norm, D=1, c5=4.0):
    # one multiplicative factor, g = t = 1, y = 0
    L = math.log(e_param)
    lead = 1 + D / L * math.log(math.e + D / L)
    h = hp * math.floor(c5 * a)
    return a * L * lead * (1 + (D * h + e_param * a * norm) / (a * L))


@given(st.floats(0.01, 50), st.floats(1.0, 6.0), st.integers(1, 20), st.floats(0, 5))
def test_u0_single_factor(hp, log_e, a, norm):
    inp = single(hp, math.exp(log_e), norm=norm)
    assert B.eval_U0(inp, a, c5=4.0) == pytest.approx(u0_by_hand(hp, math.exp(log_e), a, norm), rel=1e-12)


@settings(max_examples=50)
@given(st.floats(0.01, 50), st.integers(1, 20), st.floats(0, 5), st.sampled_from([53, 80, 128]))
def test_interval_encloses_float(hp, a, norm, prec):
    inp = single(hp, norm=norm)
    iv = B.eval_U0(inp, a, prec=prec)
    x = B.eval_U0(inp, a)
    assert float(iv.a) * (1 - 1e-12) <= x <= float(iv.b) * (1 + 1e-12)


@given(st.floats(0.01, 20), st.integers(1, 10), st.floats(0.01, 3), st.floats(0.01, 2))
def test_u0_monotone(hp, a, norm, bump):
    base = single(hp, norm=norm)
    u = B.eval_U0(base, a)
    assert B.eval_U0(single(hp + bump, norm=norm), a) >= u
    assert B.eval_U0(single(hp, norm=norm + bump), a) >= u
    assert B.eval_U0(base, a + 1) >= u


def test_u0_requires_admissible_a():
    inp = single(D=5)
    with pytest.raises(PreconditionError):
        B.eval_U0(inp, 1)
    assert B.minimal_a_arch(5, 0.0, 1.0) == 5


def test_simple_bound_formula():
    assert B.eval_simple_bound(1, 1, math.e**2, 3.0, 1.0) == pytest.approx(-(2.0**3) * 3.0)
    with pytest.raises(DomainError):
        B.eval_simple_bound(1, 1, 2.0, 1.0, 1.0)


@pytest.mark.parametrize("C0", [2, 3, 4])
def test_parameter_scaling_with_C0(C0):
    inp = B.toric_input([2], constants=B.Constants(C0=C0))
    ps = B.choose_params(inp)
    assert ps.S0 == C0**3 * ps.a and ps.S == C0**6 * ps.a
    assert ps.T == math.floor(ps.T_tilde)


def test_conditions_hold_on_simple_torus():
    inp = B.toric_input([2], constants=B.Constants(c5=10))
    ps = B.choose_params(inp)
    conds = B.check_conditions_arch(ps, inp)
    assert B.first_failure(conds) is None, [c.to_json() for c in conds]


def test_toric_input_norms_and_t():
    inp = B.toric_input([2, -3], V=Subspace.span([[1, 1]], 2))
    assert inp.t == 1
    assert inp.u_norms[1] == pytest.approx(abs(complex(math.log(3), math.pi)))
    assert inp.W().dim == 2


def test_optimizer_beats_reference():
    res = B.optimize_e(single(100.0), 1.0)
    assert res.U0_star <= res.U0_reference * (1 + 1e-9)
    assert res.unimodal


@pytest.mark.parametrize("u_norm", [0.25, 0.5, 1.0])
def test_ultra_guard_norm_strict(u_norm):
    # at p = 2 the norm must stay strictly below r_2^2 = 1/4
    with pytest.raises((DomainError, PreconditionError)):
        B.check_ultra_guards(2, 1.5, u_norm)


def test_ultra_guard_accepts_interior():
    B.check_ultra_guards(2, 1.5, 0.125)
    with pytest.raises((DomainError, PreconditionError)):
        B.check_ultra_guards(2, 2.5, 0.125)


def test_ultra_bridge():
    factor, shape = B.ultra_bridge_factor(2, 4.0)
    assert factor == pytest.approx(1 + math.log(2) / math.log(4))
    assert shape == pytest.approx(math.log(5) / math.log(4))
