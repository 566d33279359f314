from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecketransfer.exactalg import (FactoredRatFn, Factor, Monomial, SignedCycloProduct,
                                    compare_up_to_unit, cyclo_present, substitute)
from hecketransfer.mu import (ISO_GROUP, HeckeSpec, build_mu, classical_spec, classify_params,
                              d_classical, d_exceptional, d_target, d_zero, exceptional_spec,
                              iso_apply, kappa_eps, mu_classical, mu_classical_from_spec,
                              mu_general)
from hecketransfer.roots import RootSystemSpec, weyl_images


def var(i, n):
    return Monomial.var(i, n)


def invert_v(f: FactoredRatFn) -> FactoredRatFn:
    """f(v^-1); the constructor re-orients the flipped bricks."""
    facs = {Factor((-fac.vexp,) + fac.sexps, fac.phase): e for fac, e in f.factors.items()}
    lead = Monomial(f.lead.zeta, -f.lead.vexp, f.lead.sexps)
    return FactoredRatFn(f.nvars, f.coeff, lead, facs)


# -- parameter classes ---------------------------------------------------------

def test_classify_half_integers():
    p = classify_params(F(1, 2), F(3, 2))
    assert p.cls == "II" and p.bfrak == 1


def test_classify_quarter_base_case():
    p = classify_params(F(1, 4), F(1, 4))
    assert p.cls == "VI"
    assert p.delta == (0, 0) and p.kappa == (0, 0) and p.eps == (1, 1)


def test_classify_seven_nine_quarters():
    p = classify_params(F(7, 4), F(9, 4))
    assert (p.kappa_minus, p.eps_minus, p.delta_minus) == (2, 0, 0)
    assert (p.kappa_plus, p.eps_plus, p.delta_plus) == (2, 1, 0)
    assert p.cls == "VI" and p.bfrak == 2 and p.extra_special


def test_classify_integer_classes():
    assert classify_params(0, 1).cls == "III"
    assert classify_params(1, 3).cls == "IV"
    assert classify_params(0, F(1, 2)).cls == "I"
    assert classify_params(F(3, 4), F(1, 4)).cls == "V"


def test_classify_rejects_bad_parameters():
    with pytest.raises(ValueError):
        classify_params(F(1, 3), 1)
    with pytest.raises(ValueError):
        classify_params(F(1, 2), F(1, 4))


@given(st.integers(0, 40), st.sampled_from([0, 1]))
def test_kappa_eps_decomposition(k, eps):
    m = k + F(2 * eps - 1, 4)
    if m <= 0:
        return
    assert kappa_eps(m) == (k, eps, k % 2)
    assert kappa_eps(-m) == (k, eps, k % 2)


def test_iso_examples():
    p = classify_params(F(1, 4), F(3, 4))
    swapped = iso_apply(p, "eta")
    assert (swapped.mminus, swapped.mplus) == (F(3, 4), F(1, 4))
    assert iso_apply(iso_apply(p, "eta+"), "eta+") == p
    orbit = {(iso_apply(classify_params(F(1, 2), F(3, 2)), g).mminus,
              iso_apply(classify_params(F(1, 2), F(3, 2)), g).mplus) for g in ISO_GROUP}
    assert len(orbit) <= 8


def test_iso_group_closed():
    p = classify_params(F(1, 4), F(7, 4))
    images = {(iso_apply(p, g).mminus, iso_apply(p, g).mplus) for g in ISO_GROUP}
    for g in ISO_GROUP:
        for h in ("eta", "eta+"):
            x = iso_apply(iso_apply(p, g), h)
            assert (x.mminus, x.mplus) in images


# -- normalization factors -------------------------------------------------------

def test_d_zero_base_case_is_one():
    assert d_zero(F(1, 4), F(1, 4), 2) == FactoredRatFn.one()
    p = classify_params(F(1, 4), F(1, 4))
    r = 3
    want = FactoredRatFn.from_factors(r, [(Monomial(0, 4, (0,) * r), -r)])  # (1 - q^2)^-r ~ (v^2 - v^-2)^-r
    assert compare_up_to_unit(d_classical(p, r), want) is not None


def test_d_target():
    got = d_target(1, 1, 3)
    want = FactoredRatFn.from_factors(3, [(Monomial(0, 2, (0, 0, 0)), -3), (Monomial(12, 2, (0, 0, 0)), -1)])
    assert got == want
    assert d_target(0, 1, 2) == FactoredRatFn.from_factors(2, [(Monomial(0, 2, (0, 0)), -2)])


def test_d_exceptional():
    g2 = SignedCycloProduct.make(1, 0, {1: -2, 3: -1})  # q^2 / ((q - 1)(q^3 - 1))
    f4 = SignedCycloProduct.make(1, 0, {1: -4, 2: -2})  # q^-3 (q - 1)^-2 (q^2 - 1)^-2
    def numeric(f):
        return substitute(f, [Monomial()] * f.nvars).value
    assert cyclo_present(numeric(d_exceptional("G2"))).equal_up_to_unit(g2)
    assert cyclo_present(numeric(d_exceptional("F4"))).equal_up_to_unit(f4)


@pytest.mark.parametrize("d", [
    d_classical(classify_params(F(1, 4), F(7, 4)), 2),
    d_classical(classify_params(F(3, 4), F(9, 4)), 0),
    d_target(1, 1, 2),
    d_exceptional("G2"),
    d_exceptional("F4"),
])
def test_d_is_palindromic(d):
    assert compare_up_to_unit(d, invert_v(d)) is not None


# -- mu functions -------------------------------------------------------------------

def test_type_a_block_with_zero_parameters_is_trivial():
    spec = classical_spec(1, 0, 0)
    assert mu_classical_from_spec(spec) == FactoredRatFn.one(1)


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_zero_parameters_leave_only_type_d(rank):
    b = mu_classical_from_spec(classical_spec(rank, 0, 0))
    d = build_mu(HeckeSpec(RootSystemSpec("D", rank), {"pair": (F(1), F(0))}))
    assert b == d
    assert sum(abs(e) for fac, e in b.factors.items() if sum(map(abs, fac.sexps)) == 1) == 0


def test_rank_zero_mu_is_d():
    p = classify_params(F(3, 4), F(9, 4))
    assert mu_classical(p, 0) == d_classical(p, 0)
    spec = exceptional_spec("G2", 3, 1)
    empty = HeckeSpec(RootSystemSpec("B", 0), {}, 1, FactoredRatFn.constant(5))
    assert build_mu(empty) == FactoredRatFn.constant(5)
    assert spec.d is not None


def test_type_d_rank_two_at_q_q():
    f = build_mu(HeckeSpec(RootSystemSpec("D", 2), {"pair": (F(1), F(0))}))
    res = substitute(f, [Monomial.q(1), Monomial.q(1)])
    assert res.dropped_numerator == 2


def test_g2_brick_count():
    # per positive root: (1 - a^2)(1 - a^-2) over four bricks; with m- = 0 the two
    # (1 + a^+-1) bricks cancel, leaving (1 - a)^2 / ((1 - q^-m a)(1 - q^-m a^-1))
    mu = mu_general(replace_d(exceptional_spec("G2", 3, 1), None))
    den = sum(-e for e in mu.factors.values() if e < 0)
    num = sum(e for e in mu.factors.values() if e > 0)
    assert den == 6 * 2
    assert num == 6 * 2


def replace_d(spec, d):
    return HeckeSpec(spec.roots, spec.params, spec.base, d, spec.label)


def test_f4_parameters():
    spec = exceptional_spec("F4", 2, 1)
    assert spec.params["long"] == (2, 0) and spec.params["short"] == (1, 0)


def test_minus_parameter_only_on_single_roots():
    with pytest.raises(ValueError):
        HeckeSpec(RootSystemSpec("B", 2), {"pair": (F(1), F(1)), "single": (F(1), F(0))})


quarter_or_half = st.one_of(
    st.integers(0, 6).map(lambda k: F(k, 2)),
    st.integers(0, 6).map(lambda k: k + F(1, 4)),
    st.integers(0, 6).map(lambda k: k + F(3, 4)),
)


@given(st.integers(1, 3), quarter_or_half, quarter_or_half)
@settings(max_examples=40, deadline=None)
def test_general_and_rewritten_forms_agree(rank, mm, mp):
    spec = classical_spec(rank, mm, mp, 2)
    assert compare_up_to_unit(mu_general(spec), mu_classical_from_spec(spec)) is not None


@given(st.integers(1, 3), st.integers(0, 6), st.integers(0, 6), st.data())
@settings(max_examples=30, deadline=None)
def test_mu_weyl_invariant(rank, a, b, data):
    spec = classical_spec(rank, F(a, 2), F(b, 2), 1, d_target(1, 1, rank))
    mu = build_mu(spec)
    gens = tuple(var(i, rank) for i in range(rank))
    images = list(weyl_images(gens, sample=4, seed=data.draw(st.integers(0, 1000))))
    for img in images:
        res = compare_up_to_unit(substitute(mu, img).value, mu)
        assert res is not None and res[0] == 1


@pytest.mark.parametrize("mm,mp", [(F(1, 4), F(3, 4)), (F(1, 2), F(3, 2)), (0, 2), (F(5, 4), F(7, 4))])
def test_swap_symmetry(mm, mp):
    # exchanging m- and m+ corresponds to t -> -t
    rank = 2
    a = mu_classical_from_spec(classical_spec(rank, mm, mp, 2))
    b = mu_classical_from_spec(classical_spec(rank, mp, mm, 2))
    neg = [Monomial(12, 0, tuple(int(i == j) for j in range(rank))) for i in range(rank)]
    assert compare_up_to_unit(substitute(b, neg).value, a) is not None


@pytest.mark.parametrize("mm,mp", [(F(1, 4), F(3, 4)), (F(1, 2), F(3, 2)), (1, 2)])
def test_negating_plus_parameter_fixes_mu(mm, mp):
    a = mu_classical_from_spec(classical_spec(3, mm, mp, 2))
    b = mu_classical_from_spec(classical_spec(3, mm, -F(mp), 2))
    assert a == b
