from fractions import Fraction

import pytest

from superdenom.weights import Weight, is_isotropic
from superdenom.rootdata import (
    build_root_datum,
    standard_order,
    positive_system,
    all_basis_orders,
    distinguished_order,
)
from superdenom.diagrams import ArcDiagram, enumerate_diagrams
from superdenom.series import CharSeries, product_expansion
from superdenom.denominators import (
    lhs,
    rhs_kwg,
    rhs_princ,
    rhs_mm,
    rhs_migliore,
    verify,
    verify_glkk,
    erho_pair,
    window4,
    c_g,
    princ_constant,
    seconda_sum,
    seconda_d2_sum,
    w_equal_w1_sums,
    migliore_groups,
)


def _lhs_reversed(system, kind, threshold4):
    """Independent route: multiply the factors in the opposite order."""
    s = 1 if kind == "sd" else -1
    return product_expansion(
        system,
        threshold4,
        system.rho,
        geom=[(a, s) for a in reversed(system.positive_odd)],
        poly=[(a, 1) for a in reversed(system.positive_even)],
    )


def test_lhs_gl11_closed_forms():
    system = positive_system(build_root_datum("GL", 1, 1), standard_order("GL", 1, 1, "ed"))
    sh = (1, 1)
    alpha = Weight.eps(1, sh) - Weight.delta(1, sh)
    T = window4(system, 4)
    sd = lhs(system, "sd", T)
    # e^rho R-check = e^{-alpha/2} (1 + e^{-alpha} + ...) with rho = -alpha/2
    rho = system.rho
    assert rho == (-1) * alpha.half()
    assert sd.terms == {rho - k * alpha: 1 for k in range(5)}
    d = lhs(system, "d", T)
    assert d.terms == {rho - k * alpha: (-1) ** k for k in range(5)}


def test_lhs_matches_reversed_factor_order():
    for fam, m, n, depth in [("B", 1, 1, 6), ("GL", 2, 1, 6), ("D", 2, 1, 5), ("C", 2, 1, 5)]:
        datum = build_root_datum(fam, m, n)
        for order in all_basis_orders(fam, m, n):
            system = positive_system(datum, order)
            T = window4(system, depth)
            a = lhs(system, "sd", T)
            b = _lhs_reversed(system, "sd", T)
            assert a.terms == b.terms


def test_lhs_b11_term_count_frozen():
    # value computed by the independent reversed-order expansion and frozen;
    # the support is two geometric rays through e^rho at this rank
    system = positive_system(build_root_datum("B", 1, 1), distinguished_order("B", 1, 1))
    T = window4(system, 6)
    ser = lhs(system, "sd", T)
    assert ser.terms == _lhs_reversed(system, "sd", T).terms
    assert len(ser.terms) == 9


def test_cg_table():
    expected = {
        ("GL", 3, 2): 2,
        ("B", 2, 2): 8,
        ("B", 1, 2): 2,
        ("D", 3, 2): 8,
        ("D", 2, 2): 4,
        ("D", 2, 3): 4,
        ("C", 3, 1): 1,
    }
    for (fam, m, n), val in expected.items():
        assert c_g(build_root_datum(fam, m, n)) == val


def test_princ_constant_examples():
    system = positive_system(build_root_datum("B", 1, 1), distinguished_order("B", 1, 1))
    X = enumerate_diagrams(system)[0]
    assert princ_constant(system, X) == 2  # C_g = 2, single simple arc
    system = positive_system(build_root_datum("B", 2, 2), distinguished_order("B", 2, 2))
    X = enumerate_diagrams(system)[0]
    assert princ_constant(system, X) == Fraction(8, 2)  # heights 1, 3


@pytest.mark.parametrize(
    "fam,m,n",
    [("GL", 1, 1), ("GL", 2, 1), ("GL", 2, 2), ("B", 1, 1), ("C", 2, 1), ("D", 2, 1)],
)
def test_identities_small_grid(fam, m, n):
    datum = build_root_datum(fam, m, n)
    for order in all_basis_orders(fam, m, n):
        system = positive_system(datum, order)
        for X in enumerate_diagrams(system):
            for kind in ("princ-sd", "princ-d", "mm-sd", "mm-d"):
                assert verify(kind, system, X=X, depth=6).passed, (kind, order, X.arcs)
            if X.is_simple():
                for kind in ("kwg-sd", "kwg-d"):
                    assert verify(kind, system, X=X, depth=6).passed, (kind, order, X.arcs)


def test_kwg_rejects_bad_isotropic_sets():
    system = positive_system(build_root_datum("GL", 2, 1), standard_order("GL", 2, 1, "ede"))
    sh = (2, 1)
    with pytest.raises(ValueError):
        rhs_kwg(system, [Weight.eps(1, sh) - Weight.eps(2, sh)], "sd", window4(system, 4))
    with pytest.raises(ValueError):
        rhs_kwg(system, [], "sd", window4(system, 4))  # not maximal


def test_wrong_constant_fails_with_mismatch_below_rho():
    system = positive_system(build_root_datum("B", 1, 1), distinguished_order("B", 1, 1))
    X = enumerate_diagrams(system)[0]
    T = window4(system, 6)
    L = lhs(system, "sd", T)
    R, C = rhs_princ(system, X, "sd", T)
    assert not L.mismatches(R, C)
    bad = L.mismatches(R, C + 1)
    assert bad
    worst = min(bad, key=lambda w_: w_.coords2)
    assert system.ht4(worst) <= system.ht4(system.rho)


def test_identity_report_shape():
    system = positive_system(build_root_datum("GL", 1, 1), standard_order("GL", 1, 1, "ed"))
    X = enumerate_diagrams(system)[0]
    rep = verify("princ-sd", system, X=X, depth=5)
    doc = rep.to_json()
    assert doc["verdict"] == "pass" and doc["identity"] == "princ-sd"
    assert doc["depth"] == 5


def test_erho_sign_flip_all_small_systems():
    grid = (
        [("GL", m, n) for m in range(1, 4) for n in range(1, 4) if m + n <= 4]
        + [("B", 1, 1), ("B", 1, 2), ("B", 2, 1)]
        + [("D", 2, 1), ("D", 1, 2)]
        + [("C", 2, 1), ("C", 3, 1)]
    )
    for fam, m, n in grid:
        datum = build_root_datum(fam, m, n)
        for order in all_basis_orders(fam, m, n):
            system = positive_system(datum, order)
            for alpha in system.simple_roots:
                if not is_isotropic(alpha):
                    continue
                L, R = erho_pair(system, alpha, 5)
                assert L.agrees_with(R.scale(-1)), (fam, m, n, order, alpha)


def test_interval_reflection_invariance_of_p_sum():
    # F-check_W(P(X)) is unchanged by an interval reflection (full Weyl group)
    from superdenom.weyl import full_weyl
    from superdenom.series import f_sum_quotient
    from superdenom.diagrams import interval_reflect
    from superdenom.denominators import choose_expansion_system

    for pattern, arcs in [("eded", [(0, 3), (1, 2)]), ("dede", [(0, 3), (1, 2)])]:
        datum = build_root_datum("GL", 2, 2)
        base = positive_system(datum, standard_order("GL", 2, 2, pattern))
        X = ArcDiagram(base.order, arcs)
        Y = interval_reflect(X, 0)
        W = full_weyl(datum)
        exps = [w.act(X.bracket(g)) for w in W for g in X.isotropic_set()]
        exps += [w.act(Y.bracket(g)) for w in W for g in Y.isotropic_set()]
        system = choose_expansion_system(base, exps)
        T = window4(system, 7)

        def p_sum(D):
            scale = 1
            for g in D.isotropic_set():
                scale *= int(system.height(g) + 1) // 2
            return f_sum_quotient(
                system, W, "sgn_prime", T, system.rho,
                geom=[(D.bracket(g), 1) for g in D.isotropic_set()],
            ).scale(scale)

        assert p_sum(X).agrees_with(p_sum(Y)), pattern


@pytest.mark.parametrize("k", [2, 3])
def test_glkk_lemma(k):
    rep = verify_glkk(k, depth=6)
    assert rep.passed
    assert rep.constant == str(Fraction(1, k))


def test_seconda_specializations():
    for fam, m, n in [("B", 1, 2), ("B", 2, 1)]:
        system = positive_system(build_root_datum(fam, m, n), distinguished_order(fam, m, n))
        L, R = seconda_sum(system, 7)
        assert L.agrees_with(R)
    for m, n in [(1, 2), (2, 2)]:
        system = positive_system(build_root_datum("D", m, n), distinguished_order("D", m, n, "D2"))
        L, R = seconda_d2_sum(system, 7)
        assert L.agrees_with(R)


def test_w_equal_w1():
    system = positive_system(build_root_datum("D", 2, 1), distinguished_order("D", 2, 1, "D2"))
    A, B = w_equal_w1_sums(system, 7)
    assert A.agrees_with(B)


def test_migliore_with_support_bprime():
    for fam, m, n, var in [("B", 1, 2, ""), ("B", 2, 1, ""), ("D", 2, 2, "D2")]:
        system = positive_system(build_root_datum(fam, m, n), distinguished_order(fam, m, n, var))
        X = enumerate_diagrams(system)[0]
        rep = verify("migliore", system, X=X, depth=7)
        assert rep.passed, (fam, m, n)


def test_migliore_t_size_by_enumeration():
    # B' = Supp(X) inside B(1,2): the reduced system is B(1,1), whose Weyl
    # group has order 4 while the permutation-sharp product has order 2
    system = positive_system(build_root_datum("B", 1, 2), distinguished_order("B", 1, 2))
    X = enumerate_diagrams(system)[0]
    _, t = migliore_groups(system, X)
    assert t == 2
