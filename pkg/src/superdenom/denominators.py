"""Both sides of the denominator / superdenominator identities.

Identity kinds (d = denominator R, sd = superdenominator Ř):

* kwg-d / kwg-sd     : sum over W# with simple isotropic denominators
* princ-d / princ-sd : sum over the full Weyl group with bracket exponents
                       and the constant C = C_g / prod (ht(gamma)+1)/2
* mm-d / mm-sd       : sum over W# with the open-bracket shift in the
                       numerator and simple denominators over S
* migliore           : sum over W_0 = Z W_B' W#(B') of P(X), equal to
                       (C_g/|T|) e^rho Ř
* glkk               : the gl(k,k) lemma relating the two all-isotropic sums

All checks compare truncated series coefficient-exactly on the intersection
window; nothing is floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .weights import Weight, inner, is_isotropic, weight_sum
from .rootdata import (
    RootDatum,
    BasisOrder,
    PositiveSystem,
    EPS_BLOCK,
    DELTA_BLOCK,
    build_root_datum,
    positive_system,
)
from .weyl import (
    WeylElement,
    full_weyl,
    sharp_subgroup,
    reflection,
    enumerate_closure,
    coset_reps,
    product_set,
    eps_permutations,
    delta_permutations,
)
from .series import CharSeries, f_sum_quotient, product_expansion
from .diagrams import ArcDiagram

IDENTITY_KINDS = ("kwg-d", "kwg-sd", "princ-d", "princ-sd", "mm-d", "mm-sd", "migliore", "glkk")


def factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def c_g(datum: RootDatum) -> int:
    """|W_g / W#| in terms of family and defect (table of explicit values)."""
    d = datum.defect
    fam = datum.family
    if fam == "GL":
        return factorial(d)
    if fam == "B":
        return (2 ** d) * factorial(d)
    if fam == "C":
        return 1
    if datum.m > datum.n:
        return (2 ** d) * factorial(d)
    return (2 ** (d - 1)) * factorial(d) if d >= 1 else 1


def princ_constant(system: PositiveSystem, X: ArcDiagram) -> Fraction:
    """C = C_g / prod over gamma in S(X) of (ht(gamma)+1)/2."""
    c = Fraction(c_g(system.datum))
    for gamma in X.isotropic_set():
        c /= Fraction(system.height(gamma) + 1, 2)
    return c


def window4(system: PositiveSystem, depth: int, top: Weight | None = None) -> int:
    """Threshold of the window reaching `depth` height units below the
    leading exponent (default e^rho), in the system's expansion scale."""
    lead = system.rho if top is None else top
    return system.ht4(lead) - depth * system.unit4


def choose_expansion_system(system: PositiveSystem, exponents) -> PositiveSystem:
    """A system whose expansion functional keeps every listed exponent well
    away from zero (at least an eighth of a height unit in absolute value).

    Returns the given system unchanged when plain principal height already
    does this; otherwise scans perturbation seeds.
    """
    exponents = list(exponents)
    floor = max(1, system.unit4 // 8)
    if all(abs(system.ht4(b)) >= floor for b in exponents):
        return system
    for seed in range(1, 80):
        cand = system.with_tiebreak(seed)
        floor = max(1, cand.unit4 // 8)
        if all(abs(cand.ht4(b)) >= floor for b in exponents):
            return cand
    raise RuntimeError("no perturbation separated the denominator exponents")


def with_safe_expansion(system: PositiveSystem, compute):
    """Run compute(system); on a height-zero exponent retry with perturbed
    expansion functionals until one separates all exponents."""
    try:
        return compute(system)
    except ValueError as exc:
        if "height-zero" not in str(exc):
            raise
    for seed in range(1, 80):
        try:
            return compute(system.with_tiebreak(seed))
        except ValueError as exc:
            if "height-zero" not in str(exc):
                raise
    raise RuntimeError("no perturbation separated the denominator exponents")


# ---------------------------------------------------------------------------
# left-hand sides


def lhs(system: PositiveSystem, kind: str, threshold4: int) -> CharSeries:
    """e^rho R (kind 'd') or e^rho Ř (kind 'sd') as a truncated series."""
    s = 1 if kind == "sd" else -1
    return product_expansion(
        system,
        threshold4,
        system.rho,
        geom=[(a, s) for a in system.positive_odd],
        poly=[(a, 1) for a in system.positive_even],
    )


def erho_pair(system: PositiveSystem, alpha: Weight, depth: int) -> tuple[CharSeries, CharSeries]:
    """(e^rho R-check, e^{rho'} R-check') for the odd reflection at alpha.

    The reflected side is built directly from the root lists (alpha replaced
    by -alpha, rho shifted), expanded along the original system's functional,
    so it covers the fork reflections that leave the order-encoded family.
    The two series must be negatives of each other on the window.
    """
    from .weights import is_isotropic as _iso

    if alpha not in system.simple_roots or not _iso(alpha):
        raise ValueError("need an isotropic simple root")
    T = window4(system, depth)
    left = lhs(system, "sd", T)
    odd = [a for a in system.positive_odd if a != alpha] + [-alpha]
    right = product_expansion(
        system,
        T,
        system.rho + alpha,
        geom=[(a, 1) for a in odd],
        poly=[(a, 1) for a in system.positive_even],
    )
    return left, right


# ---------------------------------------------------------------------------
# right-hand sides


def rhs_kwg(system: PositiveSystem, S: list[Weight], kind: str, threshold4: int) -> CharSeries:
    simples = set(system.simple_roots)
    for beta in S:
        if beta not in simples:
            raise ValueError(f"{beta} is not simple")
        if not is_isotropic(beta):
            raise ValueError(f"{beta} is not isotropic")
    if len(S) != system.datum.defect:
        raise ValueError("S is not maximal isotropic")
    sharp = sharp_subgroup(system.datum)
    s = 1 if kind == "sd" else -1
    sign_kind = "sgn_prime" if kind == "sd" else "sgn"
    return f_sum_quotient(
        system, sharp, sign_kind, threshold4, system.rho, geom=[(b, s) for b in S]
    )


def rhs_princ(system: PositiveSystem, X: ArcDiagram, kind: str, threshold4: int) -> tuple[CharSeries, Fraction]:
    S = X.isotropic_set()
    W = full_weyl(system.datum)
    if kind == "sd":
        geom = [(X.bracket(g), 1) for g in S]
        series = f_sum_quotient(system, W, "sgn_prime", threshold4, system.rho, geom=geom)
    else:
        geom = [(X.bracket(g), -X.root_sign(g)) for g in S]
        series = f_sum_quotient(system, W, "sgn", threshold4, system.rho, geom=geom)
    return series, princ_constant(system, X)


def rhs_mm(system: PositiveSystem, X: ArcDiagram, kind: str, threshold4: int) -> CharSeries:
    S = X.isotropic_set()
    sharp = sharp_subgroup(system.datum)
    shift = weight_sum((X.open_bracket(g) for g in S), system.shape)
    num = system.rho + shift
    if kind == "sd":
        return f_sum_quotient(
            system, sharp, "sgn_prime", threshold4, num, geom=[(g, 1) for g in S]
        )
    pref = -1 if X.nesting_count() % 2 else 1
    return f_sum_quotient(
        system, sharp, "sgn", threshold4, num, geom=[(g, -1) for g in S], coeff=pref
    )


def _block_indices(symbols, kind: str) -> list[int]:
    return [s.idx for s in symbols if s.kind == kind]


def migliore_groups(
    system: PositiveSystem, X: ArcDiagram, bprime=None, sharp_block: str | None = None
):
    """The element sets of the master identity: W_0 = Z W_B' W#(B') and |T|.

    ``bprime`` is a set of basis symbols containing Supp(X) (default equal to
    it); ``sharp_block`` picks the component of Delta_0(B') whose Weyl group
    serves as W#(B') ("e" or "d"); by default the larger component, matching
    the choices made for the compact dual pairs (eps for B, delta for D).
    """
    datum = system.datum
    shape = datum.shape
    if bprime is None:
        bprime = X.support_symbols()
    bset = list(bprime)
    eps_idx = _block_indices(bset, "e")
    del_idx = _block_indices(bset, "d")
    eps_slots = {i - 1 for i in eps_idx}
    del_slots = {datum.m + j - 1 for j in del_idx}
    slots = eps_slots | del_slots

    def supported(a: Weight) -> bool:
        return all(c == 0 or i in slots for i, c in enumerate(a.coords2))

    sub_even = [a for a in datum.even_roots if supported(a)]
    if sharp_block is None:
        fam = datum.family
        if fam == "B":
            sharp_block = "e"
        elif fam == "D":
            sharp_block = "d" if len(eps_idx) <= len(del_idx) else "e"
        elif fam == "GL":
            sharp_block = "e" if len(eps_idx) >= len(del_idx) else "d"
        else:
            sharp_block = "e"
    w_bprime_full = enumerate_closure([reflection(a) for a in sub_even], shape)
    sharp_roots = [a for a in sub_even if any(a.eps_coords2()) == (sharp_block == "e")]
    sharp_gens = [reflection(a) for a in sharp_roots]
    w_sharp = enumerate_closure(sharp_gens, shape) if sharp_gens else [WeylElement.identity(shape)]
    perms = product_set(eps_permutations(shape, eps_idx), delta_permutations(shape, del_idx))
    H = enumerate_closure(perms + w_sharp, shape)
    t_size = len(w_bprime_full) // len(H)
    Z = coset_reps(full_weyl(datum), w_bprime_full)
    W0 = product_set(Z, H)
    return W0, t_size


def rhs_migliore(
    system: PositiveSystem,
    X: ArcDiagram,
    threshold4: int,
    bprime=None,
    sharp_block: str | None = None,
) -> tuple[CharSeries, Fraction]:
    """F-check sum over W_0 of the bracket quotient; returns the series of
    sum_w sgn'(w) w(e^rho / prod(1 - e^{-[[gamma]]})) and the expected ratio
    against e^rho Ř, namely C_g / (|T| prod (ht+1)/2)."""
    W0, t_size = migliore_groups(system, X, bprime, sharp_block)
    geom = [(X.bracket(g), 1) for g in X.isotropic_set()]
    series = f_sum_quotient(system, W0, "sgn_prime", threshold4, system.rho, geom=geom)
    ratio = Fraction(c_g(system.datum), t_size)
    for gamma in X.isotropic_set():
        ratio /= Fraction(system.height(gamma) + 1, 2)
    return series, ratio


# ---------------------------------------------------------------------------
# the gl(k,k) lemma


def glkk_sides(k: int, threshold4_units: int) -> tuple[CharSeries, CharSeries, Fraction]:
    """Both sides of the all-isotropic gl(k,k) lemma at the given depth.

    Returns (lhs_sum, rhs_series, ratio) with the claim lhs = ratio * rhs.
    """
    datum = build_root_datum("GL", k, k)
    order_pattern = "ed" * k
    from .rootdata import standard_order

    system = positive_system(datum, standard_order("GL", k, k, order_pattern))
    betas = [Weight.eps(i, (k, k)) - Weight.delta(i, (k, k)) for i in range(1, k + 1)]
    W = full_weyl(datum)
    T = -4 * threshold4_units
    zero = Weight.zero((k, k))
    left = f_sum_quotient(system, W, "sgn_prime", T, zero, geom=[(b, 1) for b in betas[1:]])
    core = f_sum_quotient(system, W, "sgn_prime", T, zero, geom=[(b, 1) for b in betas])
    total = weight_sum(betas, (k, k))
    rhs = core * CharSeries.one_minus_exp(system, total)
    return left, rhs, Fraction(1, k)


# ---------------------------------------------------------------------------
# reports


@dataclass
class IdentityReport:
    identity_kind: str
    system: str
    subset: str
    depth: int
    passed: bool
    constant: str = "1"
    first_mismatch: list | None = None
    detail: str = ""

    def to_json(self) -> dict:
        doc = {
            "identity": self.identity_kind,
            "system": self.system,
            "subset": self.subset,
            "depth": self.depth,
            "verdict": "pass" if self.passed else "fail",
            "constant": self.constant,
        }
        if self.first_mismatch is not None:
            doc["first_mismatch"] = self.first_mismatch
        if self.detail:
            doc["detail"] = self.detail
        return doc


def _report(kind, system, subset, depth, lhs_series, rhs_series, ratio) -> IdentityReport:
    bad = lhs_series.mismatches(rhs_series, ratio)
    return IdentityReport(
        identity_kind=kind,
        system=repr(system),
        subset=subset,
        depth=depth,
        passed=not bad,
        constant=str(ratio),
        first_mismatch=None if not bad else list(bad[0].coords2),
    )


def verify(
    kind: str,
    system: PositiveSystem,
    X: ArcDiagram | None = None,
    S: list[Weight] | None = None,
    depth: int = 8,
    bprime=None,
    sharp_block: str | None = None,
) -> IdentityReport:
    """Check one identity on the given system at the given window depth."""
    if kind not in IDENTITY_KINDS:
        raise ValueError(f"unknown identity kind {kind!r}")
    if kind == "glkk":
        raise ValueError("use verify_glkk for the gl(k,k) lemma")
    flavor = "sd" if kind.endswith("sd") or kind == "migliore" else "d"
    if X is not None and (kind.startswith("princ") or kind == "migliore"):
        # Weyl images of the bracket exponents may cross height zero; pick an
        # expansion functional that separates them all before computing.
        if kind.startswith("princ"):
            group = full_weyl(system.datum)
        else:
            group, _ = migliore_groups(system, X, bprime, sharp_block)
        brackets = [X.bracket(g) for g in X.isotropic_set()]
        images = [w.act(b) for w in group for b in brackets]
        system = choose_expansion_system(system, images)

    def compute(sys_: PositiveSystem) -> IdentityReport:
        T = window4(sys_, depth)
        L = lhs(sys_, flavor, T)
        if kind.startswith("kwg"):
            SS = S
            if SS is None:
                if X is None or not X.is_simple():
                    raise ValueError("kwg needs a simple-diagram isotropic set")
                SS = X.isotropic_set()
            R = rhs_kwg(sys_, SS, flavor, T)
            return _report(kind, sys_, f"S={[repr(b) for b in SS]}", depth, L, R, Fraction(1))
        if X is None:
            raise ValueError("this identity needs an arc diagram")
        label = f"arcs={list(X.arcs)}"
        if kind.startswith("princ"):
            R, C = rhs_princ(sys_, X, flavor, T)
            return _report(kind, sys_, label, depth, L, R, C)
        if kind.startswith("mm"):
            R = rhs_mm(sys_, X, flavor, T)
            return _report(kind, sys_, label, depth, L, R, Fraction(1))
        R, ratio = rhs_migliore(sys_, X, T, bprime, sharp_block)
        return _report(kind, sys_, label, depth, L, R, ratio)

    return with_safe_expansion(system, compute)


def verify_glkk(k: int, depth: int = 6) -> IdentityReport:
    left, rhs, ratio = glkk_sides(k, depth)
    bad = rhs.mismatches(left, ratio)
    return IdentityReport(
        identity_kind="glkk",
        system=f"gl({k},{k}) all-isotropic",
        subset=f"k={k}",
        depth=depth,
        passed=not bad,
        constant=str(ratio),
        first_mismatch=None if not bad else list(bad[0].coords2),
    )


# ---------------------------------------------------------------------------
# named product-group specializations (compact dual pair sums)


def seconda_sum(system: PositiveSystem, depth: int) -> tuple[CharSeries, CharSeries]:
    """B(m,n) distinguished order: e^rho Ř vs the sum over
    W(A_{n-1}) x {delta sign flips on the first n-d} x W(B_m)."""
    from .weyl import sign_flip_set, signed_group
    from .diagrams import enumerate_diagrams

    datum = system.datum
    m, n = datum.m, datum.n
    d = datum.defect
    shape = datum.shape
    X = enumerate_diagrams(system)[0]
    geom = [(X.bracket(g), 1) for g in X.isotropic_set()]
    W = product_set(
        delta_permutations(shape, list(range(1, n + 1))),
        sign_flip_set(shape, "d", list(range(1, n - d + 1))),
        signed_group(shape, "e", list(range(1, m + 1))),
    )
    T = window4(system, depth)
    rhs = f_sum_quotient(system, W, "sgn_prime", T, system.rho, geom=geom)
    return lhs(system, "sd", T), rhs


def seconda_d2_sum(system: PositiveSystem, depth: int) -> tuple[CharSeries, CharSeries]:
    """D(m,n) D2 order: e^rho Ř vs the sum over
    W(A_{m-1}) x {even eps flips on the first m-d} x W(C_n)."""
    from .weyl import sign_flip_set, signed_group
    from .diagrams import enumerate_diagrams

    datum = system.datum
    m, n = datum.m, datum.n
    d = datum.defect
    shape = datum.shape
    X = enumerate_diagrams(system)[0]
    geom = [(X.bracket(g), 1) for g in X.isotropic_set()]
    W = product_set(
        eps_permutations(shape, list(range(1, m + 1))),
        sign_flip_set(shape, "e", list(range(1, m - d + 1)), parity="even"),
        signed_group(shape, "d", list(range(1, n + 1))),
    )
    T = window4(system, depth)
    rhs = f_sum_quotient(system, W, "sgn_prime", T, system.rho, geom=geom)
    return lhs(system, "sd", T), rhs


def w_equal_w1_sums(system: PositiveSystem, depth: int) -> tuple[CharSeries, CharSeries]:
    """D(m,n) with m > n: the W-sum and the W_1-sum of the D2 identity agree."""
    from .weyl import sign_flip_set, signed_group
    from .diagrams import enumerate_diagrams

    datum = system.datum
    m, n = datum.m, datum.n
    d = datum.defect
    if m <= n:
        raise ValueError("the W = W_1 comparison needs m > n")
    shape = datum.shape
    X = enumerate_diagrams(system)[0]
    geom = [(X.bracket(g), 1) for g in X.isotropic_set()]
    T = window4(system, depth)
    W = product_set(
        eps_permutations(shape, list(range(1, m + 1))),
        sign_flip_set(shape, "e", list(range(1, m - d + 1)), parity="even"),
        signed_group(shape, "d", list(range(1, n + 1))),
    )
    sum_w = f_sum_quotient(system, W, "sgn_prime", T, system.rho, geom=geom)
    a_full = eps_permutations(shape, list(range(1, m + 1)))
    a_small = eps_permutations(shape, list(range(m - d + 1, m + 1)))
    z = coset_reps(a_full, a_small)
    s = reflection(2 * Weight.eps(m - d, shape)).compose(
        reflection(2 * Weight.eps(m - d + 1, shape))
    )
    W1 = product_set(
        z,
        sign_flip_set(shape, "e", list(range(1, m - d + 1)), parity="even"),
        [s],
        a_small,
        signed_group(shape, "d", list(range(1, n + 1))),
    )
    sum_w1 = f_sum_quotient(system, W1, "sgn_prime", T, system.rho, geom=geom)
    return sum_w, sum_w1
