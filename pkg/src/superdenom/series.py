"""Sparse exact character series truncated by principal height.

A series is a finite integer-coefficient sum of exponentials e^lambda over
the weight lattice, together with a window guarantee: it agrees with the
(possibly infinite) series it represents on every weight of principal height
>= threshold, and the full series it represents has no terms of height
> ceiling.  Heights are measured by the positive system's principal grading
element and stored as exact integers at 4x scale.

Geometric factors 1/(1 - s e^{-beta}) expand toward decreasing height for
either sign of ht(beta); exponents of height zero are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .weights import Weight
from .rootdata import PositiveSystem
from .weyl import WeylElement, sgn, sgn_prime

NEG_INF = None  # threshold value meaning "exact everywhere"


class CharSeries:
    __slots__ = ("system", "terms", "threshold4", "ceiling4")

    def __init__(self, system: PositiveSystem, terms: dict[Weight, int], threshold4: int | None, ceiling4: int):
        self.system = system
        self.terms = {w: c for w, c in terms.items() if c != 0}
        self.threshold4 = threshold4
        self.ceiling4 = ceiling4
        if threshold4 is not None:
            self.terms = {w: c for w, c in self.terms.items() if system.ht4(w) >= threshold4}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(system: PositiveSystem, threshold4: int | None = NEG_INF) -> "CharSeries":
        return CharSeries(system, {}, threshold4, 0)

    @staticmethod
    def monomial(system: PositiveSystem, w: Weight, coeff: int = 1) -> "CharSeries":
        return CharSeries(system, {w: coeff}, NEG_INF, system.ht4(w))

    @staticmethod
    def one_minus_exp(system: PositiveSystem, beta: Weight, sign: int = 1) -> "CharSeries":
        """The finite factor 1 - sign * e^{-beta}."""
        terms = {Weight.zero(system.shape): 1}
        nb = -beta
        terms[nb] = terms.get(nb, 0) - sign
        ceiling = max(0, system.ht4(nb))
        return CharSeries(system, terms, NEG_INF, ceiling)

    # -- bookkeeping ---------------------------------------------------------

    def _same_space(self, other: "CharSeries") -> None:
        if self.system.shape != other.system.shape or self.system._hvals2 != other.system._hvals2:
            raise ValueError("series live over different reference systems")

    def copy_with(self, terms=None, threshold4="keep", ceiling4=None) -> "CharSeries":
        return CharSeries(
            self.system,
            self.terms if terms is None else terms,
            self.threshold4 if threshold4 == "keep" else threshold4,
            self.ceiling4 if ceiling4 is None else ceiling4,
        )

    def coeff(self, w: Weight) -> int:
        return self.terms.get(w, 0)

    def is_zero_on_window(self) -> bool:
        return not self.terms

    def support_sorted(self) -> list[Weight]:
        return sorted(self.terms, key=lambda w: (-self.system.ht4(w), w.coords2))

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "CharSeries") -> "CharSeries":
        self._same_space(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        t = _max_threshold(self.threshold4, other.threshold4)
        return CharSeries(self.system, terms, t, max(self.ceiling4, other.ceiling4))

    def __sub__(self, other: "CharSeries") -> "CharSeries":
        return self + other.scale(-1)

    def scale(self, k: int) -> "CharSeries":
        if k == 0:
            return CharSeries(self.system, {}, self.threshold4, self.ceiling4)
        return CharSeries(self.system, {w: k * c for w, c in self.terms.items()}, self.threshold4, self.ceiling4)

    def __mul__(self, other: "CharSeries") -> "CharSeries":
        """Exact convolution with the window-soundness rule: the product is
        complete above max(t_a + ceil_b, t_b + ceil_a)."""
        self._same_space(other)
        a, b = self, other
        if len(b.terms) < len(a.terms):
            a, b = b, a
        ht4 = self.system.ht4
        t = _product_threshold(a.threshold4, a.ceiling4, b.threshold4, b.ceiling4)
        out: dict[Weight, int] = {}
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                w = wa + wb
                if t is not None and ht4(w) < t:
                    continue
                out[w] = out.get(w, 0) + ca * cb
        return CharSeries(self.system, out, t, a.ceiling4 + b.ceiling4)

    def truncate(self, threshold4: int) -> "CharSeries":
        if self.threshold4 is not None and threshold4 < self.threshold4:
            raise ValueError("cannot widen the window by truncation")
        return CharSeries(self.system, self.terms, threshold4, self.ceiling4)

    # -- comparison ------------------------------------------------------------

    def window_threshold(self, other: "CharSeries") -> int | None:
        return _max_threshold(self.threshold4, other.threshold4)

    def mismatches(self, other: "CharSeries", ratio: Fraction = Fraction(1)) -> list[Weight]:
        """Weights in the common window where other != ratio * self."""
        self._same_space(other)
        t = self.window_threshold(other)
        ht4 = self.system.ht4
        bad = []
        for w in set(self.terms) | set(other.terms):
            if t is not None and ht4(w) < t:
                continue
            if Fraction(other.coeff(w)) != ratio * self.coeff(w):
                bad.append(w)
        return sorted(bad, key=lambda w: w.coords2)

    def agrees_with(self, other: "CharSeries", ratio: Fraction = Fraction(1)) -> bool:
        return not self.mismatches(other, ratio)

    def __repr__(self) -> str:
        items = self.support_sorted()[:8]
        body = " + ".join(f"{self.terms[w]}*e^({w})" for w in items)
        more = "" if len(self.terms) <= 8 else f" ... ({len(self.terms)} terms)"
        return f"CharSeries[{body}{more}; t4={self.threshold4}, c4={self.ceiling4}]"

    def to_json(self) -> dict:
        doc_terms = [
            {"coords2": list(w.coords2), "coeff": str(c)}
            for w, c in sorted(self.terms.items(), key=lambda it: it[0].coords2)
        ]
        t2 = None
        if self.threshold4 is not None:
            t2 = self.threshold4 / 2 if self.threshold4 % 2 else self.threshold4 // 2
        return {"threshold2": t2, "terms": doc_terms}


def _max_threshold(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _product_threshold(ta, ca, tb, cb) -> int | None:
    if ta is None and tb is None:
        return None
    cands = []
    if ta is not None:
        cands.append(ta + cb)
    if tb is not None:
        cands.append(tb + ca)
    return max(cands)


# ---------------------------------------------------------------------------
# geometric factors


@dataclass(frozen=True)
class GeometricFactor:
    """Denominator factor 1 - sign * e^{-exponent}."""

    exponent: Weight
    sign: int


def _geometric_terms(system: PositiveSystem, beta: Weight, s: int, threshold4: int) -> dict[Weight, int]:
    """1/(1 - s e^{-beta}) expanded toward decreasing heights, complete on
    heights >= threshold4."""
    h = system.ht4(beta)
    if h == 0:
        raise ValueError(f"cannot expand a geometric factor with height-zero exponent {beta}")
    out: dict[Weight, int] = {}
    if h > 0:
        k = 0
        while -k * h >= threshold4:
            out[(-k) * beta] = s ** k
            k += 1
    else:
        # 1/(1-x) = -x^{-1} - x^{-2} - ... in the region |x| > 1
        k = 1
        while k * h >= threshold4:
            out[k * beta] = -(s ** k)
            k += 1
    return out


def expand_factor(system: PositiveSystem, factor: GeometricFactor, threshold4: int) -> CharSeries:
    """Public expansion of 1/(1 - s e^{-beta}) for beta of positive height."""
    if system.ht4(factor.exponent) <= 0:
        raise ValueError("geometric factor exponent must have positive principal height")
    terms = _geometric_terms(system, factor.exponent, factor.sign, threshold4)
    return CharSeries(system, terms, threshold4, 0)


def product_expansion(
    system: PositiveSystem,
    threshold4: int,
    leading: Weight,
    coeff: int = 1,
    geom: Iterable[tuple[Weight, int]] = (),
    poly: Iterable[tuple[Weight, int]] = (),
) -> CharSeries:
    """coeff * e^leading * prod 1/(1-s e^{-beta}) * prod (1-s e^{-beta}),
    complete on the window {ht >= threshold4}."""
    ht4 = system.ht4
    geom = list(geom)
    poly = list(poly)
    g_ceil = [min(0, ht4(b)) for b, _ in geom]
    p_ceil = [max(0, -ht4(b)) for b, _ in poly]
    total_ceiling = ht4(leading) + sum(g_ceil) + sum(p_ceil)
    if total_ceiling < threshold4:
        return CharSeries.zero(system, threshold4)

    factors: list[tuple[dict[Weight, int], int]] = []
    other = sum(g_ceil) + sum(p_ceil)
    for (b, s), c in zip(geom, g_ceil):
        ft = threshold4 - (ht4(leading) + other - c)
        factors.append((_geometric_terms(system, b, s, ft), c))
    for (b, s), c in zip(poly, p_ceil):
        terms = {Weight.zero(system.shape): 1}
        nb = -b
        terms[nb] = terms.get(nb, 0) - s
        factors.append((terms, c))

    acc: dict[Weight, int] = {leading: coeff}
    remaining = sum(c for _, c in factors)
    for fterms, c in factors:
        remaining -= c
        floor = threshold4 - remaining
        nxt: dict[Weight, int] = {}
        for wa, ca in acc.items():
            for wb, cb in fterms.items():
                w = wa + wb
                if ht4(w) < floor:
                    continue
                nxt[w] = nxt.get(w, 0) + ca * cb
        acc = nxt
    return CharSeries(system, acc, threshold4, total_ceiling)


# ---------------------------------------------------------------------------
# Weyl action and signed sums


def weyl_act(w: WeylElement, a: CharSeries) -> CharSeries:
    """Termwise image of the series under w.

    The returned window is conservative: it is computed from the height drift
    of the stored support, which is sound whenever the full support drifts no
    more than the stored one (true for the Weyl-stable series this is used
    on).  Identity checks never rely on this operation.
    """
    ht4 = a.system.ht4
    terms = {w.act(x): c for x, c in a.terms.items()}
    if a.threshold4 is None:
        ceiling = max((ht4(x) for x in terms), default=0)
        return CharSeries(a.system, terms, NEG_INF, ceiling)
    drift = max((ht4(w.act(x)) - ht4(x) for x in a.terms), default=0)
    drift = max(drift, 0)
    return CharSeries(a.system, terms, a.threshold4 + drift, a.ceiling4 + drift)


def f_sum(
    U: Iterable[WeylElement],
    body: Callable[[WeylElement], CharSeries],
    sign_kind: str,
    family: str,
) -> CharSeries:
    """F_U(Y) = sum over w of sgn(w) w(Y), or sgn'(w) for sign_kind 'sgn_prime'.

    The body callable receives w and must return the series of w(Y) directly.
    """
    U = list(U)
    if not U:
        raise ValueError("empty summation set")
    acc = None
    for w in U:
        s = sgn(w) if sign_kind == "sgn" else sgn_prime(w, family)
        piece = body(w).scale(s)
        acc = piece if acc is None else acc + piece
    return acc


def f_sum_quotient(
    system: PositiveSystem,
    U: Iterable[WeylElement],
    sign_kind: str,
    threshold4: int,
    leading: Weight,
    geom: Iterable[tuple[Weight, int]] = (),
    poly: Iterable[tuple[Weight, int]] = (),
    coeff: int = 1,
) -> CharSeries:
    """Signed sum over U of w(coeff e^leading / prod(1-s e^{-beta}) * prod(1-s e^{-b'}))."""
    geom = list(geom)
    poly = list(poly)
    fam = system.datum.family
    acc = CharSeries.zero(system, threshold4)
    for w in U:
        s = sgn(w) if sign_kind == "sgn" else sgn_prime(w, fam)
        piece = product_expansion(
            system,
            threshold4,
            w.act(leading),
            coeff=s * coeff,
            geom=[(w.act(b), sg) for b, sg in geom],
            poly=[(w.act(b), sg) for b, sg in poly],
        )
        acc = acc + piece
    return acc


# ---------------------------------------------------------------------------
# finite Weyl characters by exact division


def weyl_numerator(system: PositiveSystem, elements: list[WeylElement], lam: Weight) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for w in elements:
        x = w.act(lam)
        out[x] = out.get(x, 0) + sgn(w)
    return {k: v for k, v in out.items() if v}


def weyl_character(
    system: PositiveSystem,
    elements: list[WeylElement],
    rho_block: Weight,
    lam: Weight,
) -> CharSeries:
    """Exact finite character by the Weyl formula for a block subsystem.

    Computes sum_w sgn(w) e^{w(lam+rho)} / sum_w sgn(w) e^{w(rho)} by sparse
    division; the result is 0 when lam+rho is singular and picks up the sign
    of the sorting element when lam+rho is irregularly ordered.
    """
    ht4 = system.ht4
    numer = weyl_numerator(system, elements, lam + rho_block)
    denom = weyl_numerator(system, elements, rho_block)
    key = lambda w: (ht4(w), w.coords2)
    if not denom:
        raise ValueError("singular block rho: not a valid block system")
    dmax = max(denom, key=key)
    if denom[dmax] != 1:
        raise AssertionError("block rho is not regular dominant for the block")
    quot: dict[Weight, int] = {}
    steps = 0
    while numer:
        steps += 1
        if steps > 200000:
            raise RuntimeError("character division did not terminate")
        nmax = max(numer, key=key)
        c = numer[nmax]
        shift = nmax - dmax
        quot[shift] = quot.get(shift, 0) + c
        for w, cw in denom.items():
            x = w + shift
            numer[x] = numer.get(x, 0) - c * cw
            if numer[x] == 0:
                del numer[x]
    ceiling = max((ht4(w) for w in quot), default=0)
    return CharSeries(system, quot, NEG_INF, ceiling)
