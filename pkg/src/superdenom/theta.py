"""Theta correspondence tables and branching checks for compact dual pairs.

Four pairs are covered, each attached to a distinguished positive system:

* B-pair  (O(2m+1), Sp(2n,R))   from B(m,n), order d_1 > ... > e_m
* D1-pair (O(2m),   Sp(2n,R))   from D(m,n), order d_1 > ... > e_m
* D2-pair (Sp(n),   SO*(2m))    from D(m,n), order e_1 > ... > d_n
* GL-pair (U(n),    U(p,q))     from gl(m,n), order e..e d..d e..e

Each pair enumerates its Theta table (compact highest weight, sign label,
lowest weight of the irreducible highest-weight module on the noncompact
side), produces exact finite characters for the compact side and truncated
characters for the noncompact side, and checks the branching identity

    ch M = sum over entries of (compact character) x (L^2 character)

coefficient-exactly on a window.  The unitary-side characters come in two
independent routes: the sign-character bookkeeping sums over the flip groups,
and the Enright-style sums over minimal coset representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .weights import Weight, inner, weight_sum
from .rootdata import (
    build_root_datum,
    distinguished_order,
    positive_system,
    PositiveSystem,
)
from .weyl import (
    WeylElement,
    reflection,
    enumerate_closure,
    eps_permutations,
    delta_permutations,
    signed_group,
    sign_flip_set,
    coset_reps,
    product_set,
    sgn,
)
from .series import CharSeries, weyl_character, product_expansion, f_sum_quotient
from .denominators import IdentityReport, window4


# ---------------------------------------------------------------------------
# partitions


def partitions_at_most(parts: int, size: int) -> list[tuple[int, ...]]:
    """All partitions with at most `parts` parts and |a| = size, padded."""
    if parts == 0:
        return [()] if size == 0 else []
    out = []

    def rec(prefix, remaining, maxpart):
        if len(prefix) == parts:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for p in range(min(maxpart, remaining), -1, -1):
            rec(prefix + [p], remaining - p, p)

    rec([], size, size)
    return out


def exact_parts(a: tuple[int, ...]) -> int:
    return sum(1 for x in a if x > 0)


# ---------------------------------------------------------------------------
# block data


@dataclass
class Block:
    """A sub-root-system with its Weyl group, used for finite characters."""

    positive: list[Weight]
    rho: Weight
    elements: list[WeylElement]

    def character(self, system: PositiveSystem, lam: Weight) -> CharSeries:
        return weyl_character(system, self.elements, self.rho, lam)


def _half_sum(system: PositiveSystem, roots) -> Weight:
    return weight_sum(roots, system.shape).half()


def _sort_desc_with_sign(vals: list[Fraction]) -> tuple[list[Fraction], int] | None:
    """Sort descending; return sign of the permutation, or None if tied."""
    if len(set(vals)) != len(vals):
        return None
    idx = sorted(range(len(vals)), key=lambda i: -vals[i])
    # count inversions of idx
    s = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                s = -s
    return [vals[i] for i in idx], s


@dataclass
class ThetaEntry:
    pair: str
    partition: tuple
    sign: str  # "+", "-", or "none"
    compact_weight: Weight
    l2_lowest: Weight

    def to_json(self) -> dict:
        part = self.partition
        nested = len(part) == 2 and isinstance(part[0], tuple)
        doc = {
            "pair": self.pair,
            "partition": [list(part[0]), list(part[1])] if nested else list(part),
            "compact_weight": self.compact_weight.to_json(),
            "sign": self.sign,
            "l2_lowest": self.l2_lowest.to_json(),
        }
        return doc


@dataclass
class EnrightData:
    lam: Weight
    group: list[WeylElement]
    roots: list[Weight]
    min_reps: list[WeylElement]
    lengths: dict


# ---------------------------------------------------------------------------
# the pairs


class DualPair:
    """Shared machinery; concrete pairs fill in the block structure."""

    tag = ""

    # -- interface pieces provided by subclasses ---------------------------

    def mu(self, a) -> Weight:
        raise NotImplementedError

    def compact_hw(self, a) -> Weight:
        raise NotImplementedError

    def entries(self, bound: int) -> list[ThetaEntry]:
        raise NotImplementedError

    def flip_group(self) -> list[WeylElement]:
        raise NotImplementedError

    # -- common ------------------------------------------------------------

    def oscillator_character(self, depth: int) -> CharSeries:
        sys_ = self.system
        T = window4(sys_, depth, top=-sys_.rho1)
        return product_expansion(
            sys_, T, -sys_.rho1, geom=[(a, 1) for a in sys_.positive_odd]
        )

    def sigma_set(self, bound: int) -> list[ThetaEntry]:
        return self.entries(bound)

    def _sorted_in_block(self, x: Weight):
        """Dominant representative w.r.t. the compact Levi block and the sign
        of the sorting permutation; None when singular."""
        raise NotImplementedError

    def v2_character(self, lam: Weight, threshold4: int) -> CharSeries:
        """Parabolic Verma character for a Levi-dominant highest weight."""
        sys_ = self.system
        fin = self.levi_block.character(sys_, lam)
        tail = product_expansion(
            sys_,
            threshold4 - fin.ceiling4,
            Weight.zero(sys_.shape),
            geom=[(b, 1) for b in self.nilradical],
        )
        return (fin * tail).truncate(threshold4)

    def l2_summands(self, a) -> list[tuple[int, Weight, str]]:
        """(coefficient, Levi-dominant weight of V^2, bucket) triples from the
        flip-group sum; bucket '+' feeds L^2(mu), '-' feeds L^2(nu)."""
        raise NotImplementedError

    def l2_character(self, entry: ThetaEntry, depth_or_threshold, depth: bool = True) -> CharSeries:
        sys_ = self.system
        T = (
            window4(sys_, depth_or_threshold, top=-sys_.rho1)
            if depth
            else depth_or_threshold
        )
        want = "+" if entry.sign in ("+", "none") else "-"
        acc = CharSeries.zero(sys_, T)
        key = entry.partition
        for coeff, lam, bucket in self.l2_summands(key):
            if bucket != want:
                continue
            acc = acc + self.v2_character(lam, T).scale(coeff)
        return acc

    # -- Enright route -------------------------------------------------------

    def enright(self, entry: ThetaEntry) -> EnrightData:
        sys_ = self.system
        lam0 = self.enright_lambda0(entry)
        gens = []
        s2_roots = self.s2_block.positive + [-b for b in self.s2_block.positive]
        for alpha in self.enright_candidates():
            pairing = 2 * inner(lam0, alpha) / inner(alpha, alpha)
            if not (pairing.denominator == 1 and pairing > 0):
                continue
            ok = True
            for beta in s2_roots:
                if inner(lam0, beta) == 0 and inner(alpha, beta) != 0:
                    ok = False
                    break
            if ok:
                gens.append(reflection(alpha))
        group = (
            enumerate_closure(gens, sys_.shape)
            if gens
            else [WeylElement.identity(sys_.shape)]
        )
        gset = set(group)
        roots = [a for a in s2_roots if reflection(a) in gset]
        pos = [a for a in roots if a in set(self.s2_block.positive)]
        lengths = {
            w: sum(1 for a in pos if w.act(a) not in set(pos)) for w in group
        }
        compact = [a for a in pos if a in set(self.levi_root_set)]
        cgens = [reflection(a) for a in compact]
        csub = (
            enumerate_closure(cgens, sys_.shape)
            if cgens
            else [WeylElement.identity(sys_.shape)]
        )
        cosets: dict[tuple, WeylElement] = {}
        for w in group:
            key = tuple(sorted((h.compose(w)).sort_key() for h in csub))
            if key not in cosets or lengths[w] < lengths[cosets[key]]:
                cosets[key] = w
        reps = sorted(cosets.values(), key=lambda w: (lengths[w], w.sort_key()))
        return EnrightData(lam0, group, roots, reps, lengths)

    def enright_character(self, entry: ThetaEntry, depth: int) -> CharSeries:
        sys_ = self.system
        T = window4(sys_, depth, top=-sys_.rho1)
        data = self.enright(entry)
        acc = CharSeries.zero(sys_, T)
        for w in data.min_reps:
            res = self._sorted_in_block(w.act(data.lam))
            if res is None:
                raise AssertionError("minimal representative hit a singular weight")
            dom, _ = res
            sign = -1 if data.lengths[w] % 2 else 1
            acc = acc + self.v2_character(dom - self.s2_block.rho, T).scale(sign)
        return acc

    # -- duality -------------------------------------------------------------

    def assembled_character(self, depth: int) -> CharSeries:
        sys_ = self.system
        T = window4(sys_, depth, top=-sys_.rho1)
        acc = CharSeries.zero(sys_, T)
        for entry in self.sigma_set(depth):
            fin = self.compact_character(entry)
            l2 = self.l2_character(entry, T - fin.ceiling4, depth=False)
            acc = acc + (fin * l2).truncate(T)
        return acc

    def verify_duality(self, depth: int) -> IdentityReport:
        osc = self.oscillator_character(depth)
        total = self.assembled_character(depth)
        bad = osc.mismatches(total)
        return IdentityReport(
            identity_kind=f"theta-{self.tag}",
            system=repr(self.system),
            subset="full table",
            depth=depth,
            passed=not bad,
            first_mismatch=None if not bad else list(bad[0].coords2),
        )


def _delta_line(shape, coeffs) -> Weight:
    m, n = shape
    acc = Weight.zero(shape)
    for j, c in coeffs.items():
        acc = acc + c * Weight.delta(j, shape)
    return acc


# ---------------------------------------------------------------------------
# B-pair


class BPair(DualPair):
    """(O(2m+1), Sp(2n,R)) from B(m,n) with the distinguished order."""

    def __init__(self, m: int, n: int):
        self.tag = "B"
        self.m, self.n = m, n
        self.d = min(m, n)
        datum = build_root_datum("B", m, n)
        self.system = positive_system(datum, distinguished_order("B", m, n))
        sys_ = self.system
        sh = sys_.shape
        pos0 = set(sys_.positive_even)
        c_pos = [a for a in pos0 if not any(a.eps_coords2())]
        a_pos = [a for a in c_pos if sum(a.delta_coords2()) == 0]
        b_pos = [a for a in pos0 if any(a.eps_coords2())]
        self.s2_block = Block(c_pos, _half_sum(sys_, c_pos), signed_group(sh, "d", list(range(1, n + 1))))
        self.levi_block = Block(a_pos, _half_sum(sys_, a_pos), delta_permutations(sh, list(range(1, n + 1))))
        self.levi_root_set = a_pos
        self.nilradical = [a for a in c_pos if a not in set(a_pos)]
        self.compact_block = Block(b_pos, _half_sum(sys_, b_pos), signed_group(sh, "e", list(range(1, m + 1))))

    # weights ---------------------------------------------------------------

    def mu(self, a) -> Weight:
        sh = self.system.shape
        return _delta_line(sh, {self.n - self.d + r: -a[self.d - r] for r in range(1, self.d + 1)})

    def nu(self, a) -> Weight:
        sh = self.system.shape
        j = exact_parts(a)
        coeffs = {r: Fraction(-1) for r in range(self.n - self.d - self.m + j, self.n - j + 1)}
        for r in range(self.n - j + 1, self.n + 1):
            coeffs[r] = coeffs.get(r, 0) - a[self.n - r]
        return _delta_line(sh, {k: int(v) for k, v in coeffs.items()})

    def compact_hw(self, a) -> Weight:
        sh = self.system.shape
        acc = Weight.zero(sh)
        for r, x in enumerate(a, start=1):
            if x:
                acc = acc + x * Weight.eps(r, sh)
        return acc

    def in_extra_family(self, a) -> bool:
        """Membership in the extra index family P of the second sign character."""
        j = exact_parts(a)
        return self.d == self.m and j >= max(0, self.m + 1 - (self.n - self.d))

    def entries(self, bound: int) -> list[ThetaEntry]:
        out = []
        rho1 = self.system.rho1
        for size in range(0, bound + 1):
            for a in partitions_at_most(self.d, size):
                out.append(
                    ThetaEntry(self.tag, a, "+", self.compact_hw(a), -rho1 + self.mu(a))
                )
                if self.in_extra_family(a):
                    out.append(
                        ThetaEntry(self.tag, a, "-", self.compact_hw(a), -rho1 + self.nu(a))
                    )
        return out

    def flip_group(self) -> list[WeylElement]:
        return sign_flip_set(self.system.shape, "d", list(range(1, self.n - self.d + 1)))

    def _sorted_in_block(self, x: Weight):
        vals = [x.delta_coord(j) for j in range(1, self.n + 1)]
        res = _sort_desc_with_sign(vals)
        if res is None:
            return None
        svals, sign = res
        sh = self.system.shape
        out = Weight(
            list(x.eps_coords2()) + [int(2 * v) for v in svals], sh
        )
        return out, sign

    def l2_summands(self, a):
        lam0 = -self.system.rho1 + self.mu(a) + self.s2_block.rho
        out = []
        for w in self.flip_group():
            flips = w.del_signs.count(-1)
            x = w.act(lam0)
            res = self._sorted_in_block(x)
            if res is None:
                continue
            dom, c_w = res
            bucket = "+" if flips % 2 == 0 else "-"
            out.append((c_w, dom - self.s2_block.rho, bucket))
        return out

    def compact_character(self, entry: ThetaEntry) -> CharSeries:
        return self.compact_block.character(self.system, entry.compact_weight)

    def enright_lambda0(self, entry: ThetaEntry) -> Weight:
        return entry.l2_lowest + self.s2_block.rho

    def enright_candidates(self):
        sh = self.system.shape
        return [
            Weight.delta(i, sh) + Weight.delta(j, sh)
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
        ]


# ---------------------------------------------------------------------------
# D2-pair


class D2Pair(DualPair):
    """(Sp(n), SO*(2m)) from D(m,n) with the order e_1 > ... > d_n.

    The primed variant carries -eps_m in the basis; its table is the
    s_{eps_m}-image of the unprimed one and is verified natively against its
    own oscillator character.
    """

    def __init__(self, m: int, n: int, primed: bool = False):
        self.tag = "D2'" if primed else "D2"
        self.m, self.n = m, n
        self.d = min(m, n)
        self.primed = primed
        datum = build_root_datum("D", m, n)
        self.system = positive_system(
            datum, distinguished_order("D", m, n, "D2'" if primed else "D2")
        )
        sys_ = self.system
        sh = sys_.shape
        self.flip = reflection(2 * Weight.eps(m, sh))  # s_{eps_m}
        pos0 = set(sys_.positive_even)
        d_pos = [a for a in pos0 if any(a.eps_coords2())]
        a_pos = [a for a in d_pos if sum(self._tw(a).eps_coords2()) == 0]
        c_pos = [a for a in pos0 if not any(a.eps_coords2())]
        self.s2_block = Block(
            d_pos, _half_sum(sys_, d_pos), signed_group(sh, "e", list(range(1, m + 1)), even_signs_only=True)
        )
        self.levi_block = Block(a_pos, _half_sum(sys_, a_pos), self._levi_elements())
        self.levi_root_set = a_pos
        self.nilradical = [a for a in d_pos if a not in set(a_pos)]
        self.compact_block = Block(
            c_pos, _half_sum(sys_, c_pos), signed_group(sh, "d", list(range(1, n + 1)))
        )

    def _levi_elements(self):
        """Permutations of the eps coordinates twisted by the basis sign."""
        sh = self.system.shape
        if not self.primed:
            return eps_permutations(sh, list(range(1, self.m + 1)))
        flip = reflection(2 * Weight.eps(self.m, sh))
        plain = eps_permutations(sh, list(range(1, self.m + 1)))
        return sorted(
            (flip.compose(w).compose(flip) for w in plain), key=WeylElement.sort_key
        )

    def _tw(self, w: Weight) -> Weight:
        return self.flip.act(w) if self.primed else w

    def mu(self, a) -> Weight:
        sh = self.system.shape
        acc = Weight.zero(sh)
        for r in range(1, self.d + 1):
            acc = acc - a[self.d - r] * Weight.eps(self.m - self.d + r, sh)
        return self._tw(acc)

    def compact_hw(self, a) -> Weight:
        sh = self.system.shape
        acc = Weight.zero(sh)
        for r, x in enumerate(a, start=1):
            if x:
                acc = acc + x * Weight.delta(r, sh)
        return acc

    def entries(self, bound: int) -> list[ThetaEntry]:
        out = []
        rho1 = self.system.rho1
        for size in range(0, bound + 1):
            for a in partitions_at_most(self.d, size):
                out.append(
                    ThetaEntry(self.tag, a, "none", self.compact_hw(a), -rho1 + self.mu(a))
                )
        return out

    def flip_group(self) -> list[WeylElement]:
        base = sign_flip_set(
            self.system.shape, "e", list(range(1, self.m - self.d + 1)), parity="even"
        )
        if not self.primed:
            return base
        return [self.flip.compose(w).compose(self.flip) for w in base]

    def _sorted_in_block(self, x: Weight):
        y = self._tw(x)
        vals = [y.eps_coord(i) for i in range(1, self.m + 1)]
        res = _sort_desc_with_sign(vals)
        if res is None:
            return None
        svals, sign = res
        sh = self.system.shape
        out = Weight([int(2 * v) for v in svals] + list(y.delta_coords2()), sh)
        return self._tw(out), sign

    def l2_summands(self, a):
        lam0 = -self.system.rho1 + self.mu(a) + self.s2_block.rho
        out = []
        for w in self.flip_group():
            x = w.act(lam0)
            res = self._sorted_in_block(x)
            if res is None:
                continue
            dom, c_w = res
            out.append((c_w * sgn(w), dom - self.s2_block.rho, "+"))
        return out

    def compact_character(self, entry: ThetaEntry) -> CharSeries:
        return self.compact_block.character(self.system, entry.compact_weight)

    def enright_lambda0(self, entry: ThetaEntry) -> Weight:
        return entry.l2_lowest + self.s2_block.rho

    def enright_candidates(self):
        sh = self.system.shape
        cands = [
            Weight.eps(i, sh) + Weight.eps(j, sh)
            for i in range(1, self.m + 1)
            for j in range(i + 1, self.m + 1)
        ]
        return [self._tw(c) for c in cands]


# ---------------------------------------------------------------------------
# D1-pair


class D1Pair(DualPair):
    """(O(2m), Sp(2n,R)) from D(m,n) with the order d_1 > ... > e_m.

    Entries carry the F^+/F^- labels of the disconnected O(2m); the torus
    part of the branching uses F_D and F_D^+, the x-twisted part uses the
    Kostant quotient over W(C_{m-1}).
    """

    def __init__(self, m: int, n: int):
        if m < 2:
            raise ValueError("the O(2m) side needs m >= 2; m = 1 degenerates to a torus")
        self.tag = "D1"
        self.m, self.n = m, n
        self.d = min(m, n)
        datum = build_root_datum("D", m, n)
        self.system = positive_system(datum, distinguished_order("D", m, n, "D1"))
        sys_ = self.system
        sh = sys_.shape
        pos0 = set(sys_.positive_even)
        c_pos = [a for a in pos0 if not any(a.eps_coords2())]
        a_pos = [a for a in c_pos if sum(a.delta_coords2()) == 0]
        d_pos = [a for a in pos0 if any(a.eps_coords2())]
        self.s2_block = Block(c_pos, _half_sum(sys_, c_pos), signed_group(sh, "d", list(range(1, n + 1))))
        self.levi_block = Block(a_pos, _half_sum(sys_, a_pos), delta_permutations(sh, list(range(1, n + 1))))
        self.levi_root_set = a_pos
        self.nilradical = [a for a in c_pos if a not in set(a_pos)]
        self.compact_block = Block(
            d_pos, _half_sum(sys_, d_pos), signed_group(sh, "e", list(range(1, m + 1)), even_signs_only=True)
        )
        # C_{m-1} block on eps_1..eps_{m-1} for the Kostant x-characters
        self.x_block_pos = self._cm1_positive()
        self.x_elements = signed_group(sh, "e", list(range(1, m)))

    def _cm1_positive(self):
        sh = self.system.shape
        out = []
        for i in range(1, self.m):
            out.append(2 * Weight.eps(i, sh))
            for j in range(i + 1, self.m):
                out.append(Weight.eps(i, sh) - Weight.eps(j, sh))
                out.append(Weight.eps(i, sh) + Weight.eps(j, sh))
        return out

    def mu(self, a) -> Weight:
        sh = self.system.shape
        return _delta_line(sh, {self.n - self.d + r: -a[self.d - r] for r in range(1, self.d + 1)})

    def nu(self, a) -> Weight:
        sh = self.system.shape
        j = exact_parts(a)
        coeffs = {r: Fraction(-1) for r in range(self.n - self.d - self.m + j, self.n - j + 1)}
        for r in range(self.n - j + 1, self.n + 1):
            coeffs[r] = coeffs.get(r, 0) - a[self.n - r]
        return _delta_line(sh, {k: int(v) for k, v in coeffs.items()})

    def compact_hw(self, a) -> Weight:
        sh = self.system.shape
        acc = Weight.zero(sh)
        for r, x in enumerate(a, start=1):
            if x:
                acc = acc + x * Weight.eps(r, sh)
        return acc

    def a_m(self, a) -> int:
        return a[self.m - 1] if self.m <= len(a) else 0

    def in_extra_family(self, a) -> bool:
        j = exact_parts(a)
        return self.d == self.m and j >= max(0, self.m + 1 - (self.n - self.d))

    def entries(self, bound: int) -> list[ThetaEntry]:
        out = []
        rho1 = self.system.rho1
        for size in range(0, bound + 1):
            for a in partitions_at_most(self.d, size):
                out.append(
                    ThetaEntry(self.tag, a, "+", self.compact_hw(a), -rho1 + self.mu(a))
                )
                if self.in_extra_family(a):
                    out.append(
                        ThetaEntry(self.tag, a, "-", self.compact_hw(a), -rho1 + self.nu(a))
                    )
        return out

    def flip_group(self) -> list[WeylElement]:
        return sign_flip_set(self.system.shape, "d", list(range(1, self.n - self.d + 1)))

    def _sorted_in_block(self, x: Weight):
        vals = [x.delta_coord(j) for j in range(1, self.n + 1)]
        res = _sort_desc_with_sign(vals)
        if res is None:
            return None
        svals, sign = res
        sh = self.system.shape
        out = Weight(list(x.eps_coords2()) + [int(2 * v) for v in svals], sh)
        return out, sign

    def l2_summands(self, a):
        lam0 = -self.system.rho1 + self.mu(a) + self.s2_block.rho
        plus = self.a_m(a) > 0
        out = []
        for w in self.flip_group():
            flips = w.del_signs.count(-1)
            x = w.act(lam0)
            res = self._sorted_in_block(x)
            if res is None:
                continue
            dom, c_w = res
            lamv = dom - self.s2_block.rho
            if plus:
                out.append((c_w * sgn(w), lamv, "+"))
            elif flips % 2 == 0:
                out.append((c_w, lamv, "+"))
            else:
                out.append((-c_w, lamv, "-"))
        return out

    # compact characters -----------------------------------------------------

    def compact_character(self, entry: ThetaEntry) -> CharSeries:
        hw = entry.compact_weight
        base = self.compact_block.character(self.system, hw)
        if entry.sign == "+" and self.a_m(entry.partition) > 0:
            sh = self.system.shape
            flipped = reflection(2 * Weight.eps(self.m, sh)).act(hw)
            base = base + self.compact_block.character(self.system, flipped)
        return base

    def x_character(self, entry: ThetaEntry) -> CharSeries:
        """Kostant's character of F^{+-}(hw) on the x-component (a_m = 0)."""
        if self.a_m(entry.partition) > 0:
            return CharSeries.zero(self.system)
        blk = Block(self.x_block_pos, _half_sum(self.system, self.x_block_pos), self.x_elements)
        ch = blk.character(self.system, entry.compact_weight)
        return ch if entry.sign == "+" else ch.scale(-1)

    def oscillator_x_character(self, depth: int) -> CharSeries:
        """Trace of x t on the oscillator module: only the eps_m-paired
        monomials survive, pairing delta_i +- eps_m into 2 delta_i."""
        sys_ = self.system
        sh = sys_.shape
        T = window4(sys_, depth, top=-sys_.rho1)
        geom = []
        for i in range(1, self.n + 1):
            for j in range(1, self.m):
                geom.append((Weight.delta(i, sh) - Weight.eps(j, sh), 1))
                geom.append((Weight.delta(i, sh) + Weight.eps(j, sh), 1))
            geom.append((2 * Weight.delta(i, sh), 1))
        return product_expansion(sys_, T, -sys_.rho1, geom=geom)

    def assembled_x_character(self, depth: int) -> CharSeries:
        sys_ = self.system
        T = window4(sys_, depth, top=-sys_.rho1)
        acc = CharSeries.zero(sys_, T)
        for entry in self.sigma_set(depth):
            if self.a_m(entry.partition) > 0:
                continue
            xc = self.x_character(entry)
            if xc.is_zero_on_window():
                continue
            l2 = self.l2_character(entry, T - xc.ceiling4, depth=False)
            acc = acc + (xc * l2).truncate(T)
        return acc

    def d2_twin_sum(self, depth: int) -> CharSeries:
        """The x-twisted oscillator character reproduced from the D(n, m-1)
        superdenominator structure: the bracket sum over
        W(A_{n-1}) {even delta flips on the first n-d1} W(C_{m-1})."""
        sys_ = self.system
        sh = sys_.shape
        m, n = self.m, self.n
        d1 = min(n, m - 1)
        rho_hat = Weight.zero(sh)
        for i in range(1, n + 1):
            rho_hat = rho_hat + (n - (m - 1) - i) * Weight.delta(i, sh)
        for i in range(1, m):
            rho_hat = rho_hat + (m - i) * Weight.eps(i, sh)
        brackets = []
        for i in range(1, d1 + 1):
            b = Weight.zero(sh)
            for r in range(n - i + 1, n + 1):
                b = b + Weight.delta(r, sh)
            for r in range(1, i + 1):
                b = b - Weight.eps(r, sh)
            brackets.append(b)
        W = product_set(
            delta_permutations(sh, list(range(1, n + 1))),
            sign_flip_set(sh, "d", list(range(1, n - d1 + 1)), parity="even"),
            self.x_elements,
        )
        T = window4(sys_, depth, top=-sys_.rho1)
        denom_lead = self.s2_block.rho + _half_sum(sys_, self.x_block_pos)
        Tsum = T + sys_.ht4(denom_lead)
        num = f_sum_quotient(sys_, W, "sgn", Tsum, rho_hat, geom=[(b, 1) for b in brackets])
        inv = product_expansion(
            sys_, T - num.ceiling4, -denom_lead,
            geom=[(a, 1) for a in list(self.s2_block.positive) + list(self.x_block_pos)],
        )
        return (num * inv).truncate(T)

    def verify_duality(self, depth: int) -> IdentityReport:
        rep = super().verify_duality(depth)
        if not rep.passed:
            return rep
        osc_x = self.oscillator_x_character(depth)
        asm_x = self.assembled_x_character(depth)
        bad = osc_x.mismatches(asm_x)
        if bad:
            return IdentityReport(
                identity_kind="theta-D1-x",
                system=repr(self.system),
                subset="x-component",
                depth=depth,
                passed=False,
                first_mismatch=list(bad[0].coords2),
            )
        twin = self.d2_twin_sum(depth)
        bad2 = osc_x.mismatches(twin)
        if bad2:
            return IdentityReport(
                identity_kind="theta-D1-xtwin",
                system=repr(self.system),
                subset="x-component vs D(n,m-1) superdenominator",
                depth=depth,
                passed=False,
                first_mismatch=list(bad2[0].coords2),
            )
        return rep

    def enright_lambda0(self, entry: ThetaEntry) -> Weight:
        return entry.l2_lowest + self.s2_block.rho

    def enright_candidates(self):
        sh = self.system.shape
        return [
            Weight.delta(i, sh) + Weight.delta(j, sh)
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
        ]


# ---------------------------------------------------------------------------
# GL-pair


class GLPair(DualPair):
    """(U(n), U(p,q)) from gl(m,n), m = p + q, distinguished order p."""

    def __init__(self, n: int, p: int, q: int):
        self.tag = "GL"
        self.n, self.p, self.q = n, p, q
        self.m = p + q
        self.d = min(self.m, n)
        datum = build_root_datum("GL", self.m, n)
        self.system = positive_system(datum, distinguished_order("GL", self.m, n, f"p{p}"))
        sys_ = self.system
        sh = sys_.shape
        pos0 = set(sys_.positive_even)
        am_pos = [a for a in pos0 if any(a.eps_coords2())]
        c_pos = [
            a
            for a in am_pos
            if not any(a.eps_coords2()[:p]) or not any(a.eps_coords2()[p:])
        ]
        an_pos = [a for a in pos0 if not any(a.eps_coords2())]
        self.s2_block = Block(am_pos, _half_sum(sys_, am_pos), eps_permutations(sh, list(range(1, self.m + 1))))
        levi_elements = product_set(
            eps_permutations(sh, list(range(1, p + 1))),
            eps_permutations(sh, list(range(p + 1, self.m + 1))),
        )
        self.levi_block = Block(c_pos, _half_sum(sys_, c_pos), sorted(levi_elements, key=WeylElement.sort_key))
        self.levi_root_set = c_pos
        self.nilradical = [a for a in am_pos if a not in set(c_pos)]
        self.compact_block = Block(an_pos, _half_sum(sys_, an_pos), delta_permutations(sh, list(range(1, n + 1))))

    def mu(self, ab) -> Weight:
        a, b = ab
        sh = self.system.shape
        acc = Weight.zero(sh)
        for s, x in enumerate(a, start=1):
            acc = acc - x * Weight.eps(self.p - s + 1, sh)
        for t, x in enumerate(b, start=1):
            acc = acc + x * Weight.eps(self.p + t, sh)
        return acc

    def compact_hw(self, ab) -> Weight:
        a, b = ab
        sh = self.system.shape
        acc = Weight.zero(sh)
        for t, x in enumerate(a, start=1):
            acc = acc + x * Weight.delta(t, sh)
        for u, x in enumerate(b, start=1):
            acc = acc - x * Weight.delta(self.n - u + 1, sh)
        return acc

    def entries(self, bound: int) -> list[ThetaEntry]:
        out = []
        for size in range(0, bound + 1):
            for ka in range(0, min(self.p, self.d) + 1):
                for h in range(0, min(self.q, self.d - ka) + 1):
                    for sa in range(0, size + 1):
                        for a in partitions_at_most(ka, sa):
                            if exact_parts(a) != ka:
                                continue
                            for b in partitions_at_most(h, size - sa):
                                if exact_parts(b) != h:
                                    continue
                                key = (a, b)
                                out.append(
                                    ThetaEntry(
                                        self.tag,
                                        key,
                                        "none",
                                        self._compact_shift() + self.compact_hw(key),
                                        self._l2_shift() + self.mu(key),
                                    )
                                )
        return out

    def _compact_shift(self) -> Weight:
        # -(rho_1 restricted to the u(n) Cartan)
        sh = self.system.shape
        r1 = self.system.rho1
        return Weight([0] * self.m + [-c for c in r1.delta_coords2()], sh)

    def _l2_shift(self) -> Weight:
        # -(rho_1 restricted to the u(p,q) Cartan)
        sh = self.system.shape
        r1 = self.system.rho1
        return Weight([-c for c in r1.eps_coords2()] + [0] * self.n, sh)

    def flip_set(self, ab) -> list[WeylElement]:
        """Coset representatives for W_c \\ W_c W_2^{(d-h, d-k)}."""
        a, b = ab
        k, h = exact_parts(a), exact_parts(b)
        free = list(range(1, self.p - self.d + h + 1)) + list(
            range(self.p + self.d - k + 1, self.m + 1)
        )
        w2 = eps_permutations(self.system.shape, free)
        wc = self.levi_block.elements
        cosets = {}
        for g in w2:
            coset = sorted((c.compose(g) for c in wc), key=WeylElement.sort_key)
            key = tuple(x.sort_key() for x in coset)
            cosets.setdefault(key, coset[0])
        return sorted(cosets.values(), key=WeylElement.sort_key)

    def _sorted_in_block(self, x: Weight):
        vals_p = [x.eps_coord(i) for i in range(1, self.p + 1)]
        vals_q = [x.eps_coord(i) for i in range(self.p + 1, self.m + 1)]
        rp = _sort_desc_with_sign(vals_p)
        rq = _sort_desc_with_sign(vals_q)
        if rp is None or rq is None:
            return None
        sh = self.system.shape
        out = Weight(
            [int(2 * v) for v in rp[0] + rq[0]] + list(x.delta_coords2()), sh
        )
        return out, rp[1] * rq[1]

    def l2_summands(self, ab):
        lam0 = self._l2_shift() + self.mu(ab) + self.s2_block.rho
        out = []
        for w in self.flip_set(ab):
            x = w.act(lam0)
            res = self._sorted_in_block(x)
            if res is None:
                continue
            dom, c_w = res
            out.append((c_w * sgn(w), dom - self.s2_block.rho, "+"))
        return out

    def compact_character(self, entry: ThetaEntry) -> CharSeries:
        hw = entry.compact_weight
        return self.compact_block.character(self.system, hw)

    def enright_lambda0(self, entry: ThetaEntry) -> Weight:
        return entry.l2_lowest + self.s2_block.rho

    def enright_candidates(self):
        sh = self.system.shape
        return [
            Weight.eps(i, sh) - Weight.eps(j, sh)
            for i in range(1, self.p + 1)
            for j in range(self.p + 1, self.m + 1)
        ]


def make_pair(tag: str, **kw) -> DualPair:
    tag = tag.upper()
    if tag == "B":
        return BPair(kw["m"], kw["n"])
    if tag == "D1":
        return D1Pair(kw["m"], kw["n"])
    if tag == "D2":
        return D2Pair(kw["m"], kw["n"])
    if tag == "D2'":
        return D2Pair(kw["m"], kw["n"], primed=True)
    if tag == "GL":
        return GLPair(kw["n"], kw["p"], kw["q"])
    raise ValueError(f"unknown pair {tag!r}")
