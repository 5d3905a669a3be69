"""Finite-dimensional representation data.

Weyl dimension formula, exact character traces at finite-order torus
elements, weight multiplicities, and highest weights attached to elliptic
parameter data for the built-in groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import CycElt, NonIntegralError, Rat, cyc_divide, cyc_reduce_to_int
from .rootdata import BasedRootDatum, DatumError, Weight, WeylElement


class DominanceError(ValueError):
    """Highest weight fails dominance for a named simple root."""


@dataclass(frozen=True)
class TorsionElement:
    """Finite-order torus element given by character exponents.

    Represents gamma with chi(gamma) = zeta_order^{<chi, exponents>} for
    every character chi; exponents are taken mod order and must annihilate
    the datum's relation vectors mod order, so the value is well-defined.
    """

    datum: BasedRootDatum
    order: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if len(self.exponents) != self.datum.rank:
            raise DatumError("exponent arity does not match the datum rank")
        for rel in self.datum.char_relations:
            pairing = sum(int(r) * k for r, k in zip(rel, self.exponents))
            if pairing % self.order != 0:
                raise DatumError(
                    "exponents do not annihilate the relation lattice mod the order"
                )
        object.__setattr__(self, "exponents", tuple(k % self.order for k in self.exponents))

    def character_exponent(self, w: Weight) -> int:
        value = sum((c * k for c, k in zip(w.vec, self.exponents)), Fraction(0))
        if value.denominator != 1:
            raise DatumError("character exponent is not integral for this weight")
        return int(value) % self.order

    def zeta_value(self, w: Weight) -> CycElt:
        return CycElt.zeta_power(self.order, self.character_exponent(w))

    def is_central(self) -> bool:
        """True when every root takes value 1, i.e. the Weyl denominator dies."""
        return all(
            self.character_exponent(self.datum.root(i)) == 0
            for i in self.datum.positive_indices
        )

    def transformed(self, w: WeylElement) -> "TorsionElement":
        return TorsionElement(self.datum, self.order, w.coact_exponents(self.exponents))


def central_element(datum: BasedRootDatum, sign: int) -> TorsionElement:
    """The central element +1 or -1 of the group as a TorsionElement."""
    if sign == 1:
        return TorsionElement(datum, 1, (0,) * datum.rank)
    if sign == -1:
        if datum.central_exponents is None:
            raise DatumError(f"datum {datum.name!r} declares no central -1 element")
        return TorsionElement(datum, 2, datum.central_exponents)
    raise ValueError("central marker must be +1 or -1")


# built-in torsion classes of the rank-1 special linear group, by eigenvalue order
SL2_TORSION = {"gamma3": (3, (1,)), "gamma4": (4, (1,)), "gamma6": (6, (1,))}


def sl2_torsion(datum: BasedRootDatum, label: str) -> TorsionElement:
    order, exps = SL2_TORSION[label]
    return TorsionElement(datum, order, exps)


# -- parameter data --------------------------------------------------------


@dataclass(frozen=True)
class Sl2Parameter:
    """Parameter n >= 1 for the n-dimensional symmetric-power representation."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def regular(self) -> bool:
        return self.n > 1


@dataclass(frozen=True)
class Gsp4Parameter:
    """Odd weights a > b > 0 and an even twist t."""

    a: int
    b: int
    t: int = 0

    def __post_init__(self):
        if self.a % 2 == 0 or self.b % 2 == 0:
            raise ValueError("a and b must be odd")
        if not self.a > self.b > 0:
            raise ValueError("need a > b > 0")
        if self.t % 2 != 0:
            raise ValueError("t must be even")

    @property
    def regular(self) -> bool:
        return self.b >= 3 and self.a - self.b >= 4


def highest_weight_from_parameter(group: str, p) -> tuple[Weight, int]:
    """Highest weight and central-character exponent for a built-in group."""
    from .rootdata import builtin

    datum = builtin(group)
    return highest_weight(datum, group, p)


def highest_weight(datum: BasedRootDatum, group: str, p) -> tuple[Weight, int]:
    if group == "sl2":
        if not isinstance(p, Sl2Parameter):
            raise TypeError("sl2 takes an Sl2Parameter")
        lam = datum.weight((p.n - 1,))
        exponent = p.n - 1
    elif group == "gsp4":
        if not isinstance(p, Gsp4Parameter):
            raise TypeError("gsp4 takes a Gsp4Parameter")
        a, b, t = p.a, p.b, p.t
        lam = datum.weight(
            (Fraction(a + b - 4, 2), Fraction(t - b + 1, 2), Fraction(t - a + 3, 2), Fraction(0))
        )
        exponent = t
    elif group == "h":
        if not isinstance(p, Gsp4Parameter):
            raise TypeError("h takes a Gsp4Parameter")
        a, b, t = p.a, p.b, p.t
        lam = datum.weight(
            (
                Fraction(t + a - 1, 2),
                Fraction(t - a + 1, 2),
                Fraction(t + b - 1, 2),
                Fraction(t - b + 1, 2),
            )
        )
        exponent = t
    else:
        raise KeyError(f"no parameter recipe for group {group!r}")
    violation = datum.dominance_violation(lam)
    if violation is not None:
        raise DominanceError(f"parameter gives a non-dominant weight at simple root {violation}")
    return lam, exponent


def h_packet_weights(datum: BasedRootDatum, p: Gsp4Parameter) -> tuple[Weight, Weight]:
    """Both highest weights of the transferred pair on the endoscopic group.

    The second member exchanges the roles of a and b; both are dominant.
    """

    def build(a: int, b: int) -> Weight:
        t = p.t
        lam = datum.weight(
            (
                Fraction(t + a - 1, 2),
                Fraction(t - a + 1, 2),
                Fraction(t + b - 1, 2),
                Fraction(t - b + 1, 2),
            )
        )
        violation = datum.dominance_violation(lam)
        if violation is not None:
            raise DominanceError(f"non-dominant packet weight at simple root {violation}")
        return lam

    return build(p.a, p.b), build(p.b, p.a)


# -- dimension and traces ----------------------------------------------------


def weyl_dim(datum: BasedRootDatum, lam: Weight) -> Rat:
    """prod over alpha > 0 of <alpha, lam + rho> / <alpha, rho>."""
    violation = datum.dominance_violation(lam)
    if violation is not None:
        raise DominanceError(
            f"weight is not dominant: negative pairing with simple root {violation} "
            f"{tuple(map(str, datum.root(violation).vec))}"
        )
    rho = datum.half_sum_positive()
    shifted = lam + rho
    result = Fraction(1)
    for i in datum.positive_indices:
        result *= datum.root_inner(i, shifted) / datum.root_inner(i, rho)
    return result


def trace_at_torsion(datum: BasedRootDatum, lam: Weight, gamma) -> int:
    """Exact integer trace of gamma on the irreducible of highest weight lam.

    gamma is a TorsionElement or the central marker +1/-1.  Regular gamma
    goes through the Weyl character formula in Z[zeta]; singular non-central
    gamma falls back to the full weight-multiset sum.
    """
    if isinstance(gamma, int):
        gamma = central_element(datum, gamma)
    if gamma.datum is not datum:
        raise DatumError("torsion element belongs to a different datum")
    if gamma.is_central():
        return _trace_central(datum, lam, gamma)
    denom = _weyl_denominator(datum, gamma)
    if not denom.is_zero():
        num = _weyl_numerator(datum, lam, gamma)
        return cyc_reduce_to_int(cyc_divide(num, denom))
    return _trace_by_multiset(datum, lam, gamma)


def _trace_central(datum: BasedRootDatum, lam: Weight, gamma: TorsionElement) -> int:
    dim = weyl_dim(datum, lam)
    assert dim.denominator == 1
    scalar = cyc_reduce_to_int(gamma.zeta_value(lam))
    return scalar * int(dim)


def _weyl_denominator(datum: BasedRootDatum, gamma: TorsionElement) -> CycElt:
    """Product form prod over alpha > 0 of (1 - gamma^{-alpha})."""
    m = gamma.order
    out = CycElt.integer(m, 1)
    one = CycElt.integer(m, 1)
    for i in datum.positive_indices:
        e = gamma.character_exponent(datum.root(i))
        out = out * (one - CycElt.zeta_power(m, -e))
    return out


def _weyl_numerator(datum: BasedRootDatum, lam: Weight, gamma: TorsionElement) -> CycElt:
    """Sum over the Weyl group of sign(w) gamma^{w(lam + rho) - rho}."""
    m = gamma.order
    rho = datum.half_sum_positive()
    shifted = lam + rho
    total = CycElt.zero(m)
    for w in datum.weyl_group:
        mu = w.act(shifted) - rho
        term = gamma.zeta_value(mu)
        total = total + (term if w.sign == 1 else -term)
    return total


def weight_multiplicities(datum: BasedRootDatum, lam: Weight) -> dict[Weight, int]:
    """Freudenthal multiplicities of all weights of the irreducible V_lam."""
    violation = datum.dominance_violation(lam)
    if violation is not None:
        raise DominanceError(f"weight is not dominant at simple root {violation}")
    rho = datum.half_sum_positive()
    norm_bound = datum.inner(lam + rho, lam + rho)
    simples = [datum.root(i) for i in datum.simple_indices]
    positives = datum.positive_roots()

    levels: list[dict[Weight, int]] = [{lam: 1}]
    mults: dict[Weight, int] = {lam: 1}
    while True:
        frontier: set[Weight] = set()
        for mu in levels[-1]:
            for alpha in simples:
                nxt = mu - alpha
                shifted = nxt + rho
                if datum.inner(shifted, shifted) <= norm_bound:
                    frontier.add(nxt)
        if not frontier:
            break
        level: dict[Weight, int] = {}
        for mu in frontier:
            denom = norm_bound - datum.inner(mu + rho, mu + rho)
            num = Fraction(0)
            for alpha in positives:
                j = 1
                while True:
                    up = mu + j * alpha
                    m_up = mults.get(up)
                    if m_up is None:
                        # either off the support or outside the candidate cone
                        if datum.inner(up + rho, up + rho) > norm_bound:
                            break
                        j += 1
                        continue
                    num += 2 * m_up * datum.inner(up, alpha)
                    j += 1
            if denom == 0:
                assert num == 0
                continue
            value = num / denom
            assert value.denominator == 1 and value >= 0
            if value:
                level[mu] = int(value)
                mults[mu] = int(value)
        if not level:
            break
        levels.append(level)
    return mults


def _trace_by_multiset(datum: BasedRootDatum, lam: Weight, gamma: TorsionElement) -> int:
    m = gamma.order
    total = CycElt.zero(m)
    for mu, mult in weight_multiplicities(datum, lam).items():
        total = total + gamma.zeta_value(mu).scaled(mult)
    return cyc_reduce_to_int(total)
