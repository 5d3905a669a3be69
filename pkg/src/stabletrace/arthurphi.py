"""Stable discrete-series character asymptotics at torsion and central elements.

The evaluation uses the closed Kostant-representative sum

    (-1)^{q(L)} |Omega_L| sum over w in the double Kostant set of
        sign(w) * trace(gamma; V^M with highest weight w(lam + rho) - rho)

where L and M are the real and imaginary root subsystems attached to the
requesting Levi.  The two familiar degenerations fall out: the full group
gives the plain character trace, and the split torus at a central element
gives (-1)^{q(G)} |Omega_G| times the central character.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Rat
from .reps import (
    DominanceError,
    Gsp4Parameter,
    Sl2Parameter,
    TorsionElement,
    h_packet_weights,
    highest_weight,
    trace_at_torsion,
)
from .rootdata import BasedRootDatum, LeviDescriptor, Weight, builtin, builtin_levis, kostant_set


@dataclass(frozen=True)
class PhiRequest:
    """One evaluation: group datum, Levi, highest weight, group element.

    gamma is a TorsionElement or the central marker +1/-1; the central
    exponent is the integer power by which the center acts on the
    representation of highest weight lam.
    """

    datum: BasedRootDatum
    levi: LeviDescriptor
    lam: Weight
    gamma: TorsionElement | int
    central_exponent: int


def phi(req: PhiRequest) -> Rat:
    """Value of the extended stable character combination at gamma."""
    datum = req.datum
    violation = datum.dominance_violation(req.lam)
    if violation is not None:
        raise DominanceError(f"highest weight not dominant at simple root {violation}")
    sub_l, sub_m = datum.levi_sub_data(req.levi)
    q_l = sub_l.q_value()
    omega_l = len(sub_l.weyl_group)
    rho = datum.half_sum_positive()
    shifted = req.lam + rho

    total = Fraction(0)
    for w in kostant_set(datum, req.levi):
        mu = sub_m.weight((w.act(shifted) - rho).vec)
        bad = sub_m.dominance_violation(mu)
        if bad is not None:
            raise DominanceError(
                f"Kostant-shifted weight is not dominant for the Levi subsystem "
                f"(simple root index {bad}); wrong Levi or Borel data"
            )
        tr = _trace(sub_m, mu, req.gamma, req.central_exponent)
        total += w.sign * tr
    sign = -1 if q_l % 2 else 1
    return sign * omega_l * total


def _trace(sub_m: BasedRootDatum, mu: Weight, gamma, central_exponent: int) -> Rat:
    from .reps import weyl_dim

    if isinstance(gamma, int):
        if gamma not in (1, -1):
            raise ValueError("central marker must be +1 or -1")
        # center acts by the central character; the Weyl denominator vanishes
        scalar = 1 if gamma == 1 or central_exponent % 2 == 0 else -1
        return scalar * weyl_dim(sub_m, mu)
    rebound = TorsionElement(sub_m, gamma.order, gamma.exponents)
    return Fraction(trace_at_torsion(sub_m, mu, rebound))


_CUSPIDAL_LEVIS = {
    "sl2": ("g", "a"),
    "gsp4": ("g", "m1", "m2", "a"),
    "h": ("h", "m1", "m2", "a"),
}


def phi_levi_table(group: str, p, z: int) -> dict[str, Rat]:
    """Phi at the central element z^-1 for every cuspidal Levi of the group.

    For the endoscopic group the table carries the transferred packet sum:
    the contributions of both members of the parameter pair are added.
    """
    if z not in (1, -1):
        raise ValueError("z must be the central marker +1 or -1")
    datum = builtin(group)
    levis = builtin_levis(group)
    table: dict[str, Rat] = {}
    if group == "h":
        if not isinstance(p, Gsp4Parameter):
            raise TypeError("the endoscopic table takes a Gsp4Parameter")
        lam_pair = h_packet_weights(datum, p)
        exponent = p.t
        for name in _CUSPIDAL_LEVIS[group]:
            value = Fraction(0)
            for lam in lam_pair:
                value += phi(PhiRequest(datum, levis[name], lam, z, exponent))
            table[name] = value
        return table
    if group == "sl2" and not isinstance(p, Sl2Parameter):
        raise TypeError("sl2 takes an Sl2Parameter")
    if group == "gsp4" and not isinstance(p, Gsp4Parameter):
        raise TypeError("gsp4 takes a Gsp4Parameter")
    lam, exponent = highest_weight(datum, group, p)
    for name in _CUSPIDAL_LEVIS[group]:
        table[name] = phi(PhiRequest(datum, levis[name], lam, z, exponent))
    return table
