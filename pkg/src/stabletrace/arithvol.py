"""Arithmetic volume constants.

Euler characteristics of arithmetic groups via the Bernoulli product over
Weyl exponents, torus Euler characteristics from class and torsion counts,
and the audited per-group constant tables (Tamagawa numbers, cohomology
constants, Levi data) that the trace-formula assembly consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import Rat, bernoulli
from .rootdata import LeviDescriptor


class ChiCaseError(ValueError):
    """The requested Euler-characteristic case is not supported."""


def chi_alg_chevalley(exponents, omega_r_order: int) -> Rat:
    """(-1/2)^r / |Omega_R| times the product of B_{m_i + 1}.

    Standard Bernoulli signs (B_4 = -1/30); omega_r_order is the order of
    the real Weyl group of the relevant real form.
    """
    exps = list(exponents)
    if not exps or any(e <= 0 for e in exps):
        raise ValueError("exponents must be a nonempty list of positive integers")
    if omega_r_order <= 0:
        raise ValueError("the real Weyl group order must be positive")
    value = Fraction(-1, 2) ** len(exps) / omega_r_order
    for e in exps:
        value *= bernoulli(e + 1)
    return value


def chi_torus(double_coset_count: int, rational_torsion_in_k: int) -> Rat:
    """Class count over the torsion order of the integral points."""
    if double_coset_count <= 0 or rational_torsion_in_k <= 0:
        raise ValueError("both counts must be positive")
    return Fraction(double_coset_count, rational_torsion_in_k)


@dataclass(frozen=True)
class LeviConstants:
    """Audited constants for one cuspidal Levi subgroup."""

    descriptor: LeviDescriptor
    n_in_group: int
    tamagawa: Rat
    k_const: int
    d_const: int
    chi_k: Rat


@dataclass(frozen=True)
class GroupProfile:
    """Audited constant table for one named group.

    chi_case selects the supported Euler-characteristic derivation:
    'torus' (class/torsion counts), 'simply_connected' and 'derived_sc'
    (prefactor times a product of Chevalley-factor values), or 'audited'
    (the same shape with a hand-checked prefactor).  Anything else is out
    of computational reach here and chi_K raises.
    """

    name: str
    tamagawa: Rat
    k_const: int | None
    d_const: int
    omega_r_order: int
    weyl_order: int
    real_component_index: int
    pseudo_sign: int | None
    chi_k: Rat
    chi_case: str
    chi_prefactor: Rat | None
    chi_factors: tuple[tuple[tuple[int, ...], int], ...]
    chi_cosets: int | None
    chi_torsion: int | None
    iota_endoscopic: Rat | None
    levis: tuple[LeviConstants, ...]
    citations: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if self.d_const * self.omega_r_order != self.weyl_order:
            raise ValueError(f"{self.name}: d * |Omega_R| must equal the Weyl order")
        if chi_K(self) != self.chi_k:
            raise ValueError(f"{self.name}: derived chi_K disagrees with the stored value")
        for levi in self.levis:
            if levi.descriptor.name == "g" or levi.descriptor.name == self.name:
                if levi.chi_k != self.chi_k:
                    raise ValueError(f"{self.name}: full-group Levi chi_K mismatch")

    def levi(self, name: str) -> LeviConstants:
        for entry in self.levis:
            if entry.descriptor.name == name:
                return entry
        raise KeyError(f"group {self.name!r} has no Levi named {name!r}")


def chi_K(profile: GroupProfile) -> Rat:
    """Euler characteristic of the group at its standard integral level."""
    case = profile.chi_case
    if case == "torus":
        if profile.chi_cosets is None or profile.chi_torsion is None:
            raise ChiCaseError(f"{profile.name}: torus case needs coset and torsion counts")
        return chi_torus(profile.chi_cosets, profile.chi_torsion)
    if case in ("simply_connected", "derived_sc", "audited"):
        if profile.chi_prefactor is None or not profile.chi_factors:
            raise ChiCaseError(f"{profile.name}: case {case!r} needs a prefactor and factors")
        value = profile.chi_prefactor
        for exponents, omega_r in profile.chi_factors:
            value *= chi_alg_chevalley(exponents, omega_r)
        return value
    raise ChiCaseError(
        f"{profile.name}: chi case {case!r} requires adelic class-set input "
        "that this table does not carry"
    )


def profile_from_groupdef(gdf) -> GroupProfile:
    data = gdf.profile
    levis = []
    for name, entry in gdf.levis.items():
        levis.append(
            LeviConstants(
                descriptor=LeviDescriptor(
                    name, tuple(entry["imaginary"]), tuple(entry["real"]), entry["dim_a"]
                ),
                n_in_group=entry["n_levi"],
                tamagawa=entry["tamagawa"],
                k_const=entry["k"],
                d_const=entry["d"],
                chi_k=entry["chi_k"],
            )
        )
    return GroupProfile(
        name=gdf.name,
        tamagawa=data["tamagawa"],
        k_const=data.get("k"),
        d_const=data["d"],
        omega_r_order=data["omega_r"],
        weyl_order=data["weyl_order"],
        real_component_index=data["component_index"],
        pseudo_sign=data.get("pseudo_sign"),
        chi_k=data["chi_k"],
        chi_case=data["chi_case"],
        chi_prefactor=data.get("chi_prefactor"),
        chi_factors=tuple(gdf.chi_factors),
        chi_cosets=data.get("chi_cosets"),
        chi_torsion=data.get("chi_torsion"),
        iota_endoscopic=data.get("iota"),
        levis=tuple(levis),
        citations=tuple(gdf.citations),
    )


@lru_cache(maxsize=None)
def profile(name: str) -> GroupProfile:
    """Audited profile for a shipped group."""
    from . import groupdef

    return profile_from_groupdef(groupdef.load_group(name))


CHI_TABLE_GROUPS = ("gm", "sl2", "sp4", "gl2", "gsp4", "pgl2")
