"""Exact-arithmetic central and elliptic terms of stable trace sums."""

from .exactnum import CycElt, Rat, bernoulli, cyc_reduce_to_int, rat_arith
from .rootdata import (
    BasedRootDatum,
    LeviDescriptor,
    Weight,
    WeylElement,
    builtin,
    builtin_levis,
    half_sum_positive,
    inner,
    kostant_set,
    q_value,
    weyl_group,
)
from .reps import (
    Gsp4Parameter,
    Sl2Parameter,
    TorsionElement,
    highest_weight_from_parameter,
    trace_at_torsion,
    weyl_dim,
)
from .arthurphi import PhiRequest, phi, phi_levi_table
from .arithvol import GroupProfile, chi_K, chi_alg_chevalley, chi_torus, profile
from .kottwitz import (
    OrbitalValue,
    TermReport,
    gsp4_central_endoscopic,
    gsp4_central_stable,
    sl2_elliptic_orbital,
    sl2_st_total,
    st_central_term,
    verify_theorem1,
    wakatsuki_h1,
)

__version__ = "0.1.0"
