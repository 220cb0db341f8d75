"""
purederive
==========

Exact pure homological algebra for finitely generated modules over the
integers and over ``Z/m``.

Modules and maps
    ``BaseRing``, ``FgModule``, ``ModuleMap``, ``cyclic``, ``free``,
    ``hom_module``, ``tensor_module``, ``canonical_form``
Complexes
    ``BoundedComplex``, ``ChainMap``, ``stalk``, ``cone``, ``shift``,
    ``total_hom``, ``homology_at``, ``null_homotopy``, ``truncate``
Purity
    ``is_pure_sequence``, ``purity_profile``, ``is_pure_quasi_iso``,
    ``purity_class``
Resolutions
    ``pure_projective_resolution``, ``pure_injective_resolution``,
    ``split_off_tail``, ``roof_normalize``
Dimensions
    ``pext``, ``ppd``, ``pid``, ``criteria_report``, ``pgldim_probe``
Towers
    ``Tower``, ``colim_presentation``, ``hocolim_resolution``,
    ``pext1_colim``, ``cocycle_decide``

Every computation is exact; no floating point is involved anywhere.
"""

from .complexes import (
    BoundedComplex,
    ChainMap,
    Homotopy,
    cone,
    homology,
    homology_at,
    is_contractible,
    null_homotopy,
    shift,
    stalk,
    total_hom,
    truncate,
)
from .dimension import classical_ext_Z, criteria_report, pext, pgldim_probe, pid, ppd
from .errors import *  # noqa: F401,F403
from .modules import (
    FgModule,
    ModuleMap,
    ShortExactSequence,
    canonical_form,
    cyclic,
    direct_sum,
    free,
    hom_module,
    map_subquotients,
    purity_class,
    split_analysis,
    tensor_module,
    zero_module,
)
from .purity import (
    NEG_INF,
    POS_INF,
    ExtendedInt,
    is_pure_quasi_iso,
    is_pure_sequence,
    purity_profile,
    range_cross_check,
    test_family,
)
from .resolve import (
    Roof,
    certify,
    decompose_tail,
    lift_along_resolutions,
    pure_injective_resolution,
    pure_projective_resolution,
    roof_normalize,
    split_off_tail,
)
from .ring import BaseRing, smith_normal_form, solve_linear
from .tower import (
    Cocycle,
    Tower,
    cocycle_decide,
    colim_presentation,
    constant_tower,
    hocolim_resolution,
    holim_injective_resolution,
    pext1_colim,
    pruefer_tower,
    rationals_tower,
)
from .workspace import emit, load_workspace, loads_workspace

ZZ = BaseRing.integers()

__version__ = "0.1.0"
