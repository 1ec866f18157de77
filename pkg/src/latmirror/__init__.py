"""Exact lattice arithmetic for mirror pairs, with a numerical verifier.

The exact layer (`core`, `cy1`, `cy2`, `cy3`) works over `fractions.Fraction`
and never touches floats.  The numerical layer (`numeric`) checks the same
identities on flat torus models in IEEE doubles.  `manifest.run_verify` ties
the two together behind one report format; the `latmirror` console script
exposes everything on the command line.
"""

from .core import (
    GradedVector,
    LatticeError,
    RingDescriptor,
    ShapeError,
    ToddData,
    cup,
    format_rational,
    mukai_vector,
    pair_exotic,
    pair_sym,
    parse_rational,
    star,
    todd_data,
)
from .cy1 import (
    AtiyahElement,
    BundleClass1,
    CycleClass1,
    Slope,
    atiyah_tensor,
    bs_points,
    cycle_pairing,
    decompose_primitive,
    gft_class,
    intersection_count,
    mirror_cy1,
    odot,
)
from .cy2 import (
    EULER_K3,
    H_GRAM,
    GftClassK3,
    HyperbolicDecomposition,
    K3Descriptor,
    MirrorClassK3,
    bs_count_k3,
    check_main_condition,
    euler_pairing2,
    gft_class_k3,
    h0_k3,
    mirror_k3,
    mirror_pairing_k3,
    moduli_dim2,
    mukai2,
    reflect_minus2,
    verify_quantization_k3,
    walk_to_chamber,
)
from .cy3 import (
    CY3Descriptor,
    MirrorClass3,
    NonIntegralEulerWarning,
    Rank3Sublattice,
    canonical_rank3_sublattice,
    chi_bundle3,
    euler_pairing3,
    gft_s0_intersection3,
    line_bundle_ch,
    mirror_cy3,
    mirror_isometry_check3,
    mirror_pairing3,
    vdim3,
)
from .fixtures import (
    FixtureError,
    fixture_dir,
    load_cy3_fixture,
    load_fixture,
    load_k3_fixture,
    resolve_fixture,
)
from .manifest import (
    DEFAULT_MANIFEST,
    Manifest,
    ManifestError,
    parse_manifest,
    run_verify,
)
from .numeric import (
    ConsistencyError,
    ParamCurve,
    TorusModel,
    arc_curve,
    find_bs_fibres,
    holonomy_character,
    phase_map_curve,
    segment_curve,
    special_coordinates,
    theta_basis_rank,
    winding_number,
)

__version__ = "0.1.0"

__all__ = [
    "AtiyahElement",
    "BundleClass1",
    "CY3Descriptor",
    "ConsistencyError",
    "CycleClass1",
    "DEFAULT_MANIFEST",
    "EULER_K3",
    "FixtureError",
    "GftClassK3",
    "GradedVector",
    "H_GRAM",
    "HyperbolicDecomposition",
    "K3Descriptor",
    "LatticeError",
    "Manifest",
    "ManifestError",
    "MirrorClass3",
    "MirrorClassK3",
    "NonIntegralEulerWarning",
    "ParamCurve",
    "Rank3Sublattice",
    "RingDescriptor",
    "ShapeError",
    "Slope",
    "ToddData",
    "TorusModel",
    "arc_curve",
    "atiyah_tensor",
    "bs_count_k3",
    "bs_points",
    "canonical_rank3_sublattice",
    "check_main_condition",
    "chi_bundle3",
    "cup",
    "cycle_pairing",
    "decompose_primitive",
    "euler_pairing2",
    "euler_pairing3",
    "find_bs_fibres",
    "fixture_dir",
    "format_rational",
    "gft_class",
    "gft_class_k3",
    "gft_s0_intersection3",
    "h0_k3",
    "holonomy_character",
    "intersection_count",
    "line_bundle_ch",
    "load_cy3_fixture",
    "load_fixture",
    "load_k3_fixture",
    "mirror_cy1",
    "mirror_cy3",
    "mirror_isometry_check3",
    "mirror_k3",
    "mirror_pairing3",
    "mirror_pairing_k3",
    "moduli_dim2",
    "mukai2",
    "mukai_vector",
    "odot",
    "pair_exotic",
    "pair_sym",
    "parse_manifest",
    "parse_rational",
    "phase_map_curve",
    "reflect_minus2",
    "resolve_fixture",
    "run_verify",
    "segment_curve",
    "special_coordinates",
    "star",
    "theta_basis_rank",
    "todd_data",
    "vdim3",
    "verify_quantization_k3",
    "walk_to_chamber",
    "winding_number",
]
