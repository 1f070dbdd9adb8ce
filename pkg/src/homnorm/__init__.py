"""Minimal-mass homology representatives over Z, Q and Z/nZ.

Weighted finite simplicial complexes, exact class norms per coefficient
ring, calibration certificates, canonical mod-n lifts, and an experiment
harness for norm-coincidence thresholds, minimizer-set bijections,
asymptotic ratios and Lavrentiev weight sweeps.
"""

from .complexes import (Chain, Cochain, ComplexFormatError, NotACycleError,
                        WeightedComplex, complex_to_json, dump_complex,
                        lift_chain, load_complex, mass, reduce_chain)
from .hasse import (BijectionReport, EnumerationInexactError, FedererRow,
                    GapRow, ScanRow, bijection_check, empirical_threshold,
                    federer_sequence, gap_sweep, scan_moduli)
from .homology import (ClassCoords, HomologyDecomposition, InfeasibleClassError,
                       ModDecomposition, TorsionFactor, class_of_cycle,
                       homology_decomposition, in_reduction_image,
                       kernel_witness, reduce_class)
from .intlinalg import (IntMatrix, ShapeMismatchError, SNFResult, kernel_basis,
                        smith_normal_form, solve_linear)
from .optimize import (LiftReport, OptReport, comass, lift_minimizer, min_int,
                       min_mod, min_real, minimize, verify_certificate)
from .rings import (INT, RAT, RingSpec, canonical_lift, mod_inverse, mod_ring,
                    norm, ring_from_tag)

__all__ = [
    "Chain", "Cochain", "ComplexFormatError", "NotACycleError",
    "WeightedComplex", "complex_to_json", "dump_complex", "lift_chain",
    "load_complex", "mass", "reduce_chain",
    "BijectionReport", "EnumerationInexactError", "FedererRow", "GapRow",
    "ScanRow", "bijection_check", "empirical_threshold", "federer_sequence",
    "gap_sweep", "scan_moduli",
    "ClassCoords", "HomologyDecomposition", "InfeasibleClassError",
    "ModDecomposition", "TorsionFactor", "class_of_cycle",
    "homology_decomposition", "in_reduction_image", "kernel_witness",
    "reduce_class",
    "IntMatrix", "ShapeMismatchError", "SNFResult", "kernel_basis",
    "smith_normal_form", "solve_linear",
    "LiftReport", "OptReport", "comass", "lift_minimizer", "min_int",
    "min_mod", "min_real", "minimize", "verify_certificate",
    "INT", "RAT", "RingSpec", "canonical_lift", "mod_inverse", "mod_ring",
    "norm", "ring_from_tag",
]
