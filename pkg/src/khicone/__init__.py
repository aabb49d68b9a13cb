"""Exact computation of mapping-cone homology for knot staircase models."""

from .chain import (ConeReport, GradedMap, GradedModule, cone, octahedral_verify, rank,
                    smith_normal_form, triangle_dims_consistent)
from .hf_model import HFStaircase, conjecture16_model_check, f2_doubling_check, hfk_prime2, hfk_sharp
from .laurent import (LaurentPoly, StaircaseSpec, lspace_decompose, normalize_symmetric, parse_poly,
                      torus_knot_alexander)
from .staircase import Staircase, build_staircase, extract_d1, isharp_dim
from .torsion import (GradedDimProfile, TorsionCertificate, certify_torsion, counting_lemma_check,
                      next_to_top_verdict)

__version__ = "0.1.0"

__all__ = [
    "ConeReport", "GradedMap", "GradedModule", "cone", "octahedral_verify", "rank",
    "smith_normal_form", "triangle_dims_consistent",
    "HFStaircase", "conjecture16_model_check", "f2_doubling_check", "hfk_prime2", "hfk_sharp",
    "LaurentPoly", "StaircaseSpec", "lspace_decompose", "normalize_symmetric", "parse_poly",
    "torus_knot_alexander",
    "Staircase", "build_staircase", "extract_d1", "isharp_dim",
    "GradedDimProfile", "TorsionCertificate", "certify_torsion", "counting_lemma_check",
    "next_to_top_verdict",
]
