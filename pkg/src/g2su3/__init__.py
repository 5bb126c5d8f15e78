"""Exact torsion of SU(3)- and G2-structures on frame models, with a half-flat flow."""

from .catalog import CatalogEntry, get_example
from .construct import build_circle_extension, build_cone, build_product
from .correspond import split_rho, verify_correspondence
from .exalg import Form, contract, hodge, wedge
from .flow import flow_run
from .g2 import G2Structure, G2TorsionReport, irrep_project, symbolic_verify_closed
from .g2 import torsion as g2_torsion
from .model import FrameModel, from_constants
from .ring import Laurent
from .stable import half_flat_check, stable_data
from .su3 import (SU3Structure, SU3TorsionReport, conformal_rescale, primitive_decompose, rotate_B,
                  standard_structure, type_split)
from .su3 import torsion as su3_torsion

__all__ = [
    "CatalogEntry", "Form", "FrameModel", "G2Structure", "G2TorsionReport", "Laurent", "SU3Structure",
    "SU3TorsionReport", "build_circle_extension", "build_cone", "build_product", "conformal_rescale",
    "contract", "flow_run", "from_constants", "g2_torsion", "get_example", "half_flat_check", "hodge",
    "irrep_project", "primitive_decompose", "rotate_B", "split_rho", "stable_data", "standard_structure",
    "su3_torsion", "symbolic_verify_closed", "type_split", "verify_correspondence", "wedge",
]
