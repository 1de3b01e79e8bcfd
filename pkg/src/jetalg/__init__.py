"""Exact symbolic computation for the vector-field Lie algebra on the
cylinder and its jet modules, with a machine-verification check catalog."""

from .apoly import APoly
from .jetlie import GL2Module, LElem, lelem_from_smash, lelem_to_smash, lift_gl2, theta, theta_inv
from .jetmod import Variant, WeightDMod, jet_act_a, jet_act_vf, jet_act_vfield, p_act
from .phirho import DegreeTooHigh, DLElem, TruncationEscape, phi, rho
from .smash import SmashElem, xk
from .vfields import NotInSubalgebra, VField, gl2_unit
from .weyl import DOp

__all__ = [
    "APoly",
    "DOp",
    "VField",
    "SmashElem",
    "xk",
    "LElem",
    "GL2Module",
    "theta",
    "theta_inv",
    "lift_gl2",
    "lelem_to_smash",
    "lelem_from_smash",
    "DLElem",
    "phi",
    "rho",
    "TruncationEscape",
    "DegreeTooHigh",
    "NotInSubalgebra",
    "gl2_unit",
    "Variant",
    "WeightDMod",
    "p_act",
    "jet_act_a",
    "jet_act_vf",
    "jet_act_vfield",
]

__version__ = "0.1.0"
