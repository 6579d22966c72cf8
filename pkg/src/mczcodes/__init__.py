"""Addressable transversal multi-control-Z gates on punctured evaluation codes."""

from .codes import (
    LinearCode,
    contains,
    dual,
    is_invariant_under,
    is_transitive,
    min_distance,
    mult_downgrade_check,
    mult_property_check,
    reed_solomon,
    schur_power,
    twist,
)
from .css import CssCode, StandardForm, build_css, css_distance, logical_basis, standard_form
from .family import (
    BoundReport,
    FamilyInstance,
    bound_report,
    classical_bounds,
    depth_bound,
    grs_build,
    preset,
    quantum_bounds,
    validate,
)
from .gates import (
    LogicalGate,
    ModulationSpec,
    PhysicalGate,
    corollary_sum_check,
    logical_phase,
    modulation_build,
    physical_layer,
    physical_phase,
    sparse_apply,
    verify_main_theorem,
)
from .gf import FieldElem, FieldSpec, arith, enumerate_elements, field_create, frobenius, trace
from .scheduler import GateSchedule, compile_circuit, schedule_depth, sigma_lookup

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
