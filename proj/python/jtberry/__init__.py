"""Jahn-Teller trough, Berry-phase, and vibronic spectrum toolkit."""

from ._jtberry import (
    AdiabaticFrame,
    HolonomyResult,
    JTModel,
    LoopKind,
    LoopPath,
    PatternReport,
    PerturbKind,
    PerturbedModel,
    RotorLevel,
    RotorParity,
    RotorSpectrum,
    ScanRow,
    TransportRecord,
    TroughPoint,
    TroughSpec,
    VgsdReport,
    VibronicSpectrum,
    add_field,
    add_quadratic,
    antipode,
    apes,
    berry_phase,
    berry_phase_raw,
    build_model,
    eigensystem,
    electronic_rotation,
    find_trough,
    hamiltonian,
    induced_configuration_rotation,
    low_spectrum,
    make_custom_model,
    make_loop,
    perturbed_hamiltonian,
    projector,
    robustness_scan,
    rotor_degeneracy,
    rotor_spectrum,
    subspace_holonomy,
    transport_ground,
    trough_point,
    verify_trough_spectrum,
    vgsd_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
