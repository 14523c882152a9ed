"""Single-photon wave packets through resonant two- and three-level absorbers."""

from ._photonprop import (
    AbsorberSpec,
    ConfigError,
    DomainError,
    EitParams,
    NonConvergenceError,
    PhotonWaveform,
    TimeGrid,
    UnsupportedError,
    ValidityError,
    WaveformKind,
    bessel_i,
    bessel_j,
    eit_params,
    erf,
    figure_preset,
    preset_names,
    propagate,
    pulse_area,
    run_cli,
    scaled_bessel_i0,
    u_broad,
    u_eit_adiabatic,
    u_gaussian,
    u_matched,
)

__all__ = [name for name in dir() if not name.startswith("_")]
