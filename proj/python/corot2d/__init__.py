"""Pseudo-spectral solver for the 2-D corotational viscoelastic system."""

from ._corot2d import (
    ConfigError,
    Config,
    DimensionError,
    Grid,
    InitSpec,
    Regime,
    State,
    Trajectory,
    __version__,
    appendix_monitor,
    brezis_gallouet_ratio,
    corotational,
    dual_norm,
    galerkin,
    inequality_lab,
    mms,
    orthogonality_residual,
    read_snapshot,
    run,
    step,
    tendency,
    theorem_bounds,
    write_snapshot,
)


def run_text(text, **overrides):
    """Parse a config given as text and run it; overrides use config-file keys."""
    cfg = Config(text, {k: str(v) for k, v in overrides.items()})
    return run(cfg)
