"""Fourier-Laguerre analysis on the Laguerre hypergroup.

The heavy lifting lives in the compiled `_lhk` module; this package re-exports
the public surface and adds a small JSON convenience wrapper for the
verification suites.
"""

import json as _json

from _lhk import (  # noqa: F401
    Atom,
    PhysicalGrid,
    SpectralGrid,
    __version__,
    apply_multiplier,
    ball_volume,
    character,
    character_dlambda,
    dual_quasinorm,
    forward,
    forward_at,
    homogeneous_norm,
    inverse,
    laguerre_at_zero,
    laguerre_fn,
    laguerre_poly,
    make_atom,
    physical_grid,
    plancherel_defect,
    sample_profile,
    spectral_grid,
    verify,
)


def verify_reports(which, config=None):
    """Run a verification suite and return the reports as parsed dicts."""
    cfg = "" if config is None else _json.dumps(config)
    return [_json.loads(text) for text in verify(which, cfg)]
