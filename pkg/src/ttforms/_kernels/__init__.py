"""Kernel backend selection.

Two complete implementations exist: a Cython core (built at install time)
and a numpy fallback.  ``TTFORMS_KERNELS`` picks one wholesale ("compiled"
or "python"); the default "auto" routes each function to the backend that
wins on typical hardware: the compiled lattice-grid reduction beats the
vectorized one (no temporaries, real inner arithmetic), while numpy's
SIMD transcendentals win the elementwise term kernels.  Run
``benchmarks/bench_kernels.py`` to see the comparison on your machine.
"""

from __future__ import annotations

import os

from . import fallback as _fallback

try:
    from . import _core as _compiled
except ImportError:
    _compiled = None

_choice = os.environ.get("TTFORMS_KERNELS", "auto").lower()

if _choice == "python" or _compiled is None:
    BACKEND = "python"
    _elementwise, _fused = _fallback, _fallback
elif _choice == "compiled":
    BACKEND = "compiled"
    _elementwise, _fused = _compiled, _compiled
else:
    BACKEND = "auto(compiled)"
    _elementwise, _fused = _fallback, _compiled

deformed_holo_terms = _elementwise.deformed_holo_terms
plain_holo_terms = _elementwise.plain_holo_terms
deformed_real_terms = _elementwise.deformed_real_terms
plain_real_terms = _elementwise.plain_real_terms
shifted_theta_terms = _elementwise.shifted_theta_terms
real_grid_eval = _elementwise.real_grid_eval
eisenstein_real_grid = _fused.eisenstein_real_grid
eisenstein_holo_sum = _elementwise.eisenstein_holo_sum
eisenstein_deformed_sum = _elementwise.eisenstein_deformed_sum

__all__ = [
    "BACKEND",
    "deformed_holo_terms",
    "plain_holo_terms",
    "deformed_real_terms",
    "plain_real_terms",
    "shifted_theta_terms",
    "real_grid_eval",
    "eisenstein_real_grid",
    "eisenstein_holo_sum",
    "eisenstein_deformed_sum",
]
