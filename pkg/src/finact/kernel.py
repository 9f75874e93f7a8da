"""Backend selector for the ternary-identity scan loops.

The compiled extension is preferred when present; FINACT_PURE=1 in the
environment forces the numpy fallback. BACKEND reports the choice.
"""

from __future__ import annotations

import os

FLAG_A1 = 1
FLAG_A2 = 2
FLAG_A3 = 4
FLAG_A4 = 8
FLAG_K3 = 16
FLAG_K4 = 32
FLAG_COMM = 64
FLAG_ASSOC = 128

FLAG_BITS = {
    "a1": FLAG_A1,
    "a2": FLAG_A2,
    "a3": FLAG_A3,
    "a4": FLAG_A4,
    "k3": FLAG_K3,
    "k4": FLAG_K4,
    "commutative": FLAG_COMM,
    "associative": FLAG_ASSOC,
}

if os.environ.get("FINACT_PURE"):
    from . import _kernel_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as _impl

        BACKEND = "pure"

flags_bitmask = _impl.flags_bitmask
scan_a1a2_n3 = _impl.scan_a1a2_n3
