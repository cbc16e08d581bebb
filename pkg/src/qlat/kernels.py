"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module. Setting ``QLAT_PURE=1`` forces the
fallback.
"""
import os

from . import _pykernels as pure

BACKEND = "python"
_impl = pure

if os.environ.get("QLAT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = pure

try:
    from . import _ckernels as compiled
except ImportError:
    compiled = None

dnf_table = _impl.dnf_table
compose_table = _impl.compose_table
median_witness = _impl.median_witness
order_witness = _impl.order_witness
homogeneity_witness = _impl.homogeneity_witness
horizontal_witness = _impl.horizontal_witness
comonotone_witness = _impl.comonotone_witness
