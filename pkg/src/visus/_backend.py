"""Pick the kernel implementation at import time.

The compiled extension is used when it was built; set ``VISUS_BACKEND=python``
to force the numpy fallback.
"""
import logging
import os

from . import _fallback

log = logging.getLogger(__name__)

kernels = _fallback
name = "python"

if os.environ.get("VISUS_BACKEND", "").lower() != "python":
    try:
        from . import _kernels
    except ImportError:
        log.debug("compiled kernels unavailable; using numpy fallback")
    else:
        kernels = _kernels
        name = "cython"
