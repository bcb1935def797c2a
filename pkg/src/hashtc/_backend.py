"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python twin.  ``HASHTC_BACKEND=python`` forces the fallback.
"""

import importlib
import logging
import os

log = logging.getLogger(__name__)

_cache = {}


def available():
    names = ["python"]
    try:
        importlib.import_module("hashtc._kernels")
        names.insert(0, "cython")
    except ImportError:
        pass
    return names


def get_backend(name=None):
    name = name or os.environ.get("HASHTC_BACKEND", "auto")
    if name in _cache:
        return _cache[name]
    if name == "python":
        mod = importlib.import_module("hashtc._pykernels")
    elif name == "cython":
        mod = importlib.import_module("hashtc._kernels")
    elif name == "auto":
        try:
            mod = importlib.import_module("hashtc._kernels")
        except ImportError:
            log.warning("compiled kernel not built; using the pure-Python fallback")
            mod = importlib.import_module("hashtc._pykernels")
    else:
        raise ValueError(f"unknown backend {name!r}")
    _cache[name] = mod
    return mod
