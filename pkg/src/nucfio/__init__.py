"""Nuclear traces of Fourier integral operators, numerically.

Submodules: grids, numerics, nuclear, euclid, quantize, lattice, group,
homog, families, report, cli. They are imported lazily so the command-line
entry point can pin threading environment variables before numpy loads.
"""

import importlib

__version__ = "0.1.0"

_SUBMODULES = (
    "grids",
    "numerics",
    "nuclear",
    "euclid",
    "quantize",
    "lattice",
    "group",
    "homog",
    "families",
    "report",
    "errors",
    "cli",
)


def __getattr__(name):
    if name in _SUBMODULES:
        return importlib.import_module(f".{name}", __name__)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__():
    return sorted(list(globals()) + list(_SUBMODULES))
