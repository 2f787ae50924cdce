"""Frog-model coverage laboratory on complete graphs (C++ core bindings)."""

try:
    from ._frogsim import *  # noqa: F401,F403
    from ._frogsim import __doc__ as _core_doc  # noqa: F401
except ImportError:  # in-build-tree layout: extension next to the package
    from _frogsim import *  # noqa: F401,F403

__version__ = "0.1.0"
