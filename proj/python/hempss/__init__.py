"""Nonlinearly extended two-mode Bogoliubov transformations.

Canonical parameter families, interaction-coefficient tables, joint
photon-number statistics, truncated reference states, and pump/process
planning. The heavy lifting lives in the compiled ``_hempss`` module;
this package re-exports its public surface.
"""

try:
    # Installed layout: the compiled module sits inside the package.
    from ._hempss import *  # noqa: F401,F403
    from . import _hempss as _impl
except ImportError:
    # In-tree layout: the compiled module is on PYTHONPATH next to the
    # build directory.
    from _hempss import *  # noqa: F401,F403
    import _hempss as _impl

__version__ = _impl.__version__
