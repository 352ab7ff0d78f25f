try:
    from ._fkglab import *  # noqa: F401,F403  (installed layout)
    from ._fkglab import __version__  # noqa: F401
except ImportError:  # in-tree build: extension sits on sys.path
    from _fkglab import *  # noqa: F401,F403
    from _fkglab import __version__  # noqa: F401
