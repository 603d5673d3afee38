"""Builds the optional compiled matcher kernel.

The kernel source (src/lgw/matcher/_engine.py) is plain Python; when
Cython is available it is copied to _engine_c.py and compiled as a C
extension.  The package works without it (pure-Python fallback selected
at import in lgw.matcher).
"""

import shutil
from pathlib import Path

from setuptools import setup

# setuptools requires /-separated paths relative to this directory
ENGINE = "src/lgw/matcher/_engine.py"
ENGINE_C = "src/lgw/matcher/_engine_c.py"


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    here = Path(__file__).parent
    shutil.copyfile(here / ENGINE, here / ENGINE_C)
    return cythonize([ENGINE_C], language_level=3, quiet=True)


setup(ext_modules=_extensions())
