import os

from setuptools import Extension, setup


def extensions():
    # The compiled kernel is optional: the package falls back to the pure
    # Python implementation in incidalg._core.echelon_py at import time.
    if os.environ.get("INCIDALG_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "incidalg._core._echelon",
        ["src/incidalg/_core/_echelon.pyx"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions())
