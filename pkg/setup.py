"""Build script for the optional compiled kernels.

The package is fully functional without the extension; when Cython or a C
compiler is unavailable the build falls back to a pure-Python install and
``coeff_bounds.kernels`` selects the NumPy implementation at import time.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("COEFF_BOUNDS_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext = Extension(
            "coeff_bounds.kernels._ckernels",
            ["src/coeff_bounds/kernels/_ckernels.pyx"],
            include_dirs=[np.get_include()],
            extra_compile_args=["-O3"],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )
        ext_modules = cythonize(
            [ext],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"coeff_bounds: building without compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
