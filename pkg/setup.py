"""Build script: compiles the optional Cython kernels.

If Cython or a C compiler is unavailable the install still succeeds and the
package falls back to the pure-Python kernel implementations at import time.
"""
import sys

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "kgcx._kernels._ckern",
                ["src/kgcx/_kernels/_ckern.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - degraded install path
    sys.stderr.write(f"kgcx: building without compiled kernels ({exc})\n")

setup(ext_modules=ext_modules)
