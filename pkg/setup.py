"""Build script: compiles the optional fast feasibility kernel.

The extension is optional; the package falls back to the pure-Python
kernel in tubehyp._kernel_py when the compiled module is unavailable.
Float semantics must match the fallback bit for bit, hence the
-ffp-contract=off (no FMA fusing) and the absence of -ffast-math.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.path.exists("src/tubehyp/_speedups.pyx"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext = Extension(
            "tubehyp._speedups",
            sources=["src/tubehyp/_speedups.pyx"],
            extra_compile_args=["-O2", "-ffp-contract=off"],
        )
        ext.optional = True
        ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
