"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (pure-Python kernels are selected
at import time), so a failed compile only costs speed.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/geomhit/kernels/cykernels.pyx",
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"geomhit: skipping Cython kernels ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
