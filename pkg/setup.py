"""Build script: compiles the optional fast-kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so the build degrades gracefully when Cython is unavailable.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "pairtomo._kernels",
                ["src/pairtomo/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )
else:
    extensions = []

setup(ext_modules=extensions)
