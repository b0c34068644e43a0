"""Build script for the optional compiled kernel.

The package works without the extension (a pure-Python twin is selected at
import time), so the extension is marked optional: a failed compile degrades
to the fallback instead of breaking the install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "quadpart._kernels._fast",
                ["src/quadpart/_kernels/_fast.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
