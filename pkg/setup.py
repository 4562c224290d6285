"""Build script: compiles the optional Cython kernel extension.

The extension accelerates the Monte Carlo sampler and the hypergeometric
series. It is optional: if Cython or a C compiler is unavailable the build
degrades to the pure-Python kernels selected at import time.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise continue without it."""

    def run(self):
        try:
            super().run()
        except (PlatformError, FileNotFoundError) as exc:
            warnings.warn(f"compiled kernels skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except (CCompilerError, ExecError, PlatformError, ValueError) as exc:
            warnings.warn(f"compiled kernels skipped: {exc}")


def extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython or numpy unavailable; building without compiled kernels")
        return []
    import os

    # The Gaussian fill routine lives in numpy's static npyrandom library.
    random_lib = os.path.join(os.path.dirname(np.random.__file__), "lib")
    ext = Extension(
        "edgeworth_lab._kernels",
        sources=["src/edgeworth_lab/_kernels.pyx"],
        include_dirs=[np.get_include()],
        library_dirs=[random_lib],
        libraries=["npyrandom"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
