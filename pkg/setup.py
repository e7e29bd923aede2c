"""Build script for the optional compiled kernels.

The package is fully functional as pure Python.  When Cython and a C compiler
are available, build the accelerated kernels in place with:

    python setup.py build_ext --inplace

The import-time selector in digenergy.kernels falls back to the pure
implementations whenever the extension is absent.
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
                "digenergy._kernels_c",
                ["src/digenergy/_kernels_c.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
