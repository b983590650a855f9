"""Build script.

The compiled kernels are optional: if Cython or a C++ toolchain is missing
the install still succeeds and pairlab.kernels falls back to the numpy
implementations at import time.
"""
from setuptools import setup
from setuptools.extension import Extension

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext = Extension(
        "pairlab.kernels._fast",
        ["src/pairlab/kernels/_fast.pyx"],
        language="c++",
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    ext.optional = True
    ext_modules = cythonize([ext], language_level=3)
except ImportError:
    pass

setup(ext_modules=ext_modules)
