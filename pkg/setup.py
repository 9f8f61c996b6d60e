"""Builds the compiled kernel extension.

The extension is optional: if Cython or a C toolchain is unavailable the
install still succeeds and the package falls back to the numpy kernels.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cutbench._kernels",
                ["src/cutbench/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
