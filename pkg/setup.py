import os

from setuptools import Extension, setup

# The compiled kernel is optional: if Cython (or a C++ toolchain) is missing,
# the package installs anyway and hullprob falls back to the pure-Python
# kernels at import time.  Set HULLPROB_NO_EXT=1 to skip the extension.
ext_modules = []
if os.environ.get("HULLPROB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "hullprob._dp_cy",
                    ["src/hullprob/_dp_cy.pyx"],
                    language="c++",
                    extra_compile_args=["-O2", "-std=c++17"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
