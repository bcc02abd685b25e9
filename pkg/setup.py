"""Build script: compiles the optional Cython kernel core.

The package works without the extension (a numpy fallback is selected
at import); the extension accelerates the scalar Sellmeier evaluations
inside the bracketing root-finders and the JSA grid fills.
"""

import numpy
from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "pdcsim.kernels._core",
        ["src/pdcsim/kernels/_core.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
