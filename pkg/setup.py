import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # the pure-Python kernels are used instead
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("MSCSUMM_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "mscsumm._speedups",
                ["src/mscsumm/_speedups.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)
