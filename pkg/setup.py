"""Build script for the optional compiled sign-scan kernel.

The extension accelerates the unconditional-basis-constant enumeration
(the hot loop of ``framekit.riesz.ubc_exact``).  It is marked optional:
if the build fails the package still installs and falls back to the
vectorised numpy implementation at import time.
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

ext = Extension(
    "framekit._ubc_fast",
    ["src/framekit/_ubc_fast.pyx"],
    include_dirs=[np.get_include()],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    optional=True,
)

setup(ext_modules=cythonize([ext], language_level=3))
