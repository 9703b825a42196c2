"""Build the optional compiled search kernel.

If Cython, numpy headers or a C compiler are missing the package still
installs and falls back to the pure-Python search.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("WANGFORGE_NO_EXT", "") in ("", "0"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "wangforge.solver._kernel",
                    ["src/wangforge/solver/_kernel.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
