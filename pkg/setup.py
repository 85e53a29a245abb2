"""Build the optional compiled kernel; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("CUBICTAU_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "cubictau._ckernel",
                    ["src/cubictau/_ckernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
