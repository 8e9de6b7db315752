import os

from setuptools import Extension, setup

extensions = []
if os.environ.get("ONCOSPAN_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "oncospan._speedups",
                    ["src/oncospan/_speedups.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: the package still works on the pure-Python
        # fallback selected at import time.
        extensions = []

setup(ext_modules=extensions)
