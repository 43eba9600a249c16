import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SUBTLESW_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "subtlesw._reduction_c",
            ["src/subtlesw/_reduction_c.pyx"],
            extra_compile_args=["-O3"],
            optional=True,
        )
        ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})
    except ImportError:
        # No Cython available: the pure-Python kernel is used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
