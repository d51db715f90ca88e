"""Build the optional Cython elimination kernel.

If Cython or a C compiler is missing the package still installs; the
pure-Python kernel is then used at import time.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("spimplicit._kernels", ["src/spimplicit/_kernels.pyx"],
                   extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
