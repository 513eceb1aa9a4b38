"""Build script: compiles the certificate kernel when Cython is available.

The package is fully functional without the extension; kernel.py falls
back to the pure-Python path at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    extensions = [
        Extension("cubelin._certkernel", ["src/cubelin/_certkernel.pyx"]),
    ]
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
