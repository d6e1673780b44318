import os

from setuptools import Extension, setup

# The compiled blade kernel is optional: the package falls back to the pure
# Python implementation when the extension is absent (or SPINSPLIT_PURE=1).
ext_modules = []
pyx = "src/spinsplit/_blades_c.pyx"
if not os.environ.get("SPINSPLIT_PURE") and os.path.exists(pyx):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("spinsplit._blades_c", [pyx])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
