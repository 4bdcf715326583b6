from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    exts = cythonize(
        [Extension("foamlab._poly_cy", ["src/foamlab/_poly_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    # Building without Cython is fine: the package falls back to the
    # pure-Python kernel at import time.
    exts = []

setup(ext_modules=exts)
