from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install: the package falls back to digrev._kernels_py.
    extensions = []
else:
    extensions = cythonize(
        [Extension("digrev._kernels_cy", ["src/digrev/_kernels_cy.pyx"])],
        language_level=3,
    )

setup(ext_modules=extensions)
