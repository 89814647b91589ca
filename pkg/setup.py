"""Build shim for the optional compiled kernel.

The package is pure Python plus one Cython extension holding the hot
domain kernels. When Cython (or a C toolchain) is unavailable the
extension is skipped and the pure backend is used at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("fdsearch._kernel_cy", ["src/fdsearch/_kernel_cy.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
