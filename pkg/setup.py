import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


def extensions():
    # The package works without the extension; _kernels falls back to the
    # numpy implementation when the import fails.
    if cythonize is None or os.environ.get("WIRTINGER_NO_EXT"):
        return []
    ext = Extension(
        "wirtinger._kernels_cy",
        ["src/wirtinger/_kernels_cy.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
