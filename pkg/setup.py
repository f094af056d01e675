from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("gskit._speedups", ["src/gskit/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    # No Cython at build time: the package falls back to the pure-Python
    # kernels selected at import in gskit.kernels.
    pass

setup(ext_modules=ext_modules)
