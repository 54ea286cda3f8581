from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("parahoric._kernels", ["src/parahoric/_kernels.pyx"])],
        language_level=3)
except ImportError:  # the numpy fallback is selected at import time
    ext_modules = []

setup(ext_modules=ext_modules)
