from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # No Cython: install the pure-Python package; the reference kernels
    # are picked up automatically at import time.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "entropath.kernels._core",
                ["src/entropath/kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
