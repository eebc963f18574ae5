from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    # lierine.linalg falls back to the pure-Python kernel
    ext_modules = []
else:
    ext_modules = cythonize(["src/lierine/_elim.pyx"], language_level=3)

setup(ext_modules=ext_modules)
