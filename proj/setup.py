"""Builds the _bo extension from the C++ core plus the binding layer.

The CMake build remains the primary build for the library, CLI and tests;
this setup compiles the same sources directly so the python package installs
with stock setuptools (pip install -e . --no-build-isolation).
"""

import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "bo._bo",
    sorted(glob.glob("src/*.cpp")) + ["python/bindings.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
    extra_compile_args=["-O2"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
