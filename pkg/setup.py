"""Build the optional Cython kernels; the package still installs without them.

On x86-64 Linux the exp loop is first built against glibc's libmvec so GCC
emits vector exp calls. If that fails the extension is rebuilt with scalar
exp, and if the compiler is missing altogether the NumPy fallback is used.
"""

import platform
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

BASE_ARGS = ["-O3", "-fno-math-errno", "-fopenmp-simd"]
MVEC = sys.platform.startswith("linux") and platform.machine() in ("x86_64", "AMD64")


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or failing
            print(f"warning: compiled kernels not built ({exc}); using NumPy fallback")

    def build_extension(self, ext):
        if MVEC:
            try:
                super().build_extension(ext)
                return
            except Exception as exc:
                print(f"note: libmvec build of {ext.name} failed ({exc}); retrying with scalar exp")
                ext.define_macros = [m for m in ext.define_macros if m[0] != "THERMOIFS_MVEC"]
                ext.libraries = [lib for lib in ext.libraries if lib != "mvec"]
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); using NumPy fallback")


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension(
            "thermoifs._kernels", ["src/thermoifs/_kernels.pyx"],
            include_dirs=["src/thermoifs"],
            define_macros=[("THERMOIFS_MVEC", "1")] if MVEC else [],
            libraries=["mvec"] if MVEC else [],
            extra_compile_args=BASE_ARGS,
            depends=["src/thermoifs/_lse.h"],
        )],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
