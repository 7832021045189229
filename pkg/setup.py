"""Build script: compiles the cycle-search kernel if Cython is available.

The package works without the extension (a pure-Python kernel is selected
at import time), so a failed build is not fatal.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    """Swallow compiler failures; the pure-Python kernel takes over."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: building the compiled kernel failed ({exc}); "
                  "falling back to the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            print(f"warning: could not compile {ext.name} ({exc}); "
                  "falling back to the pure-Python kernel")


PYX = "src/randsurf/_kernel/_fastcore.pyx"
extensions = []
if cythonize is not None and os.path.exists(PYX) and not os.environ.get("RANDSURF_NO_EXT"):
    extensions = cythonize(
        [Extension("randsurf._kernel._fastcore", [PYX])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
