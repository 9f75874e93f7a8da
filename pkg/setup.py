"""Build script with an optional compiled kernel.

The extension is a pure accelerator: if Cython or a C compiler is missing the
install falls back to the numpy implementation in finact._kernel_py, selected
at import time by finact.kernel.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Swallow compiler failures so the pure wheel still installs."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"skipping compiled kernel ({exc}); pure fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping {ext.name} ({exc}); pure fallback will be used")


ext_modules = []
if not os.environ.get("FINACT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("finact._kernel", ["src/finact/_kernel.pyx"])],
            language_level=3,
        )
    except ImportError:
        print("Cython not available; building without the compiled kernel")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
