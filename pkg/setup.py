"""Build script for the optional compiled kernel.

The package works without the extension: ``lastsuccess._kernel`` falls back
to numpy implementations when ``lastsuccess._core`` is not importable, so a
failed compile only costs speed, never correctness.
"""

import logging

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

log = logging.getLogger(__name__)


class optional_build_ext(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler at all
            log.warning("skipping compiled kernel (%s); using numpy fallback", exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            log.warning("failed to build %s (%s); using numpy fallback", ext.name, exc)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        log.warning("Cython not available; building without the compiled kernel")
        return []
    ext = Extension(
        "lastsuccess._core",
        ["src/lastsuccess/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
