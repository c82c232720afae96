"""Build script: compiles the optional accelerator extension.

The package is pure Python plus one optional Cython extension
(``conicsteps._kernels``).  If Cython or a C compiler is unavailable the
build degrades to the pure-Python kernels in ``conicsteps._kernels_py``;
the import-time selector in ``conicsteps._backend`` picks whichever is
present.
"""
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Treat extension build failures as a soft fallback, not an error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            warnings.warn(f"compiled kernels skipped ({exc}); pure-Python fallback in use")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            warnings.warn(f"{ext.name} skipped ({exc}); pure-Python fallback in use")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - build environment dependent
        return []
    return cythonize(
        [Extension("conicsteps._kernels", ["src/conicsteps/_kernels.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
