"""Build script: compiles the fast one-period integrator when a C toolchain
is available, otherwise installs with the pure-Python kernel only."""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never fail the install over the optional compiled kernel."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: compiled kernel not built ({exc}); "
                  "falling back to the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} not built ({exc}); "
                  "falling back to the pure-Python kernel")


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension(
            "quasitherm._hill_fast",
            ["src/quasitherm/_hill_fast.pyx"],
            extra_compile_args=["-O3"],
        )],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
