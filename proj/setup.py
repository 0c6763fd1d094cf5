"""Build shim: compiles the pybind11 module through the project's CMake tree
and drops it inside the ``hempss`` package."""

import shutil
import subprocess
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            ["cmake", "-S", str(source_dir), "-B", str(build_dir),
             "-DCMAKE_BUILD_TYPE=Release"],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_hempss"],
            check=True,
        )
        built = sorted(build_dir.glob("_hempss*.so")) or sorted(
            build_dir.glob("**/_hempss*.so")
        )
        if not built:
            raise RuntimeError(f"compiled module not found under {build_dir}")
        out = Path(self.get_ext_fullpath(ext.name))
        out.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[-1], out)


setup(
    ext_modules=[CMakeExtension("hempss._hempss")],
    cmdclass={"build_ext": CMakeBuild},
)
