"""CMake-backed build for the mermin package.

The compiled `_mermin` extension comes out of the main CMake tree with the
CLI and test targets switched off.
"""

import shutil
import subprocess
import sys
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
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DMERMIN_BUILD_CLI=OFF",
                "-DMERMIN_BUILD_TESTS=OFF",
                "-DMERMIN_BUILD_PYTHON=ON",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(["cmake", "--build", str(build_dir), "-j"], check=True)

        staged = build_dir / "python_pkg" / "mermin"
        modules = sorted(staged.glob("_mermin*.so")) + sorted(staged.glob("_mermin*.pyd"))
        if not modules:
            raise RuntimeError(f"no compiled module found under {staged}")
        target = Path(self.get_ext_fullpath(ext.name))
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(modules[0], target)


setup(
    packages=["mermin"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("mermin._mermin")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
