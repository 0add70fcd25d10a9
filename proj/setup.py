import os
import subprocess
import sys
from pathlib import Path

import pybind11
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name, sourcedir=""):
        super().__init__(name, sources=[])
        self.sourcedir = str(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        # the module installs under <build_lib>/vpatch next to the pure-python part
        prefix = Path(self.get_ext_fullpath(ext.name)).resolve().parent.parent
        build_dir = Path(self.build_temp) / ext.name
        build_dir.mkdir(parents=True, exist_ok=True)
        cfg = os.environ.get("VPATCH_BUILD_TYPE", "Release")
        subprocess.run(
            [
                "cmake",
                ext.sourcedir,
                "-DSKBUILD=ON",
                "-DVPATCH_PYTHON=ON",
                f"-DCMAKE_BUILD_TYPE={cfg}",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_vpatch", "--parallel"],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--install", ".", "--prefix", str(prefix)],
            cwd=build_dir,
            check=True,
        )


setup(
    packages=["vpatch"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("vpatch._vpatch")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
