import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.extension import Extension


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source = Path(__file__).parent.resolve()
        build = Path(self.build_temp).resolve()
        build.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", str(source),
                "-B", str(build),
                f"-DPython3_EXECUTABLE={sys.executable}",
                "-DPOSDEF_BUILD_TESTS=OFF",
                "-DPOSDEF_BUILD_TOOLS=OFF",
                "-DCMAKE_BUILD_TYPE=Release",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build), "--target", "_posdef", "-j"],
            check=True,
        )
        staged = next((build / "python" / "posdef").glob("_posdef*"))
        target = Path(self.get_ext_fullpath(ext.name))
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(staged, target)


setup(
    packages=["posdef"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("posdef._posdef")],
    cmdclass={"build_ext": CMakeBuild},
)
