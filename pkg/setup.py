from setuptools import setup, find_packages
import pathlib

here = pathlib.Path(__file__).parent
req_file = here / "tangles" / "requirements.txt"
install_requires = []
if req_file.exists():
    install_requires = [
        ln.strip()
        for ln in req_file.read_text().splitlines()
        if ln.strip() and not ln.startswith("#")
    ]

setup(
    name="tangles",
    version="0.1.0",
    description="Tangle character varieties (local packaging helper for ASV)",
    packages=find_packages(where="tangles/src"),
    package_dir={"": "tangles/src"},
    install_requires=install_requires,
    extras_require={"test": ["pytest>=7.0", "pytest-mock>=3.0", "pytest-benchmark>=3.4.0"]},
    entry_points={"console_scripts": ["tangles = tangles.cli:main"]},
)
