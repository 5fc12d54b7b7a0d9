# Metadata lives in pyproject.toml; this shim keeps `python setup.py develop` working.
from setuptools import find_packages, setup

setup(packages=find_packages(where="src"), package_dir={"": "src"})
