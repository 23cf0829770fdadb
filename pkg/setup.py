"""
Setup script for the annulus-bk package.
"""
from setuptools import setup, find_packages

# Read requirements
with open("requirements.txt") as f:
    requirements = [line for line in f.read().splitlines() if line and not line.startswith("#")]

# Read README
with open("README.md") as f:
    long_description = f.read()

setup(
    name="annulus-bk",
    version="0.1.0",
    description="Finite-difference solver for parameter-dependent elliptic problems with deviated arguments and functional boundary conditions on annuli.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    py_modules=["run"],
    install_requires=requirements,
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "annulus-bk=run:main",
        ],
    },
)
