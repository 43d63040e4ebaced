"""Pynct setup file."""
import os
from setuptools import setup, find_packages


exec(open("pynct/__init__.py").read())


def read(fname):
    """Read a file to a string."""
    return open(os.path.join(os.path.dirname(__file__), fname)).read()


setup(
    name="pynct",
    version=__version__,
    description="Exact computations for cyclic symmetries of noncommutative tori",
    long_description=read('README.md'),
    long_description_content_type="text/markdown",
    keywords=["noncommutative torus", "crossed product", "K-theory", "cyclotomic", "exact arithmetic"],
    license="MIT",
    packages=find_packages(
        exclude=('tests', 'tests.*', 'docs', 'docs_source')
    ),
    package_data={
        "pynct": ["fixtures/SHA256SUMS", "fixtures/gl3/*.json", "fixtures/dim4/*.json"],
    },
    entry_points={
        "console_scripts": ["pynct = pynct.cli:run"],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        'Programming Language :: Python :: 3',
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    install_requires=[
        "numpy>=1.12.0",
        "scipy>=0.18.0",
        "pandas>=0.23.4",
        "pyrsistent>=0.16.0",
    ],
    tests_require=[
        "pytest",
        "hypothesis",
        "sympy",
    ],
)
