#!/usr/bin/env python3
import sys

if (sys.version_info[0] == 3 and sys.version_info[1] < 8):
    print("LocalEps requires Python version 3.8 or later")
    sys.exit(1)

from setuptools import setup, find_packages

DISTNAME = 'LocalEps'
VERSION = '0.1.0'
DESCRIPTION = 'Exact local constants: Gauss sums, epsilon factors, lambda-functions and Heisenberg determinants'
AUTHOR = 'The localEps developers'
LICENSE='OSL-3.0'

CLASSIFIERS = ["Natural Language :: English",
               "Development Status :: 3 - Alpha",
               "Intended Audience :: Science/Research",
               "License :: OSI Approved :: Open Software License 3.0 (OSL-3.0)",
               "Topic :: Scientific/Engineering :: Mathematics",
               "Operating System :: MacOS",
               "Operating System :: Microsoft :: Windows",
               "Operating System :: Unix",
               "Programming Language :: Python :: 3 :: Only"]

def main():
    setup(
        name=DISTNAME,
        version=VERSION,
        author=AUTHOR,
        description=DESCRIPTION,
        license=LICENSE,
        packages=find_packages(include=["localEps"]),
        platforms=['any'],
        python_requires='>=3.8',
        install_requires=[
            'numpy',
            'sympy',
        ],
        extras_require={'tests': ['pytest', 'hypothesis']},
        classifiers=CLASSIFIERS,
        entry_points = {'console_scripts': ['localEps = localEps.analyze:main']}
    )

if __name__ == "__main__":
    main()
