# -*- coding: utf-8 -*-
from setuptools import setup  # Always prefer setuptools over distutils
from os import path

__author__ = 'luckydonald'

here = path.abspath(path.dirname(__file__))

long_description = """Find and certify consensus rules of binary one-dimensional cellular automata."""


def parse_requirements(requirements):
    reqs = []
    with open(requirements) as f:
        for line in f:
            line = line.strip('\n')
            if not line or line.startswith('#'):
                continue
            # end if
            line = line.split(' #', maxsplit=1)[0]
            line = line.strip()
            reqs.append(line)
        # end def
    # end with
    return reqs
# end def


setup(
    name='caconsensus', version="0.1.0",
    description='Find and certify consensus rules of binary one-dimensional cellular automata.',
    long_description=long_description,
    # Author details
    author='luckydonald',
    author_email='code@luckydonald.de',
    # Choose your license
    license='GPLv3+',
    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Development Status :: 3 - Alpha',  # 2 - Pre-Alpha, 3 - Alpha, 4 - Beta, 5 - Production/Stable
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries :: Python Modules',
        'Environment :: Console',
        # Pick your license as you wish (should match "license" above)
        'License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Operating System :: MacOS :: MacOS X',
        'Operating System :: Unix',
    ],
    # What does your project relate to?
    keywords='cellular automata consensus density classification attractor basin wolfram rule de bruijn',
    packages=['caconsensus'],
    python_requires='>=3.7',
    install_requires=parse_requirements(path.join(here, 'requirements.txt')),
    # $ pip install -e .[dev]
    extras_require={
        'dev': ['bump2version'],
    },
    entry_points={
        'console_scripts': [
            'caconsensus=caconsensus.cli:main',
        ],
    },
)
