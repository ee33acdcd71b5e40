from setuptools import setup, find_packages

TATAMI_VERSION = "0.1.0"


def readme():
    with open('README.md', encoding='utf-8') as f:
        content = f.read()
    return content


def parse_requirements(fname):
    with open(fname, encoding="utf-8-sig") as f:
        requirements = f.readlines()
    return [r for r in requirements if not r.startswith('pytest')]


if __name__ == "__main__":
    setup(
        name='tatami',
        packages=find_packages(exclude=['tests', 'tests.*']),
        version=TATAMI_VERSION,
        install_requires=parse_requirements('./requirements.txt'),
        extras_require={'test': ['pytest>=7.0']},
        description='Tatamibari and Spiral Galaxies solvers, gadget checker and NP-hardness reduction',
        long_description=readme(),
        long_description_content_type='text/markdown',
        keywords=['tatamibari', 'spiral galaxies', 'puzzle', 'np-hardness', 'sat'],
        entry_points={'console_scripts': ['tatami=tatami.cli:main']},
        classifiers=[
            'Intended Audience :: Developers',
            'Intended Audience :: Science/Research',
            'Operating System :: OS Independent',
            'Natural Language :: Chinese (Simplified)',
            'Programming Language :: Python :: 3',
            'Programming Language :: Python :: 3.8',
            'Programming Language :: Python :: 3.9',
            'Programming Language :: Python :: 3.10',
            'Topic :: Games/Entertainment :: Puzzle Games'
        ],
        license='Apache License 2.0',
        ext_modules=[])
