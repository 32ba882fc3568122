from setuptools import setup, find_packages

setup(
    name='e7_forge',
    version='0.1.0',
    description='Explicit E7 generators, Euler charts, Haar sampling and group volumes',
    packages=find_packages(exclude=['tests']),
    package_data={'e7_forge': ['data/*.json']},
    install_requires=['numpy', 'scipy'],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['e7-forge=e7_forge.cli:main']},
    python_requires='>=3.8',
)
