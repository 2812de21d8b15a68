from setuptools import setup, find_packages

setup(
    name="gmp-pooling",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.12",
        "aiojobs>=1.1",
    ],
    extras_require={
        "test": ["pytest"],
    },
    entry_points={
        "console_scripts": [
            "gmp-pool = gmp_pooling.cli.main:main",
        ],
    },
    python_requires=">=3.9",
)
