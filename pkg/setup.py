#!/usr/bin/env python

from setuptools import setup

with open("README.rst", "r") as f:
    long_description = f.read()

setup(
    name="semspace",
    version="1.0.0",
    description="In-memory semantic tuple space with ontology-path similarity reads",
    license="MIT",
    python_requires=">=3.9",
    packages=[
        "semspace",
        "semspace.bench",
        "semspace.cli",
        "semspace.ontology",
        "semspace.service",
        "semspace.util",
    ],
    package_data={"semspace": ["data/*.pairs"]},
    install_requires=[
        "fastapi>=0.100",
        "httpx>=0.24",
        "numpy",
        "psutil",
        "pydantic>=2",
        "rdflib>=6",
        "uvicorn>=0.20",
    ],
    entry_points={
        "console_scripts": ["semspace = semspace.cli:main"],
    },
    long_description=long_description,
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Developers",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Operating System :: OS Independent",
    ],
    zip_safe=False,
)
