"""
Setup configuration for the vk van Kampen toolkit.
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="vankampen-tools",
    version="0.1.0",
    description="Exact van Kampen obstructions, nilpotent roots and spatial K6 linking computations",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.21.0",
        "pydantic>=2.0.0",
        "sympy>=1.12",
        "networkx>=3.0",
        "pyparsing>=3.1.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.4.0",
            "pytest-cov>=4.1.0",
            "black>=23.7.0",
            "isort>=5.12.0",
            "mypy>=1.4.0",
            "flake8>=6.1.0",
            "pre-commit>=3.3.3"
        ]
    },
    entry_points={
        "console_scripts": [
            "vk=vk.cli:main",
        ],
    },
    include_package_data=True,
    zip_safe=False,
)
