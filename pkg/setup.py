# setup.py
"""Backward compatibility shim for older pip/setuptools front ends."""
from setuptools import setup

# Project metadata and dependencies live in pyproject.toml
setup()
