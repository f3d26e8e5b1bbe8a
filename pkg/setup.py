#!/usr/bin/env python
"""Setup script for hyperadia."""

from setuptools import setup

if __name__ == "__main__":
    setup()
