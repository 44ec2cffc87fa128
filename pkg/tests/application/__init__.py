"""Test package for Application Layer"""