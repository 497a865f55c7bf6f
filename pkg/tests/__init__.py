"""Unit test package for rgflow."""
