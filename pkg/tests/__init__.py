"""Test suite."""
