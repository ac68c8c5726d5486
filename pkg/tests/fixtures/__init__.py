"""Test fixtures and data."""
