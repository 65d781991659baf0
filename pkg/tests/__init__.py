"""Tests for the AFM duality toolkit."""
