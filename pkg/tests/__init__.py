"""Test suite for BellSpace."""
