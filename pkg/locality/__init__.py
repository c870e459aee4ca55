"""Spatially-resolved Bell correlations and local hidden variable tests."""
