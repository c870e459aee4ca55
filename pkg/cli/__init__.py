"""Command-line front end for BellSpace."""
