"""Utilities: scenario loading, the simplex core and workbook export."""
