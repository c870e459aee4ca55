"""Data models for scenarios, reports and check results."""
