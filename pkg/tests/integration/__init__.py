"""Integration tests for genusone."""
