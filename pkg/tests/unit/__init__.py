"""Unit tests for genusone."""
