"""Worked-example scenario tests for genusone."""
