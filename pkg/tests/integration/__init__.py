"""Integration tests for the verify command line."""
