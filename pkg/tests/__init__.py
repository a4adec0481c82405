"""Tests for the graph_codes package."""
