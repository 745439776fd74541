"""Unit tests for constacyclic-ideals."""
