"""Acceptance-scale tests for constacyclic-ideals."""
