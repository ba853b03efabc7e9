"""Tests for deformqm."""
