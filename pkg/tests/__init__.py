"""Tests for hermops."""
