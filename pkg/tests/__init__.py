"""Tests for the tracat package."""
