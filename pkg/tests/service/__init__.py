"""
Tests for service layer.
"""