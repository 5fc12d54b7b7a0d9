"""
Tests for relideal
"""
