"""
Unit tests for the lab modules.
"""
