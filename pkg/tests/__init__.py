"""
Stack-Sorting Lab test suite.

Engine, unit, integration and sampled performance tests.
"""
