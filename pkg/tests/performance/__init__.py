"""
Sampled property checks for n beyond exhaustive reach.
"""
