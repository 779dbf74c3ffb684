"""
Command line runs of the lab.
"""
