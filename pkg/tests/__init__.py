"""
Test modules for the annulus-bk solver.
"""
