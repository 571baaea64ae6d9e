"""
Test package for tdobs
"""
