"""
Finite Gabor analysis toolkit.
"""
