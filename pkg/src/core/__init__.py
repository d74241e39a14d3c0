"""
Core services: configuration and job validation.
"""
