"""
Command-line interface for the Gabor toolkit.
"""

from .commands import main, build_parser

__all__ = ['main', 'build_parser']
