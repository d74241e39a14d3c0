"""
Utility modules for the Gabor toolkit.

Helpers are imported from ``src.utils.helpers`` directly; they depend on
``src.core.validation``, which itself reads the constants below.
"""

from .constants import *
