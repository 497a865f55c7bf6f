"""Top-level package for rgflow."""

from loguru import logger

__author__ = """Tianyi Wang"""
__email__ = 'tianyiwang666@gmail.com'
__version__ = '0.1.0'

# library code stays quiet unless the cli (or the caller) enables it
logger.disable('rgflow')
