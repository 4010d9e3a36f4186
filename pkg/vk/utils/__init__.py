"""Utilities shared by the vk toolkit."""

from .logger import get_logger
from .seeding import derive_rng

__all__ = ["get_logger", "derive_rng"]
