"""Miscellaneous low-level utilities with no internal dependencies."""

import hashlib


def hash_sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
