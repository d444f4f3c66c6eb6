"""
Stable key hashing utilities.

Deduplication registries store short digests of normalized LaTeX instead of
the strings themselves so per-shard key sets stay small and mergeable.
"""

import hashlib


def generate_key_hash(key: str, length: int = 16) -> str:
    """
    Generate a deterministic hex digest for a dedup key.

    Args:
        key: Normalized LaTeX (or any text key)
        length: Number of hex characters to keep

    Returns:
        Hex digest prefix

    Example:
        >>> len(generate_key_hash(r"\\frac{1}{2}"))
        16
    """
    # SHA256 for good distribution; surrogatepass keeps undecodable input hashable
    hash_obj = hashlib.sha256(key.encode("utf-8", "surrogatepass"))
    return hash_obj.hexdigest()[:length]


def utf8_length(text: str) -> int:
    """Length of text in UTF-8 bytes (lone surrogates counted as encoded)."""
    return len(text.encode("utf-8", "surrogatepass"))
