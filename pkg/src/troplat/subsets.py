"""Bitmask helpers for subsets of [n] = {1, ..., n} (bit j-1 stands for element j)."""

from __future__ import annotations

from itertools import combinations


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def elements(mask: int) -> list[int]:
    """Zero-based indices of the set bits, ascending."""
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def from_elements(idx) -> int:
    mask = 0
    for j in idx:
        mask |= 1 << j
    return mask


def masks_of_size(n: int, k: int) -> list[int]:
    return [from_elements(c) for c in combinations(range(n), k)]


def full(n: int) -> int:
    return (1 << n) - 1


def mask_to_str(mask: int, n: int) -> str:
    """``0b101 -> "13"``; for n >= 10 indices are comma separated."""
    idx = [j + 1 for j in elements(mask)]
    sep = "," if n >= 10 else ""
    return sep.join(str(j) for j in idx)


def str_to_mask(text: str, n: int) -> int:
    text = text.strip()
    if not text:
        return 0
    if n >= 10 or "," in text:
        idx = [int(s) for s in text.split(",") if s.strip()]
    else:
        idx = [int(ch) for ch in text]
    for j in idx:
        if not 1 <= j <= n:
            raise ValueError(f"subset index {j} outside [1, {n}]")
    return from_elements(j - 1 for j in idx)
