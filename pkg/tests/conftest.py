"""Shared helpers: brute-force oracles kept deliberately independent of the
library code paths they check."""

from __future__ import annotations

from itertools import product

import pytest

from srdc.circulant import GFMatrix
from srdc.field import GF4_MUL


def brute_is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def multiplicative_order(g: int, p: int) -> int:
    x, k = g % p, 1
    while x != 1:
        x = x * g % p
        k += 1
    return k


def naive_mul(q: int, a: int, b: int) -> int:
    return (a & b) if q == 2 else GF4_MUL[a][b]


def naive_gram_zero(entries: list[list[int]], q: int) -> bool:
    """Entry-by-entry Gram test on a plain list-of-lists matrix."""
    k = len(entries)
    n = len(entries[0])
    for i in range(k):
        for j in range(i, k):
            s = 0
            for t in range(n):
                s ^= naive_mul(q, entries[i][t], entries[j][t])
            if s:
                return False
    return True


def unpack(g: GFMatrix) -> list[list[int]]:
    return [g.row_entries(i) for i in range(g.n_rows)]


def all_vectors(q: int, length: int = 7):
    return product(range(q), repeat=length)


def naive_codewords(entries: list[list[int]], q: int):
    """Every codeword of the row space, by brute force over q^k messages."""
    k = len(entries)
    n = len(entries[0])
    for msg in product(range(q), repeat=k):
        word = [0] * n
        for i, c in enumerate(msg):
            if c:
                for j in range(n):
                    word[j] ^= naive_mul(q, c, entries[i][j])
        yield msg, word


def naive_min_weight(entries: list[list[int]], q: int) -> int:
    best = len(entries[0]) + 1
    for msg, word in naive_codewords(entries, q):
        w = sum(1 for x in word if x)
        if w and w < best:
            best = w
    return best


@pytest.fixture(scope="session")
def primes_7_mod_12():
    return [p for p in range(7, 1000) if brute_is_prime(p) and p % 12 == 7]
