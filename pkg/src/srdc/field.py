"""Arithmetic over the prime field GF(p) and the code alphabets GF(2), GF(4).

GF(4) elements are encoded as the integers 0, 1, 2, 3 where 2 stands for the
primitive element w (a root of x^2 + x + 1) and 3 for w^2 = w + 1.  With that
encoding, field addition is bitwise XOR for both GF(2) and GF(4).
"""

from __future__ import annotations

from functools import lru_cache

# Printable alphabet shared by the CLI, matrix files and fixtures.
SYMBOLS = "01wW"
_SYMBOL_TO_ELEMENT = {s: i for i, s in enumerate(SYMBOLS)}

# Multiplication table for GF(4) under the 0/1/w/W encoding.
GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
# Multiplicative inverses in GF(4) (index 0 unused).
GF4_INV = (None, 1, 3, 2)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def mod_pow(base: int, exp: int, p: int) -> int:
    """base**exp mod p by square-and-multiply."""
    if not 0 <= base < p:
        raise ValueError(f"base {base} not a residue mod {p}")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, p)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n < 2**31 in this artifact)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest positive primitive root of the prime p.

    The choice of root fixes the labelling of the cyclotomic classes, so it
    is pinned to the smallest one for reproducibility.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    prime_divisors = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_divisors):
            return g
    raise RuntimeError(f"no primitive root found for {p}")  # unreachable for prime p


def is_primitive_root(p: int, g: int) -> bool:
    """True iff g has multiplicative order p-1 modulo p."""
    if not 0 < g < p:
        return False
    return all(pow(g, (p - 1) // q, p) != 1 for q in factorize(p - 1))


class IndexTable:
    """Precomputed discrete indices for a fixed primitive root.

    index_of[a] = i with gamma**i = a (mod p); class_of[a] = index_of[a] mod 6.
    Read-only after construction, safe to share between workers.
    """

    __slots__ = ("p", "gamma", "index_of", "class_of")

    def __init__(self, p: int, gamma: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not is_primitive_root(p, gamma):
            raise ValueError(f"{gamma} is not a primitive root of {p}")
        self.p = p
        self.gamma = gamma
        index_of = [0] * p
        a = 1
        for i in range(p - 1):
            index_of[a] = i
            a = a * gamma % p
        self.index_of = index_of
        self.class_of = [index_of[a] % 6 for a in range(p)]
        self.class_of[0] = -1  # zero belongs to no class

    def index(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ValueError("0 has no discrete index")
        return self.index_of[a]


@lru_cache(maxsize=None)
def index_table(p: int, gamma: int | None = None) -> IndexTable:
    """Cached index table; gamma defaults to the canonical primitive root."""
    if gamma is None:
        gamma = primitive_root(p)
    return IndexTable(p, gamma)


def discrete_index(p: int, gamma: int, a: int) -> int:
    """The unique i in [0, p-2] with gamma**i = a (mod p)."""
    return index_table(p, gamma).index(a)


def _check_field(q: int) -> None:
    if q not in (2, 4):
        raise ValueError(f"unsupported field GF({q}); only GF(2) and GF(4)")


def _check_element(q: int, a: int) -> None:
    if not 0 <= a < q:
        raise ValueError(f"{a} is not an element of GF({q})")


def ff_add(q: int, a: int, b: int) -> int:
    """Field sum; characteristic 2, so subtraction is the same map."""
    _check_field(q)
    _check_element(q, a)
    _check_element(q, b)
    return a ^ b


def ff_mul(q: int, a: int, b: int) -> int:
    """Field product."""
    _check_field(q)
    _check_element(q, a)
    _check_element(q, b)
    if q == 2:
        return a & b
    return GF4_MUL[a][b]


def ff_inv(q: int, a: int) -> int:
    """Multiplicative inverse; 0 has none."""
    _check_field(q)
    _check_element(q, a)
    if a == 0:
        raise ValueError("0 is not invertible")
    return 1 if q == 2 else GF4_INV[a]


def int_scale(q: int, n: int, a: int) -> int:
    """The integer n acting on a field element: a added to itself n times.

    In characteristic 2 this is a when n is odd and 0 when n is even; it is
    how integer quantities (class sizes, cyclotomic numbers) scale alphabet
    elements.
    """
    _check_field(q)
    _check_element(q, a)
    return a if n % 2 else 0


def element_to_symbol(a: int) -> str:
    """0/1/w/W spelling of a field element."""
    return SYMBOLS[a]


def symbol_to_element(s: str, q: int) -> int:
    """Parse one coefficient symbol; GF(2) admits 0/1 only."""
    _check_field(q)
    if s not in _SYMBOL_TO_ELEMENT:
        raise ValueError(f"unknown coefficient symbol {s!r} (expected one of 0,1,w,W)")
    a = _SYMBOL_TO_ELEMENT[s]
    if a >= q:
        raise ValueError(f"symbol {s!r} is not an element of GF({q})")
    return a


def parse_coeffs(text: str, q: int, count: int = 7) -> tuple[int, ...]:
    """Parse a comma-separated (or contiguous) coefficient string."""
    parts = [part.strip() for part in text.split(",")] if "," in text else list(text.strip())
    if len(parts) != count:
        raise ValueError(f"expected {count} coefficients, got {len(parts)}")
    return tuple(symbol_to_element(s, q) for s in parts)


def format_coeffs(coeffs: tuple[int, ...]) -> str:
    return "".join(element_to_symbol(a) for a in coeffs)
