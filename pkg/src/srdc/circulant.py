"""Circulant matrices over GF(2)/GF(4), their basis decompositions and the
Gram coefficients that decide self-duality.

Matrices are dense and row-packed: each row is a pair of ints (hi, lo) with
bit j of hi/lo holding the two-bit code of the entry in column j (0, 1, w, W
as 00, 01, 10, 11).  For GF(2) the hi plane stays zero.  Row addition is a
pair of XORs, which is what the distance engine lives on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .cyclotomy import CyclotomicConstants, CyclotomicTable
from .field import GF4_MUL, element_to_symbol, int_scale

Row = tuple[int, int]


def scale_row(q: int, s: int, row: Row) -> Row:
    """Scalar multiple of a packed row."""
    hi, lo = row
    if s == 0:
        return (0, 0)
    if s == 1:
        return (hi, lo)
    if s == 2:  # w * (a*w + b) = (a+b)*w + a
        return (hi ^ lo, hi)
    return (lo, hi ^ lo)  # W = w^2


def dot_rows(q: int, a: Row, b: Row) -> int:
    """Euclidean inner product of two packed rows."""
    ahi, alo = a
    bhi, blo = b
    if q == 2:
        return (alo & blo).bit_count() & 1
    hh = (ahi & bhi).bit_count()
    hl = (ahi & blo).bit_count()
    lh = (alo & bhi).bit_count()
    ll = (alo & blo).bit_count()
    return (((hh + hl + lh) & 1) << 1) | ((hh + ll) & 1)


def row_weight(row: Row) -> int:
    hi, lo = row
    return (hi | lo).bit_count()


def pack_row(q: int, entries: list[int] | tuple[int, ...]) -> Row:
    hi = lo = 0
    for j, v in enumerate(entries):
        hi |= ((v >> 1) & 1) << j
        lo |= (v & 1) << j
    return (hi, lo)


@dataclass(frozen=True)
class GFMatrix:
    """Dense row-packed matrix over GF(q)."""

    q: int
    n_rows: int
    n_cols: int
    rows: tuple[Row, ...]

    def __post_init__(self):
        if self.q not in (2, 4):
            raise ValueError(f"unsupported field GF({self.q})")
        if self.n_rows != len(self.rows):
            raise ValueError("row count mismatch")
        mask = (1 << self.n_cols) - 1
        for hi, lo in self.rows:
            if hi & ~mask or lo & ~mask:
                raise ValueError("row has bits beyond n_cols")
            if self.q == 2 and hi:
                raise ValueError("GF(2) matrix with nonzero hi plane")

    def entry(self, i: int, j: int) -> int:
        hi, lo = self.rows[i]
        return (((hi >> j) & 1) << 1) | ((lo >> j) & 1)

    def row_entries(self, i: int) -> list[int]:
        return [self.entry(i, j) for j in range(self.n_cols)]

    def row_string(self, i: int) -> str:
        return "".join(element_to_symbol(v) for v in self.row_entries(i))

    @property
    def is_zero(self) -> bool:
        return all(hi == 0 and lo == 0 for hi, lo in self.rows)

    def transpose(self) -> "GFMatrix":
        cols = []
        for j in range(self.n_cols):
            hi = lo = 0
            for i in range(self.n_rows):
                v = self.entry(i, j)
                hi |= ((v >> 1) & 1) << i
                lo |= (v & 1) << i
            cols.append((hi, lo))
        return GFMatrix(self.q, self.n_cols, self.n_rows, tuple(cols))

    def matmul(self, other: "GFMatrix") -> "GFMatrix":
        if self.q != other.q:
            raise ValueError("field mismatch")
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch")
        bt = other.transpose()
        rows = []
        for i in range(self.n_rows):
            entries = [dot_rows(self.q, self.rows[i], bt.rows[j]) for j in range(other.n_cols)]
            rows.append(pack_row(self.q, entries))
        return GFMatrix(self.q, self.n_rows, other.n_cols, tuple(rows))

    def __add__(self, other: "GFMatrix") -> "GFMatrix":
        if (self.q, self.n_rows, self.n_cols) != (other.q, other.n_rows, other.n_cols):
            raise ValueError("shape/field mismatch")
        rows = tuple((a[0] ^ b[0], a[1] ^ b[1]) for a, b in zip(self.rows, other.rows))
        return GFMatrix(self.q, self.n_rows, self.n_cols, rows)


def identity_matrix(q: int, n: int) -> GFMatrix:
    return GFMatrix(q, n, n, tuple((0, 1 << i) for i in range(n)))


def matrix_from_entries(q: int, entries: list[list[int]]) -> GFMatrix:
    n_rows = len(entries)
    n_cols = len(entries[0]) if entries else 0
    return GFMatrix(q, n_rows, n_cols, tuple(pack_row(q, row) for row in entries))


@dataclass(frozen=True)
class CoefficientVector:
    """Seven coefficients over GF(q), plus the border scalar when bordered."""

    q: int
    m: tuple[int, ...]
    alpha: int | None = None

    def __post_init__(self):
        if self.q not in (2, 4):
            raise ValueError(f"unsupported field GF({self.q})")
        if len(self.m) != 7:
            raise ValueError(f"expected 7 coefficients, got {len(self.m)}")
        for v in self.m:
            if not 0 <= v < self.q:
                raise ValueError(f"{v} is not an element of GF({self.q})")
        if self.alpha is not None and not 0 <= self.alpha < self.q:
            raise ValueError(f"alpha={self.alpha} is not an element of GF({self.q})")


def _rotate(x: int, i: int, p: int, mask: int) -> int:
    if i == 0:
        return x
    return ((x << i) | (x >> (p - i))) & mask


def difference_row(table: CyclotomicTable, v: CoefficientVector) -> Row:
    """Row 0 of the circulant: entry at column j is m0 for j = 0, else the
    coefficient attached to the class of j."""
    p = table.params.p
    class_of = table.class_of
    entries = [v.m[0]] + [v.m[class_of(j) + 1] for j in range(1, p)]
    return pack_row(v.q, entries)


def circulant_matrix(table: CyclotomicTable, v: CoefficientVector) -> GFMatrix:
    """The p x p circulant whose (i, j) entry depends on j - i mod p."""
    p = table.params.p
    mask = (1 << p) - 1
    hi0, lo0 = difference_row(table, v)
    rows = tuple((_rotate(hi0, i, p, mask), _rotate(lo0, i, p, mask)) for i in range(p))
    return GFMatrix(v.q, p, p, rows)


def basis_matrices(table: CyclotomicTable, q: int) -> list[GFMatrix]:
    """A0 = I and the six 0/1 class-indicator circulants A1..A6."""
    out = [identity_matrix(q, table.params.p)]
    for i in range(6):
        m = tuple(1 if k == i + 1 else 0 for k in range(7))
        out.append(circulant_matrix(table, CoefficientVector(q=q, m=m)))
    return out


def product_decomposition(table: CyclotomicTable, i: int, j: int) -> tuple[int, ...]:
    """Integer coefficients (c0..c6) with Ai * Aj = sum ck Ak.

    The integer product of two class-indicator circulants is constant on the
    diagonal and on each class; that constancy is verified, not assumed.
    """
    if not (1 <= i <= 6 and 1 <= j <= 6):
        raise ValueError("i and j must be in 1..6")
    p = table.params.p
    ci = set(table.classes[i - 1])
    cj = set(table.classes[j - 1])
    # (Ai Aj)[0, c] counts t in C_{i-1} with c - t in C_{j-1}
    row = [sum(1 for t_ in ci if (c - t_) % p in cj) for c in range(p)]
    coeffs = [row[0]] + [None] * 6
    for c in range(1, p):
        s = table.class_of(c)
        if coeffs[s + 1] is None:
            coeffs[s + 1] = row[c]
        elif coeffs[s + 1] != row[c]:
            raise RuntimeError(
                f"product A{i}A{j} not constant on class {s} at p={p} (column {c})")
    return tuple(coeffs)


@dataclass(frozen=True)
class DCoefficients:
    """The Gram coefficients D0..D6 of a coefficient vector, in GF(q)."""

    q: int
    d: tuple[int, ...]

    def __post_init__(self):
        if len(self.d) != 7:
            raise ValueError("expected 7 coefficients")


def d_coefficients(table: CyclotomicTable, v: CoefficientVector) -> DCoefficients:
    """D0..D6 read off the product M M^T where M is the circulant of v.

    M M^T is a circulant; its first row must be constant on every class
    (anything else indicates a bug) and the class values are the D's.
    """
    p = table.params.p
    mask = (1 << p) - 1
    hi0, lo0 = difference_row(table, v)
    # (M M^T)[0, c] = <row 0, row c>, and row c is row 0 rotated by c.
    dvals = [None] * 7
    for c in range(p):
        val = dot_rows(v.q, (hi0, lo0),
                       (_rotate(hi0, c, p, mask), _rotate(lo0, c, p, mask)))
        slot = 0 if c == 0 else table.class_of(c) + 1
        if dvals[slot] is None:
            dvals[slot] = val
        elif dvals[slot] != val:
            raise RuntimeError(f"M M^T not class-constant at p={p}, column {c}")
    return DCoefficients(q=v.q, d=tuple(dvals))


# Monomial tables of the published expansions for D1..D3 (index pairs into m;
# duplicates appear exactly as printed and cancel in characteristic 2).
# They are a cross-check only; d_coefficients above is the implementation.
_PRINTED_D_TERMS: dict[int, dict[str, tuple[tuple[int, int], ...]]] = {
    1: {
        "": ((0, 4), (0, 1)),
        "A": ((1, 1), (1, 4), (4, 4)),
        "B": ((1, 2), (4, 5), (3, 6)),
        "C": ((1, 3), (4, 6), (2, 5)),
        "D": ((1, 4),),
        "E": ((3, 6), (2, 4), (1, 5)),
        "F": ((2, 5), (3, 4), (1, 6)),
        "G": ((1, 2), (1, 5), (2, 4), (3, 3), (4, 5), (6, 6)),
        "H": ((1, 3), (1, 6), (2, 2), (3, 4), (5, 5), (4, 6)),
        "I": ((2, 6), (2, 3), (3, 5), (3, 5), (5, 6), (2, 6)),
        "J": ((2, 3), (5, 6)),
    },
    2: {
        "": ((0, 5), (0, 2)),
        "A": ((2, 2), (5, 5), (2, 5)),
        "B": ((1, 4), (2, 3), (5, 6)),
        "C": ((2, 4), (1, 5), (3, 6)),
        "D": ((2, 5),),
        "E": ((1, 4), (3, 5), (2, 6)),
        "F": ((1, 2), (3, 6), (4, 5)),
        "G": ((1, 1), (2, 3), (2, 6), (4, 4), (3, 5), (5, 6)),
        "H": ((1, 5), (1, 2), (3, 3), (2, 4), (6, 6), (4, 5)),
        "I": ((1, 3), (1, 3), (3, 4), (4, 6), (1, 6), (4, 6)),
        "J": ((1, 6), (3, 4)),
    },
    3: {
        "": ((0, 6), (0, 3)),
        "A": ((3, 3), (3, 6), (6, 6)),
        "B": ((2, 5), (3, 4), (1, 6)),
        "C": ((1, 4), (3, 5), (2, 6)),
        "D": ((3, 6),),
        "E": ((1, 3), (2, 5), (4, 6)),
        "F": ((2, 3), (1, 4), (5, 6)),
        "G": ((1, 6), (2, 2), (1, 3), (3, 4), (4, 6), (5, 5)),
        "H": ((1, 1), (2, 6), (2, 3), (3, 5), (4, 4), (5, 6)),
        "I": ((1, 2), (1, 5), (2, 4), (2, 4), (1, 5), (4, 5)),
        "J": ((1, 2), (4, 5)),
    },
}


def printed_d_coefficients(con: CyclotomicConstants, f: int,
                           v: CoefficientVector) -> DCoefficients:
    """Evaluate the published D0..D3 expansions (with D4..D6 by pairing)."""
    q, m = v.q, v.m

    def mul(a: int, b: int) -> int:
        return (a & b) if q == 2 else GF4_MUL[a][b]

    d0 = mul(m[0], m[0])
    d0 ^= int_scale(q, f, reduce(lambda acc, x: acc ^ x,
                                 (mul(m[i], m[i]) for i in range(1, 7)), 0))
    cvals = con.as_dict()
    out = [d0, 0, 0, 0]
    for idx in (1, 2, 3):
        total = 0
        for name, pairs in _PRINTED_D_TERMS[idx].items():
            term = reduce(lambda acc, ij: acc ^ mul(m[ij[0]], m[ij[1]]), pairs, 0)
            total ^= term if name == "" else int_scale(q, cvals[name], term)
        out[idx] = total
    return DCoefficients(q=q, d=(out[0], out[1], out[2], out[3], out[1], out[2], out[3]))


def pure_generator(table: CyclotomicTable, v: CoefficientVector) -> GFMatrix:
    """(I_p | R): the length-2p, dimension-p generator."""
    if v.alpha is not None:
        raise ValueError("pure construction takes no border scalar")
    p = table.params.p
    r = circulant_matrix(table, v)
    rows = tuple((hi << p, lo << p | (1 << i)) for i, (hi, lo) in enumerate(r.rows))
    return GFMatrix(v.q, p, 2 * p, rows)


def bordered_generator(table: CyclotomicTable, v: CoefficientVector) -> GFMatrix:
    """(I_{p+1} | K) with a border row (alpha, 1..1) and border column of
    -1 = 1; the remaining p x p block of K is the circulant of v."""
    if v.alpha is None:
        raise ValueError("bordered construction requires the border scalar alpha")
    p = table.params.p
    k = p + 1
    r = circulant_matrix(table, v)
    all_ones = ((1 << p) - 1) << (k + 1)
    rows = [(((v.alpha >> 1) & 1) << k,
             ((v.alpha & 1) << k) | 1 | all_ones)]
    for i, (hi, lo) in enumerate(r.rows):
        rows.append((hi << (k + 1),
                     (lo << (k + 1)) | (1 << (i + 1)) | (1 << k)))
    return GFMatrix(v.q, k, 2 * p + 2, tuple(rows))


def transpose_coefficients(v: CoefficientVector) -> CoefficientVector:
    """The coefficient vector of the transposed circulant: classes pair up
    as (1,4), (2,5), (3,6)."""
    m = v.m
    return CoefficientVector(q=v.q, m=(m[0], m[4], m[5], m[6], m[1], m[2], m[3]),
                             alpha=v.alpha)
