"""Self-duality certification and certified minimum-distance computation.

Two independent routes everywhere: the algebraic conditions on the Gram
coefficients, and the literal Gram matrix of the generator; two distance
engines: exhaustive Gray-code enumeration of all information words, and an
information-set (Brouwer-Zimmermann style) enumeration whose lower bound
certifies termination.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from multiprocessing import get_context

from .circulant import (
    CoefficientVector,
    GFMatrix,
    bordered_generator,
    d_coefficients,
    dot_rows,
    pack_row,
    pure_generator,
    scale_row,
)
from .cyclotomy import CyclotomicTable
from .field import GF4_INV, element_to_symbol, ff_mul, int_scale

Row = tuple[int, int]

EXHAUSTIVE_THRESHOLD = 1 << 26


@dataclass(frozen=True)
class LinearCode:
    generator: GFMatrix

    @property
    def q(self) -> int:
        return self.generator.q

    @property
    def n(self) -> int:
        return self.generator.n_cols

    @property
    def k(self) -> int:
        return self.generator.n_rows


def gram_matrix(g: GFMatrix) -> GFMatrix:
    """G * G^T over GF(q)."""
    entries = []
    for i in range(g.n_rows):
        entries.append(pack_row(g.q, [dot_rows(g.q, g.rows[i], g.rows[j])
                                      for j in range(g.n_rows)]))
    return GFMatrix(g.q, g.n_rows, g.n_rows, tuple(entries))


def _gram_is_zero(g: GFMatrix) -> bool:
    # same test as gram_matrix(g).is_zero, with an early exit
    for i in range(g.n_rows):
        ri = g.rows[i]
        for j in range(i, g.n_rows):
            if dot_rows(g.q, ri, g.rows[j]):
                return False
    return True


def is_self_dual(code: LinearCode) -> bool:
    """n = 2k and G G^T = 0; rows are assumed independent (identity block)."""
    return code.n == 2 * code.k and _gram_is_zero(code.generator)


@dataclass(frozen=True)
class DualityReport:
    """Both verdicts side by side: Gram-coefficient residuals and the
    direct Gram check.  Residuals are zero exactly when the algebraic
    self-duality conditions hold."""

    variant: str
    q: int
    d_values: tuple[int, ...]
    d_residuals: tuple[int, ...]
    border_residuals: tuple[int, int] | None
    gram_zero: bool

    @property
    def algebraic_ok(self) -> bool:
        if any(self.d_residuals):
            return False
        return self.border_residuals is None or not any(self.border_residuals)

    @property
    def is_self_dual(self) -> bool:
        return self.gram_zero

    @property
    def verdicts_agree(self) -> bool:
        return self.algebraic_ok == self.gram_zero


def check_pure_conditions(table: CyclotomicTable, v: CoefficientVector) -> DualityReport:
    """Pure code: self-dual iff D0 = -1 (= 1 here) and D1 = D2 = D3 = 0."""
    if v.alpha is not None:
        raise ValueError("pure construction takes no border scalar")
    d = d_coefficients(table, v).d
    residuals = (d[0] ^ 1,) + d[1:]
    gram = _gram_is_zero(pure_generator(table, v))
    return DualityReport(variant="pure", q=v.q, d_values=d,
                         d_residuals=residuals, border_residuals=None,
                         gram_zero=gram)


def check_bordered_conditions(table: CyclotomicTable, v: CoefficientVector) -> DualityReport:
    """Bordered code: alpha^2 + p = -1, the border sum S vanishes,
    D0 = -2 (= 0) and D1 = D2 = D3 = -1 (= 1)."""
    if v.alpha is None:
        raise ValueError("bordered construction requires alpha")
    q = v.q
    d = d_coefficients(table, v).d
    residuals = (d[0],) + tuple(x ^ 1 for x in d[1:])
    # alpha^2 + p + 1 in GF(q); the odd prime p contributes 1 in char 2
    border_alpha = ff_mul(q, v.alpha, v.alpha) ^ int_scale(q, table.params.p, 1) ^ 1
    tail = 0
    for x in v.m[1:]:
        tail ^= x
    border_s = v.alpha ^ v.m[0] ^ int_scale(q, table.params.f, tail)
    gram = _gram_is_zero(bordered_generator(table, v))
    return DualityReport(variant="bordered", q=q, d_values=d,
                         d_residuals=residuals,
                         border_residuals=(border_alpha, border_s),
                         gram_zero=gram)


def verify_vector(table: CyclotomicTable, v: CoefficientVector) -> DualityReport:
    """Run both self-duality routes and fail loudly if they ever disagree."""
    report = (check_bordered_conditions if v.alpha is not None
              else check_pure_conditions)(table, v)
    if not report.verdicts_agree:
        raise RuntimeError(
            f"algebraic and Gram verdicts disagree for {v}; this is a bug")
    return report


def distance_bound(n: int, q: int) -> int:
    """Upper bound on d for a self-dual [n, n/2] code over GF(q)."""
    if q == 2:
        if n % 2:
            raise ValueError("binary self-dual codes have even length")
        if n % 24 == 22:
            return 4 * (n // 24) + 6
        return 4 * (n // 24) + 4
    if q == 4:
        return 4 * (n // 12) + 3
    raise ValueError(f"no bound implemented for GF({q})")


# ---------------------------------------------------------------------------
# linear algebra on packed rows


def _entry(row: Row, c: int) -> int:
    return (((row[0] >> c) & 1) << 1) | ((row[1] >> c) & 1)


def gauss_systematic(rows: list[Row], q: int, cols: list[int]) -> tuple[list[Row], list[int]]:
    """Gauss-Jordan elimination pivoting along the given column order.

    Returns the reduced rows and the pivot columns; the pivot columns carry
    an identity submatrix afterwards.
    """
    work = [list(r) for r in rows]
    k = len(work)
    pivots: list[int] = []
    r = 0
    for c in cols:
        if r >= k:
            break
        sel = None
        for i in range(r, k):
            if _entry((work[i][0], work[i][1]), c):
                sel = i
                break
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        val = _entry((work[r][0], work[r][1]), c)
        if val != 1:
            work[r] = list(scale_row(q, GF4_INV[val], (work[r][0], work[r][1])))
        piv = (work[r][0], work[r][1])
        for i in range(k):
            if i == r:
                continue
            u = _entry((work[i][0], work[i][1]), c)
            if u:
                sh, sl = scale_row(q, u, piv)
                work[i][0] ^= sh
                work[i][1] ^= sl
        pivots.append(c)
        r += 1
    return [(h, l) for h, l in work], pivots


def matrix_rank(g: GFMatrix) -> int:
    _, pivots = gauss_systematic(list(g.rows), g.q, list(range(g.n_cols)))
    return len(pivots)


def codeword_in_span(g: GFMatrix, word: Row) -> bool:
    """Membership of a packed word in the row space of g."""
    base = gauss_systematic(list(g.rows), g.q, list(range(g.n_cols)))[1]
    aug = gauss_systematic(list(g.rows) + [word], g.q, list(range(g.n_cols)))[1]
    return len(aug) == len(base)


# ---------------------------------------------------------------------------
# distance engines


@dataclass(frozen=True)
class DistanceResult:
    d: int                     # exact when certified, else best upper bound
    certified: bool
    lower_bound: int
    method: str                # "exhaustive" | "information-set"
    witness: Row               # codeword attaining d (or the upper bound)
    n: int
    q: int
    enumerated: int            # codewords evaluated

    @property
    def witness_string(self) -> str:
        hi, lo = self.witness
        return "".join(element_to_symbol((((hi >> j) & 1) << 1) | ((lo >> j) & 1))
                       for j in range(self.n))


def _canonical_witness(q: int, wit: Row) -> Row:
    """Scalar-normalize a witness so results do not depend on enumeration
    order (all scalar multiples have the same weight)."""
    if q == 2 or wit == (0, 0):
        return wit
    return min((scale_row(q, s, wit) for s in (1, 2, 3)),
               key=lambda r: (r[1], r[0]))


def min_weight_exhaustive(code: LinearCode, threshold: int = EXHAUSTIVE_THRESHOLD) -> DistanceResult:
    """Exact distance by visiting every nonzero information word once.

    Information words are walked in mixed-radix Gray order, so each step is
    a single scaled-row XOR.  Refuses codes with q**k beyond the threshold.
    """
    q, k, n = code.q, code.k, code.n
    if q ** k > threshold:
        raise ValueError(
            f"q^k = {q}**{k} exceeds the exhaustive threshold {threshold}; "
            "use the information-set engine")
    rows = code.generator.rows
    scaled = [[None] + [scale_row(q, s, r) for s in range(1, q)] for r in rows]

    digits = [0] * k
    focus = list(range(k + 1))
    direction = [1] * k
    hi = lo = 0
    best_wt = n + 1
    best: Row | None = None
    count = 0
    while True:
        j = focus[0]
        focus[0] = 0
        if j == k:
            break
        old = digits[j]
        new = old + direction[j]
        digits[j] = new
        if new == 0 or new == q - 1:
            direction[j] = -direction[j]
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1
        dh, dl = scaled[j][old ^ new]
        hi ^= dh
        lo ^= dl
        count += 1
        wt = (hi | lo).bit_count()
        if wt and (wt < best_wt or (wt == best_wt and (lo, hi) < (best[1], best[0]))):
            best_wt = wt
            best = (hi, lo)
    return DistanceResult(d=best_wt, certified=True, lower_bound=best_wt,
                          method="exhaustive", witness=_canonical_witness(q, best),
                          n=n, q=q, enumerated=count)


def _information_sets(rows: list[Row], n: int, q: int) -> list[tuple[list[Row], int]]:
    """Greedy sequence of systematic forms over disjoint column sets.

    Each entry is (reduced rows, rank contributed by fresh columns); when the
    fresh columns can no longer support full rank, one final overlapping set
    is added with the standard rank adjustment.
    """
    k = len(rows)
    used: set[int] = set()
    mats: list[tuple[list[Row], int]] = []
    while True:
        fresh = [c for c in range(n) if c not in used]
        if not fresh:
            break
        reduced, pivots = gauss_systematic(rows, q, fresh)
        if not pivots:
            break
        if len(pivots) < k:
            order = pivots + [c for c in range(n) if c not in pivots]
            reduced, full_piv = gauss_systematic(rows, q, order)
            if len(full_piv) == k:
                mats.append((reduced, len(pivots)))
            used.update(pivots)
            break
        mats.append((reduced, k))
        used.update(pivots)
    return mats


def _stage_gf2(rows: list[int], k: int, w: int, start_lo: int, start_hi: int,
               best_wt: int, best: Row | None, abort_below: int | None):
    """Enumerate all weight-w combinations of rows with first index in
    [start_lo, start_hi); returns the updated (best_wt, best, leaves)."""
    leaves = 0
    aborted = False

    def leaf_scan(acc: int, start: int):
        nonlocal best_wt, best, leaves, aborted
        for i in range(start, k):
            x = acc ^ rows[i]
            wt = x.bit_count()
            if wt and (wt < best_wt or (wt == best_wt and
                                        (best is None or (x, 0) < (best[1], best[0])))):
                best_wt = wt
                best = (0, x)
                if abort_below is not None and best_wt < abort_below:
                    aborted = True
                    return
        leaves += k - start

    def rec(start: int, depth: int, acc: int):
        if aborted:
            return
        if depth == w - 1:
            leaf_scan(acc, start)
            return
        for i in range(start, k - (w - depth) + 1):
            rec(i + 1, depth + 1, acc ^ rows[i])
            if aborted:
                return

    if w == 1:
        for i in range(start_lo, min(start_hi, k)):
            x = rows[i]
            wt = x.bit_count()
            if wt and (wt < best_wt or (wt == best_wt and
                                        (best is None or (x, 0) < (best[1], best[0])))):
                best_wt = wt
                best = (0, x)
            leaves += 1
    else:
        for i0 in range(start_lo, min(start_hi, k - w + 1)):
            rec(i0 + 1, 1, rows[i0])
            if aborted:
                break
    return best_wt, best, leaves, aborted


def _stage_gf4(scaled: list[list[Row]], k: int, w: int, start_lo: int, start_hi: int,
               best_wt: int, best: Row | None, abort_below: int | None):
    """GF(4) analogue; the first chosen row carries coefficient 1 (scalar
    normalization), later rows range over all three nonzero scalars."""
    leaves = 0
    aborted = False

    def leaf_scan(acc_hi: int, acc_lo: int, start: int):
        nonlocal best_wt, best, leaves, aborted
        for i in range(start, k):
            for sh, sl in scaled[i]:
                hi = acc_hi ^ sh
                lo = acc_lo ^ sl
                wt = (hi | lo).bit_count()
                if wt and (wt < best_wt or (wt == best_wt and
                                            (best is None or (lo, hi) < (best[1], best[0])))):
                    best_wt = wt
                    best = (hi, lo)
                    if abort_below is not None and best_wt < abort_below:
                        aborted = True
                        return
        leaves += 3 * (k - start)

    def rec(start: int, depth: int, acc_hi: int, acc_lo: int):
        if aborted:
            return
        if depth == w - 1:
            leaf_scan(acc_hi, acc_lo, start)
            return
        for i in range(start, k - (w - depth) + 1):
            for sh, sl in scaled[i]:
                rec(i + 1, depth + 1, acc_hi ^ sh, acc_lo ^ sl)
                if aborted:
                    return

    if w == 1:
        for i in range(start_lo, min(start_hi, k)):
            hi, lo = scaled[i][0]  # coefficient 1 representative
            wt = (hi | lo).bit_count()
            if wt and (wt < best_wt or (wt == best_wt and
                                        (best is None or (lo, hi) < (best[1], best[0])))):
                best_wt = wt
                best = (hi, lo)
            leaves += 1
    else:
        for i0 in range(start_lo, min(start_hi, k - w + 1)):
            hi0, lo0 = scaled[i0][0]
            rec(i0 + 1, 1, hi0, lo0)
            if aborted:
                break
    return best_wt, best, leaves, aborted


def _stage_worker(args):
    q, payload, k, w, lo_idx, hi_idx, best_wt, abort_below = args
    if q == 2:
        wt, wit, leaves, aborted = _stage_gf2(payload, k, w, lo_idx, hi_idx,
                                              best_wt, None, abort_below)
    else:
        wt, wit, leaves, aborted = _stage_gf4(payload, k, w, lo_idx, hi_idx,
                                              best_wt, None, abort_below)
    return wt, wit, leaves, aborted


def default_workers() -> int:
    """Worker count from the SRDC_WORKERS environment variable (default 1)."""
    try:
        return max(1, int(os.environ.get("SRDC_WORKERS", "1")))
    except ValueError:
        return 1


class _BZState:
    """Shared state of one information-set enumeration run."""

    def __init__(self, code: LinearCode):
        rows = list(code.generator.rows)
        self.q, self.n, self.k = code.q, code.n, code.k
        base_rank = len(gauss_systematic(rows, code.q, list(range(code.n)))[1])
        if base_rank != self.k:
            raise ValueError(f"generator has rank {base_rank} < k = {self.k}")
        self.mats = _information_sets(rows, self.n, self.q)
        self.best_wt = self.n + 1
        self.best: Row | None = None
        self.enumerated = 0
        for mat, _ in self.mats:
            for r in mat:
                wt = (r[0] | r[1]).bit_count()
                if wt and wt < self.best_wt:
                    self.best_wt = wt
                    self.best = r
        if self.q == 2:
            self.payloads = [[r[1] for r in mat] for mat, _ in self.mats]
        else:
            self.payloads = [[[scale_row(4, s, r) for s in (1, 2, 3)] for r in mat]
                             for mat, _ in self.mats]

    def lower_bound(self, w_done: int) -> int:
        return sum(max(0, (w_done + 1) - (self.k - rank)) for _, rank in self.mats)

    def run_stage(self, w: int, workers: int, abort_below: int | None) -> bool:
        """Enumerate weight-w information words on every systematic form.
        Returns True if an abort_below witness was found."""
        for payload in self.payloads:
            njobs = workers if workers > 1 and w >= 3 and self.k >= 8 else 1
            if njobs == 1:
                stage = _stage_gf2 if self.q == 2 else _stage_gf4
                wt, wit, leaves, aborted = stage(payload, self.k, w, 0, self.k,
                                                 self.best_wt, self.best, abort_below)
                if wit is not None:
                    self.best_wt, self.best = wt, wit
                self.enumerated += leaves
                if aborted:
                    return True
            else:
                bounds = [round(i * self.k / njobs) for i in range(njobs + 1)]
                jobs = [(self.q, payload, self.k, w, bounds[i], bounds[i + 1],
                         self.best_wt, abort_below) for i in range(njobs)
                        if bounds[i] < bounds[i + 1]]
                ctx = get_context("fork")
                with ctx.Pool(processes=njobs) as pool:
                    results = pool.map(_stage_worker, jobs)
                aborted = False
                for wt, wit, leaves, ab in results:
                    self.enumerated += leaves
                    aborted = aborted or ab
                    if wit is not None and (wt < self.best_wt or
                                            (wt == self.best_wt and self.best is not None
                                             and (wit[1], wit[0]) < (self.best[1], self.best[0]))):
                        self.best_wt, self.best = wt, wit
                if aborted:
                    return True
        return False


def min_weight_isd(code: LinearCode, workers: int | None = None,
                   abort_below: int | None = None) -> DistanceResult:
    """Certified minimum weight via information-set enumeration.

    Disjoint information sets are enumerated by ascending information weight;
    the run stops when the accumulated lower bound meets the best codeword
    found.  With abort_below set, the run may return early (uncertified) as
    soon as a codeword below that weight is seen, which is what the search
    filter needs.
    """
    workers = default_workers() if workers is None else max(1, workers)
    state = _BZState(code)
    w = 1
    lb = 0
    if abort_below is not None and state.best_wt < abort_below:
        return DistanceResult(d=state.best_wt, certified=False, lower_bound=1,
                              method="information-set",
                              witness=_canonical_witness(state.q, state.best),
                              n=state.n, q=state.q, enumerated=state.enumerated)
    while lb < state.best_wt and w <= state.k:
        aborted = state.run_stage(w, workers, abort_below)
        if aborted:
            return DistanceResult(d=state.best_wt, certified=False, lower_bound=lb,
                                  method="information-set",
                                  witness=_canonical_witness(state.q, state.best),
                                  n=state.n, q=state.q, enumerated=state.enumerated)
        lb = state.lower_bound(w)
        w += 1
    d = state.best_wt
    return DistanceResult(d=d, certified=True, lower_bound=d,
                          method="information-set",
                          witness=_canonical_witness(state.q, state.best),
                          n=state.n, q=state.q, enumerated=state.enumerated)


@dataclass(frozen=True)
class ClaimCheck:
    """Outcome of comparing the true distance against a claimed value
    without necessarily computing the exact distance."""

    relation: str              # "equal" | "less" | "greater"
    lower_bound: int
    upper_bound: int
    witness: Row
    n: int
    q: int

    @property
    def witness_string(self) -> str:
        hi, lo = self.witness
        return "".join(element_to_symbol((((hi >> j) & 1) << 1) | ((lo >> j) & 1))
                       for j in range(self.n))


def distance_vs_claim(code: LinearCode, claim: int,
                      workers: int | None = None) -> ClaimCheck:
    """Certify whether d = claim, d < claim or d > claim, stopping as soon
    as the relation is decided."""
    workers = default_workers() if workers is None else max(1, workers)
    state = _BZState(code)
    w = 1
    lb = 0
    while True:
        if state.best_wt < claim:
            return ClaimCheck("less", min(lb, state.best_wt), state.best_wt,
                              _canonical_witness(state.q, state.best), state.n, state.q)
        if lb >= state.best_wt:
            break
        if lb > claim:
            return ClaimCheck("greater", lb, state.best_wt,
                              _canonical_witness(state.q, state.best), state.n, state.q)
        if w > state.k:
            break
        aborted = state.run_stage(w, workers, claim)
        if not aborted:
            lb = state.lower_bound(w)
        w += 1
    d = state.best_wt
    relation = "equal" if d == claim else ("less" if d < claim else "greater")
    return ClaimCheck(relation, min(lb, d), d,
                      _canonical_witness(state.q, state.best), state.n, state.q)


@dataclass(frozen=True)
class CodeReport:
    n: int
    k: int
    q: int
    d: int
    self_dual: bool
    bound: int | None
    meets_bound: bool
    d_method: str
    d_certified: bool
    witness: str
    classification: str = "unclassified"


def code_report(code: LinearCode, method: str = "auto",
                workers: int | None = None,
                exhaustive_threshold: int = EXHAUSTIVE_THRESHOLD) -> CodeReport:
    """Assemble parameters, self-duality, distance and the self-dual bound."""
    sd = is_self_dual(code)
    if method == "auto":
        method = "exhaustive" if code.q ** code.k <= exhaustive_threshold else "isd"
    if method == "exhaustive":
        res = min_weight_exhaustive(code, threshold=exhaustive_threshold)
    elif method == "isd":
        res = min_weight_isd(code, workers=workers)
    else:
        raise ValueError(f"unknown distance method {method!r}")
    try:
        bound = distance_bound(code.n, code.q)
    except ValueError:
        bound = None
    return CodeReport(
        n=code.n, k=code.k, q=code.q, d=res.d, self_dual=sd, bound=bound,
        meets_bound=bound is not None and sd and res.d == bound,
        d_method=res.method, d_certified=res.certified,
        witness=res.witness_string,
    )
