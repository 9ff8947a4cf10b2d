"""Request/response models and handlers shared by the service and the CLI.

The CLI calls these handlers in-process; the FastAPI app exposes the same
handlers over HTTP.  Field elements travel as their 0/1/w/W spellings.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from .circulant import CoefficientVector, GFMatrix, bordered_generator, pure_generator
from .codes import LinearCode, code_report, verify_vector
from .cyclotomy import (
    build_table,
    closed_form_constants,
    constants,
    diophantine_rep,
    parity_class,
    prime_params,
    verify_symmetries,
)
from .field import element_to_symbol, format_coeffs, parse_coeffs, symbol_to_element
from .matrixio import dump_matrix, parse_matrix
from .search import (
    SearchSpec,
    classify,
    enumerate_self_dual,
    load_tables,
    parse_best_known,
    reproduce_table,
)

Variant = Literal["pure", "bordered"]
DistanceMethod = Literal["auto", "exhaustive", "isd"]


class ParamsInfo(BaseModel):
    p: int
    q: int | None = None
    gamma: int
    f: int
    l: int
    x: int
    y: int
    t: int


class DualityInfo(BaseModel):
    variant: Variant
    d_values: list[str]
    d_residuals: list[str]
    border_residuals: list[str] | None = None
    gram_zero: bool
    algebraic_ok: bool
    is_self_dual: bool


class CodeInfo(BaseModel):
    n: int
    k: int
    q: int
    d: int
    d_method: str
    d_certified: bool
    self_dual: bool
    witness: str


class BoundsInfo(BaseModel):
    self_dual_bound: int | None = None
    meets_bound: bool = False
    classification: str = "unclassified"


def _params_info(p: int, gamma: int | None, q: int | None = None) -> ParamsInfo:
    params = prime_params(p, gamma)
    rep = diophantine_rep(params)
    return ParamsInfo(p=params.p, q=q, gamma=params.gamma, f=params.f, l=params.l,
                      x=rep.x, y=rep.y, t=rep.t)


def _coefficient_vector(q: int, coeffs: str, alpha: str | None,
                        variant: Variant) -> CoefficientVector:
    m = parse_coeffs(coeffs, q)
    if variant == "pure":
        if alpha is not None:
            raise ValueError("the pure construction takes no --alpha")
        return CoefficientVector(q=q, m=m)
    if alpha is None:
        raise ValueError("the bordered construction requires --alpha")
    return CoefficientVector(q=q, m=m, alpha=symbol_to_element(alpha, q))


def _duality_info(report) -> DualityInfo:
    sym = element_to_symbol
    return DualityInfo(
        variant=report.variant,
        d_values=[sym(v) for v in report.d_values],
        d_residuals=[sym(v) for v in report.d_residuals],
        border_residuals=(None if report.border_residuals is None
                          else [sym(v) for v in report.border_residuals]),
        gram_zero=report.gram_zero,
        algebraic_ok=report.algebraic_ok,
        is_self_dual=report.is_self_dual,
    )


# -- cyclotomy ---------------------------------------------------------------


class CyclotomyRequest(BaseModel):
    p: int
    root: int | None = None


class IdentityInfo(BaseModel):
    name: str
    passed: bool
    counterexample: str | None = None


class PrintedFlagInfo(BaseModel):
    constant: str
    printed_numerator: int      # printed closed form evaluates to this over 36
    counted: int


class ClosedFormInfo(BaseModel):
    branch: str
    corrected: list[str]
    flags: list[PrintedFlagInfo]


class CyclotomyResponse(BaseModel):
    params: ParamsInfo
    classes: list[list[int]]
    numbers: list[list[int]]
    minus_one_class: int
    constants: dict[str, int]
    parity_case: str | None = None
    closed_form: ClosedFormInfo
    identities: list[IdentityInfo]


def handle_cyclotomy(req: CyclotomyRequest) -> CyclotomyResponse:
    params = prime_params(req.p, req.root)
    table = build_table(params)
    rep = diophantine_rep(params)
    cf = closed_form_constants(rep, params)
    case = parity_class(params) if params.p % 24 == 19 else None
    return CyclotomyResponse(
        params=ParamsInfo(p=params.p, gamma=params.gamma, f=params.f, l=params.l,
                          x=rep.x, y=rep.y, t=rep.t),
        classes=[list(c) for c in table.classes],
        numbers=[list(r) for r in table.numbers],
        minus_one_class=table.minus_one_class,
        constants=constants(table).as_dict(),
        parity_case=case,
        closed_form=ClosedFormInfo(
            branch=cf.branch,
            corrected=list(cf.corrected),
            flags=[PrintedFlagInfo(constant=f.constant, printed_numerator=f.numerator,
                                   counted=f.counted) for f in cf.printed_flags]),
        identities=[IdentityInfo(name=c.name, passed=c.passed,
                                 counterexample=c.counterexample)
                    for c in verify_symmetries(table)],
    )


# -- build -------------------------------------------------------------------


class BuildRequest(BaseModel):
    p: int
    q: Literal[2, 4]
    coeffs: str
    alpha: str | None = None
    variant: Variant
    root: int | None = None


class BuildResponse(BaseModel):
    params: ParamsInfo
    coeffs: str
    alpha: str | None
    n: int
    k: int
    matrix: str


def build_generator(req: BuildRequest) -> GFMatrix:
    params = prime_params(req.p, req.root)
    table = build_table(params)
    v = _coefficient_vector(req.q, req.coeffs, req.alpha, req.variant)
    return (pure_generator if req.variant == "pure" else bordered_generator)(table, v)


def handle_build(req: BuildRequest) -> BuildResponse:
    g = build_generator(req)
    v_alpha = req.alpha
    comments = [f"p={req.p} q={req.q} variant={req.variant} coeffs={req.coeffs}"
                + (f" alpha={v_alpha}" if v_alpha is not None else "")]
    return BuildResponse(
        params=_params_info(req.p, req.root, req.q),
        coeffs=format_coeffs(parse_coeffs(req.coeffs, req.q)),
        alpha=v_alpha,
        n=g.n_cols, k=g.n_rows,
        matrix=dump_matrix(g, comments),
    )


# -- verify ------------------------------------------------------------------


class VerifyRequest(BaseModel):
    p: int
    q: Literal[2, 4]
    coeffs: str
    alpha: str | None = None
    variant: Variant
    root: int | None = None


class VerifyResponse(BaseModel):
    params: ParamsInfo
    coeffs: str
    alpha: str | None
    duality: DualityInfo


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    params = prime_params(req.p, req.root)
    table = build_table(params)
    v = _coefficient_vector(req.q, req.coeffs, req.alpha, req.variant)
    report = verify_vector(table, v)
    return VerifyResponse(
        params=_params_info(req.p, req.root, req.q),
        coeffs=format_coeffs(v.m),
        alpha=None if v.alpha is None else element_to_symbol(v.alpha),
        duality=_duality_info(report),
    )


# -- distance ----------------------------------------------------------------


class DistanceRequest(BaseModel):
    matrix: str
    method: DistanceMethod = "auto"
    workers: int | None = Field(default=None, ge=1)
    exhaustive_threshold: int = Field(default=1 << 26, ge=1)
    known: str | None = None    # best-known table file content (q n k d_best lines)


class DistanceResponse(BaseModel):
    code: CodeInfo
    bounds: BoundsInfo


def handle_distance(req: DistanceRequest) -> DistanceResponse:
    g = parse_matrix(req.matrix)
    code = LinearCode(g)
    rep = code_report(code, method=req.method, workers=req.workers,
                      exhaustive_threshold=req.exhaustive_threshold)
    known = parse_best_known(req.known) if req.known else None
    return DistanceResponse(
        code=CodeInfo(n=rep.n, k=rep.k, q=rep.q, d=rep.d, d_method=rep.d_method,
                      d_certified=rep.d_certified, self_dual=rep.self_dual,
                      witness=rep.witness),
        bounds=BoundsInfo(self_dual_bound=rep.bound, meets_bound=rep.meets_bound,
                          classification=classify(rep, known)),
    )


# -- search ------------------------------------------------------------------


class SearchRequest(BaseModel):
    p: int
    q: Literal[2, 4]
    variant: Variant
    min_d: int | None = Field(default=None, ge=1)
    limit: int | None = Field(default=None, ge=1)
    distances: bool = True
    workers: int | None = Field(default=None, ge=1)
    root: int | None = None
    known: str | None = None    # best-known table file content


class SearchRow(BaseModel):
    coeffs: str
    alpha: str | None = None
    code: CodeInfo | None = None
    bounds: BoundsInfo | None = None


class SearchResponse(BaseModel):
    params: ParamsInfo
    variant: Variant
    count: int
    results: list[SearchRow]


def handle_search(req: SearchRequest) -> SearchResponse:
    spec = SearchSpec(p=req.p, q=req.q, variant=req.variant, min_d=req.min_d,
                      limit=req.limit, gamma=req.root, distances=req.distances,
                      workers=req.workers)
    known = parse_best_known(req.known) if req.known else None
    results = enumerate_self_dual(spec)
    rows = []
    for r in results:
        code_info = bounds_info = None
        if r.report is not None:
            rep = r.report
            code_info = CodeInfo(n=rep.n, k=rep.k, q=rep.q, d=rep.d,
                                 d_method=rep.d_method, d_certified=rep.d_certified,
                                 self_dual=rep.self_dual, witness=rep.witness)
            bounds_info = BoundsInfo(self_dual_bound=rep.bound,
                                     meets_bound=rep.meets_bound,
                                     classification=classify(rep, known))
        rows.append(SearchRow(
            coeffs=r.coeff_string,
            alpha=None if r.alpha is None else element_to_symbol(r.alpha),
            code=code_info, bounds=bounds_info))
    return SearchResponse(params=_params_info(req.p, req.root, req.q),
                          variant=req.variant, count=len(rows), results=rows)


# -- tables ------------------------------------------------------------------


class TablesRequest(BaseModel):
    which: Literal[1, 2, 3, 4]
    p: int | None = None
    distance_mode: Literal["exact", "claim", "none"] = "exact"
    workers: int | None = Field(default=None, ge=1)


class TableRowInfo(BaseModel):
    index: int
    coeffs: str | None
    alpha: str | None = None
    enabled: bool
    duplicate_of: int | None = None
    self_dual: bool | None = None
    claimed_d: int
    d: str
    match: str
    note: str | None = None


class TablesResponse(BaseModel):
    table: int
    p: int
    q: int
    variant: Variant
    claimed_d: int
    rows: list[TableRowInfo]
    all_enabled_rows_self_dual: bool


def handle_tables(req: TablesRequest) -> TablesResponse:
    spec = load_tables()[req.which]
    p = req.p if req.p is not None else spec.default_p
    outcomes = reproduce_table(req.which, p_override=req.p,
                               distance_mode=req.distance_mode,
                               workers=req.workers)
    rows = []
    all_sd = True
    for out in outcomes:
        if out.self_dual is False:      # None marks skipped/duplicate rows
            all_sd = False
        rows.append(TableRowInfo(
            index=out.row.index,
            coeffs=out.row.coeff_string,
            alpha=(None if out.row.alpha is None
                   else element_to_symbol(out.row.alpha)),
            enabled=out.row.enabled,
            duplicate_of=out.duplicate_of,
            self_dual=out.self_dual,
            claimed_d=out.row.claimed_d,
            d=out.d_summary,
            match=out.match,
            note=out.row.note,
        ))
    return TablesResponse(table=spec.id, p=p, q=spec.q, variant=spec.variant,
                          claimed_d=spec.claimed_d, rows=rows,
                          all_enabled_rows_self_dual=all_sd)
