"""Command-line front end: a thin client over the handler layer.

Exit codes: 0 success (or verified), 1 verification/table-match failure,
2 invalid input or I/O failure.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click
from pydantic import ValidationError

from . import api, __version__


def _fail(message: str, code: int = 2) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _invoke(handler, request_cls, **kwargs):
    try:
        req = request_cls(**kwargs)
        return handler(req)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(x) for x in first["loc"])
        _fail(f"{loc}: {first['msg']}")
    except (ValueError, OSError) as exc:
        _fail(str(exc))


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Sextic residue double circulant self-dual codes."""


# -- cyclotomy ----------------------------------------------------------------


@main.command()
@click.option("--p", "p", type=int, required=True, help="prime, 7 mod 12")
@click.option("--root", type=int, default=None, help="primitive root override")
@click.option("--json", "as_json", is_flag=True, help="emit one JSON document")
def cyclotomy(p: int, root: int | None, as_json: bool) -> None:
    """Classes, cyclotomic numbers, diophantine data and identity checks."""
    resp = _invoke(api.handle_cyclotomy, api.CyclotomyRequest, p=p, root=root)
    if as_json:
        click.echo(resp.model_dump_json(indent=2))
        return
    pr = resp.params
    click.echo(f"p={pr.p} gamma={pr.gamma} f={pr.f} l={pr.l}")
    click.echo(f"x={pr.x} y={pr.y} t={pr.t} (p = x^2 + 3y^2)")
    for i, cls in enumerate(resp.classes):
        click.echo(f"C{i}: {' '.join(str(a) for a in cls)}")
    click.echo("cyclotomic numbers (rows m, cols n):")
    for row in resp.numbers:
        click.echo("  " + " ".join(f"{v:3d}" for v in row))
    click.echo("constants: " + " ".join(f"{k}={v}" for k, v in resp.constants.items()))
    click.echo(f"-1 lies in C{resp.minus_one_class}")
    if resp.parity_case is not None:
        click.echo(f"parity case: ({resp.parity_case})")
    cf = resp.closed_form
    click.echo(f"closed forms: branch ({cf.branch})"
               + (f", corrected: {', '.join(cf.corrected)}" if cf.corrected else ""))
    for flag in cf.flags:
        click.echo(f"  printed {flag.constant} evaluates to {flag.printed_numerator}/36, "
                   f"counting gives {flag.counted}")
    bad = [c for c in resp.identities if not c.passed]
    click.echo(f"identity checks: {len(resp.identities) - len(bad)}/{len(resp.identities)} pass")
    for c in bad:
        click.echo(f"  FAIL {c.name}: {c.counterexample}")
    if bad:
        sys.exit(1)


# -- build ---------------------------------------------------------------------


@main.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--coeffs", required=True, help="m0..m6 over 0,1,w,W")
@click.option("--alpha", default=None, help="border scalar (bordered only)")
@click.option("--variant", type=click.Choice(["pure", "bordered"]), required=True)
@click.option("--root", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def build(p: int, q: int, coeffs: str, alpha: str | None, variant: str,
          root: int | None, out: str) -> None:
    """Write a generator matrix in the text matrix format."""
    resp = _invoke(api.handle_build, api.BuildRequest, p=p, q=q, coeffs=coeffs,
                   alpha=alpha, variant=variant, root=root)
    try:
        Path(out).write_text(resp.matrix)
    except OSError as exc:
        _fail(str(exc))
    click.echo(f"wrote [{resp.n},{resp.k}] generator over GF({q}) to {out}")


# -- verify --------------------------------------------------------------------


@main.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--coeffs", required=True)
@click.option("--alpha", default=None)
@click.option("--variant", type=click.Choice(["pure", "bordered"]), required=True)
@click.option("--root", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def verify(p: int, q: int, coeffs: str, alpha: str | None, variant: str,
           root: int | None, as_json: bool) -> None:
    """Certify self-duality algebraically and by the Gram matrix."""
    resp = _invoke(api.handle_verify, api.VerifyRequest, p=p, q=q, coeffs=coeffs,
                   alpha=alpha, variant=variant, root=root)
    if as_json:
        click.echo(resp.model_dump_json(indent=2))
    else:
        du = resp.duality
        click.echo(f"p={p} q={q} {variant} coeffs={resp.coeffs}"
                   + (f" alpha={resp.alpha}" if resp.alpha is not None else ""))
        click.echo(f"D values:    {' '.join(du.d_values)}")
        click.echo(f"D residuals: {' '.join(du.d_residuals)}")
        if du.border_residuals is not None:
            click.echo(f"border residuals: {' '.join(du.border_residuals)}")
        click.echo(f"algebraic: {'self-dual' if du.algebraic_ok else 'not self-dual'}")
        click.echo(f"gram:      {'zero' if du.gram_zero else 'nonzero'}")
        click.echo(f"verdict:   {'SELF-DUAL' if du.is_self_dual else 'NOT SELF-DUAL'}")
    sys.exit(0 if resp.duality.is_self_dual else 1)


# -- distance ------------------------------------------------------------------


@main.command()
@click.option("--in", "infile", type=click.Path(exists=True, dir_okay=False),
              required=True, help="matrix file")
@click.option("--method", type=click.Choice(["auto", "exhaustive", "isd"]),
              default="auto", show_default=True)
@click.option("--workers", type=int, default=None,
              help="parallel workers (default: SRDC_WORKERS or 1)")
@click.option("--known", type=click.Path(exists=True, dir_okay=False), default=None,
              help="best-known distances file (q n k d_best lines)")
@click.option("--exhaustive-threshold", type=int, default=1 << 26, show_default=True,
              help="auto mode uses the exhaustive engine while q^k stays below this")
@click.option("--json", "as_json", is_flag=True)
def distance(infile: str, method: str, workers: int | None, known: str | None,
             exhaustive_threshold: int, as_json: bool) -> None:
    """Certified minimum Hamming distance of a generator matrix."""
    try:
        text = Path(infile).read_text()
        known_text = Path(known).read_text() if known else None
    except OSError as exc:
        _fail(str(exc))
    resp = _invoke(api.handle_distance, api.DistanceRequest, matrix=text,
                   method=method, workers=workers, known=known_text,
                   exhaustive_threshold=exhaustive_threshold)
    if as_json:
        click.echo(resp.model_dump_json(indent=2))
        return
    c = resp.code
    click.echo(f"n={c.n} k={c.k} q={c.q} d={c.d} "
               f"method={c.d_method} certified={c.d_certified}")
    click.echo(f"self-dual: {c.self_dual}")
    if resp.bounds.self_dual_bound is not None:
        click.echo(f"self-dual distance bound: {resp.bounds.self_dual_bound}"
                   + (" (met)" if resp.bounds.meets_bound else ""))
    click.echo(f"witness: {c.witness}")


# -- search --------------------------------------------------------------------


@main.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--variant", type=click.Choice(["pure", "bordered"]), required=True)
@click.option("--min-d", "min_d", type=int, default=None)
@click.option("--limit", type=int, default=None)
@click.option("--no-distances", "no_distances", is_flag=True,
              help="list self-dual vectors without computing distances")
@click.option("--workers", type=int, default=None)
@click.option("--root", type=int, default=None)
@click.option("--known", type=click.Path(exists=True, dir_okay=False), default=None,
              help="best-known distances file (q n k d_best lines)")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
              default="text", show_default=True)
def search(p: int, q: int, variant: str, min_d: int | None, limit: int | None,
           no_distances: bool, workers: int | None, root: int | None,
           known: str | None, fmt: str) -> None:
    """Enumerate all self-dual coefficient vectors for (p, q, variant)."""
    try:
        known_text = Path(known).read_text() if known else None
    except OSError as exc:
        _fail(str(exc))
    resp = _invoke(api.handle_search, api.SearchRequest, p=p, q=q, variant=variant,
                   min_d=min_d, limit=limit, distances=not no_distances,
                   workers=workers, root=root, known=known_text)
    if fmt == "json":
        click.echo(resp.model_dump_json(indent=2))
        return
    if fmt == "csv":
        click.echo("coeffs,alpha,n,k,d,certified,method,bound,classification")
        for r in resp.results:
            if r.code is None:
                click.echo(f"{r.coeffs},{r.alpha or ''},,,,,,,")
            else:
                click.echo(f"{r.coeffs},{r.alpha or ''},{r.code.n},{r.code.k},"
                           f"{r.code.d},{r.code.d_certified},{r.code.d_method},"
                           f"{r.bounds.self_dual_bound},{r.bounds.classification}")
        return
    click.echo(f"{resp.count} self-dual vector(s) at p={p}, GF({q}), {variant}")
    for r in resp.results:
        line = f"  {r.coeffs}" + (f" alpha={r.alpha}" if r.alpha is not None else "")
        if r.code is not None:
            line += (f"  [{r.code.n},{r.code.k},{r.code.d}] "
                     f"{'certified' if r.code.d_certified else 'upper bound'}"
                     f" ({r.bounds.classification})")
        click.echo(line)


# -- tables --------------------------------------------------------------------


@main.command()
@click.option("--which", type=int, required=True, help="table id, 1-4")
@click.option("--p", "p", type=int, default=None, help="prime override")
@click.option("--distance-mode", type=click.Choice(["exact", "claim", "none"]),
              default="exact", show_default=True)
@click.option("--workers", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
              default="text", show_default=True)
def tables(which: int, p: int | None, distance_mode: str, workers: int | None,
           fmt: str) -> None:
    """Re-certify the published construction tables row by row.

    Exit 0 iff every enabled row is self-dual; distance mismatches are
    reported but not fatal.
    """
    resp = _invoke(api.handle_tables, api.TablesRequest, which=which, p=p,
                   distance_mode=distance_mode, workers=workers)
    if fmt == "json":
        click.echo(resp.model_dump_json(indent=2))
    elif fmt == "csv":
        click.echo("index,coeffs,alpha,self_dual,claimed_d,d,match,note")
        for r in resp.rows:
            click.echo(f"{r.index},{r.coeffs or ''},{r.alpha or ''},"
                       f"{'' if r.self_dual is None else r.self_dual},"
                       f"{r.claimed_d},{r.d},{r.match},{r.note or ''}")
    else:
        click.echo(f"table {resp.table} at p={resp.p} (GF({resp.q}), {resp.variant}), "
                   f"claimed d={resp.claimed_d}")
        for r in resp.rows:
            mark = {"match": "ok", "distance-mismatch": "d!",
                    "not-self-dual": "SD-FAIL", "duplicate": "dup",
                    "skipped": "skip"}[r.match]
            extra = f" -> row {r.duplicate_of}" if r.duplicate_of else ""
            note = f"  ({r.note})" if r.note else ""
            click.echo(f"  [{mark:7s}] row {r.index:2d} {r.coeffs or r.note or ''} "
                       f"d={r.d} (claimed {r.claimed_d}){extra}{note}")
        click.echo("all enabled rows self-dual: "
                   f"{resp.all_enabled_rows_self_dual}")
    sys.exit(0 if resp.all_enabled_rows_self_dual else 1)


# -- serve ---------------------------------------------------------------------


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service (keeps per-prime caches warm across requests)."""
    import uvicorn

    uvicorn.run("srdc.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
