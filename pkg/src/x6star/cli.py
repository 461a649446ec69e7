"""Command-line client for the verification service.

By default the commands talk to the service in-process over an ASGI
transport, so no server needs to be running; ``--url`` points them at a
remote instance instead.  Report-producing commands emit one JSON line per
record on stdout and a human summary on stderr; the exit code is 0 exactly
when every non-exploratory check passed.
"""

from __future__ import annotations

import json
import sys

import click
import httpx


def _request(url: str | None, method: str, path: str,
             payload: dict | None) -> httpx.Response:
    if url:
        with httpx.Client(base_url=url, timeout=600.0) as client:
            return client.request(method, path, json=payload)
    # in-process: drive the ASGI app directly, no server required
    import asyncio

    from .service import app

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://service",
                                     timeout=None) as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(go())


def _call(ctx, method: str, path: str, payload: dict | None = None) -> dict:
    resp = _request(ctx.obj.get("url"), method, path,
                    None if method == "GET" else (payload or {}))
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except Exception:
            detail = resp.text
        click.echo(f"error ({resp.status_code}): {detail}", err=True)
        sys.exit(2)
    return resp.json()


def _emit_reports(data: dict) -> None:
    reports = data["reports"]
    for rec in reports:
        out = {k: v for k, v in rec.items()
               if v is not None and not (k == "detail" and not v)
               and not (k == "exploratory" and not v)}
        click.echo(json.dumps(out))
    n = len(reports)
    scored = [r for r in reports if not r.get("exploratory")]
    npass = sum(r["status"] == "pass" for r in scored)
    nskip = sum(r["status"] == "skip" for r in scored)
    nfail = len(scored) - npass - nskip
    verdict = "PASS" if data["all_passed"] else "FAIL"
    click.echo(f"{verdict}: {npass} passed, {nskip} skipped, {nfail} failed"
               f" ({n - len(scored)} exploratory, {n} records)", err=True)
    sys.exit(0 if data["all_passed"] else 1)


@click.group()
@click.option("--url", default=None,
              help="base URL of a running service (default: in-process)")
@click.pass_context
def main(ctx, url):
    """High-precision and p-adic verification of the bundled identity
    tables."""
    ctx.ensure_object(dict)
    ctx.obj["url"] = url


@main.command()
@click.option("--D", "d", type=int, required=True, help="discriminant")
@click.option("--family", type=click.Choice(["A", "B"]), default=None)
@click.option("--digits", type=int, default=None,
              help="decimal digits of certification (default 120)")
@click.pass_context
def verify(ctx, d, family, digits):
    """Certify both series equalities of one table row, plus its curve-side
    and root-certificate cross-checks."""
    _emit_reports(_call(ctx, "POST", "/verify",
                        {"D": d, "family": family, "digits": digits}))


@main.command("verify-all")
@click.option("--digits", type=int, default=None)
@click.option("--family", "families", type=click.Choice(["A", "B"]),
              multiple=True, help="restrict to one family (repeatable)")
@click.option("--exploratory", is_flag=True,
              help="append non-asserting p-adic probes for the first family")
@click.pass_context
def verify_all(ctx, digits, families, exploratory):
    """Run the full verification suite over every table row."""
    _emit_reports(_call(ctx, "POST", "/verify-all",
                        {"digits": digits,
                         "families": list(families) or ["A", "B"],
                         "exploratory": exploratory}))


@main.command()
@click.option("--p", type=int, default=5, help="prime (p != 2, 3)")
@click.option("--digits", type=int, default=40, help="p-adic digits to sum")
@click.option("--D", "d", type=int, default=None,
              help="restrict to one discriminant")
@click.option("--exploratory", is_flag=True,
              help="include non-asserting probes for first-family rows")
@click.pass_context
def padic(ctx, p, digits, d, exploratory):
    """Sixth-power p-adic congruence checks for the second identity
    family."""
    _emit_reports(_call(ctx, "POST", "/padic",
                        {"p": p, "digits": digits, "D": d,
                         "exploratory": exploratory}))


@main.command("derive-s")
@click.option("--D", "d", type=int, required=True)
@click.option("--family", type=click.Choice(["A", "B"]), default=None)
@click.pass_context
def derive_s(ctx, d, family):
    """Exact rational constants recovered from a table row (hauptmodul
    value, log-derivative constant, orbit value, certificate candidates)."""
    click.echo(json.dumps(_call(ctx, "POST", "/derive-s",
                                {"D": d, "family": family}), indent=2))


@main.command("certify-roots")
@click.pass_context
def certify_roots(ctx):
    """Exact root certificates for every proved table row."""
    _emit_reports(_call(ctx, "POST", "/certify-roots"))


@main.command("reconstruct-q")
@click.pass_context
def reconstruct_q(ctx):
    """Re-derive the level-5 certificate polynomial from the bundled Hecke
    data and compare against the shipped copy."""
    data = _call(ctx, "POST", "/reconstruct-q")
    click.echo(json.dumps(data, indent=2))
    sys.exit(0 if data["all_passed"] else 1)


@main.command()
@click.option("--arg", required=True, help="positive rational, e.g. 1/4")
@click.option("--digits", type=int, default=50)
@click.pass_context
def gamma(ctx, arg, digits):
    """Gamma function at a positive rational argument."""
    click.echo(json.dumps(_call(ctx, "POST", "/gamma",
                                {"arg": arg, "digits": digits}), indent=2))


@main.command()
@click.option("--digits", type=int, default=50)
@click.pass_context
def constants(ctx, digits):
    """The closed-form right-hand-side constants."""
    click.echo(json.dumps(_call(ctx, "POST", "/constants",
                                {"digits": digits}), indent=2))


@main.command()
@click.pass_context
def selftest(ctx):
    """Fast internal consistency sweep (data integrity, sample checks)."""
    _emit_reports(_call(ctx, "POST", "/selftest"))


if __name__ == "__main__":
    main()
