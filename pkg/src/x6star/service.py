"""HTTP service exposing the verification engine.

Every endpoint returns a ``ReportSet``: a list of machine-readable records
plus an overall verdict.  The CLI talks to this app in-process by default
(ASGI transport), so the service is the single entry point for all
verification logic.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .driver import (PADIC_GUARD_DIGITS, PADIC_WORK_DIGITS, Report, all_passed,
                     certificate_candidates, certify_root,
                     derive_series_constants, exploratory_padic, run_all,
                     verify_archimedean, verify_curve_side, verify_padic)
from .gammafn import constant_set, gamma_rat
from .hecke import reconstruction_report
from .numkernel import DEFAULT_PRECISION, Precision, const_pi
from .tables import (identity_row, load_identities, load_padic_r3,
                     verify_manifest)

app = FastAPI(title="x6star", version=__version__)


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------


class ReportModel(BaseModel):
    id: str
    family: str
    equation: str
    lhs: str
    rhs: str
    status: str
    residual_exponent: int | None = None
    padic_digits: int | None = None
    terms: int | None = None
    ms: float = 0.0
    exploratory: bool = False
    detail: dict = Field(default_factory=dict)

    @classmethod
    def from_report(cls, r: Report) -> "ReportModel":
        return cls(id=r.id, family=r.family, equation=r.equation, lhs=r.lhs,
                   rhs=r.rhs, status=r.status,
                   residual_exponent=r.residual_exponent,
                   padic_digits=r.padic_digits, terms=r.terms,
                   ms=round(r.ms, 2), exploratory=r.exploratory,
                   detail=_stringify(r.detail))


def _stringify(obj):
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


class ReportSet(BaseModel):
    reports: list[ReportModel]
    all_passed: bool

    @classmethod
    def wrap(cls, reports: list[Report]) -> "ReportSet":
        return cls(reports=[ReportModel.from_report(r) for r in reports],
                   all_passed=all_passed(reports))


class VerifyRequest(BaseModel):
    D: int
    family: str | None = Field(default=None, pattern="^[AB]$")
    digits: int | None = Field(default=None, ge=20, le=2000,
                               description="decimal digits of certification")


class VerifyAllRequest(BaseModel):
    digits: int | None = Field(default=None, ge=20, le=2000)
    families: list[str] = ["A", "B"]
    exploratory: bool = False


class PadicRequest(BaseModel):
    p: int = 5
    digits: int = PADIC_WORK_DIGITS
    D: int | None = None
    exploratory: bool = False


class DeriveRequest(BaseModel):
    D: int
    family: str | None = Field(default=None, pattern="^[AB]$")


class GammaRequest(BaseModel):
    arg: str = Field(description="positive rational, e.g. 1/4")
    digits: int = Field(default=50, ge=1, le=1000)


class ConstantsRequest(BaseModel):
    digits: int = Field(default=50, ge=1, le=1000)


def _precision(digits: int | None) -> Precision:
    if digits is None:
        return DEFAULT_PRECISION
    return Precision(bits=max(128, math.ceil(digits * math.log2(10)) + 40))


def _row(D: int, family: str | None):
    try:
        return identity_row(D, family)
    except KeyError as ex:
        raise HTTPException(status_code=404, detail=str(ex))


# ---------------------------------------------------------------------------
# endpoints
# ---------------------------------------------------------------------------


@app.get("/health")
def health() -> dict:
    verify_manifest()
    return {"status": "ok", "version": __version__,
            "rows": len(load_identities())}


@app.post("/verify")
def verify(req: VerifyRequest) -> ReportSet:
    row = _row(req.D, req.family)
    prec = _precision(req.digits)
    reports = verify_archimedean(row, prec)
    reports.append(verify_curve_side(row, prec))
    if row.status == "proved":
        reports.append(certify_root(row))
    return ReportSet.wrap(reports)


@app.post("/verify-all")
def verify_all(req: VerifyAllRequest) -> ReportSet:
    prec = _precision(req.digits)
    reports = run_all(prec, families=tuple(req.families))
    if req.exploratory:
        for row in load_identities():
            if row.family == "A" and any(
                    row.M % p == 0 for p in (5, 7, 11, 13)):
                p = next(p for p in (5, 7, 11, 13) if row.M % p == 0)
                reports.append(exploratory_padic(row, p))
    return ReportSet.wrap(reports)


@app.post("/padic")
def padic(req: PadicRequest) -> ReportSet:
    reports: list[Report] = []
    for row in load_identities():
        if req.D is not None and row.D != req.D:
            continue
        if row.family == "B" and (row.D, req.p) in load_padic_r3():
            reports.extend(verify_padic(row, req.p, req.digits))
        elif req.exploratory and row.family == "A" and row.M % req.p == 0:
            reports.append(exploratory_padic(row, req.p, req.digits))
    if not reports:
        raise HTTPException(status_code=404,
                            detail=f"no p-adic checks for p={req.p}"
                            + (f", D={req.D}" if req.D is not None else ""))
    return ReportSet.wrap(reports)


@app.post("/derive-s")
def derive_s(req: DeriveRequest) -> dict:
    row = _row(req.D, req.family)
    data = derive_series_constants(row)
    return {"id": row.row_id, "family": row.family,
            **{k: str(v) for k, v in data.items()},
            "candidates": [list(c) for c in certificate_candidates(row.D)]}


@app.post("/certify-roots")
def certify_roots() -> ReportSet:
    reports = [certify_root(row) for row in load_identities()
               if row.status == "proved"]
    return ReportSet.wrap(reports)


@app.post("/reconstruct-q")
def reconstruct_q() -> dict:
    rep = reconstruction_report()
    ok = rep["certificate_divides"] and rep["spot_check_ok"]
    return {
        "orbit_polynomial": str(sympy.expand(rep["orbit_polynomial"])),
        "certificate_divides": rep["certificate_divides"],
        "cofactor": str(rep["cofactor"]),
        "spot_check_ok": rep["spot_check_ok"],
        "all_passed": ok,
    }


@app.post("/gamma")
def gamma(req: GammaRequest) -> dict:
    try:
        r = Fraction(req.arg)
        if r <= 0:
            raise ValueError
    except (ValueError, ZeroDivisionError):
        raise HTTPException(status_code=422,
                            detail="arg must be a positive rational")
    prec = _precision(req.digits)
    v = gamma_rat(r, prec)
    from mpmath import mp
    with mp.workprec(prec.work_bits):
        s = mp.nstr(v.value, req.digits)
    return {"arg": str(r), "digits": req.digits, "value": s,
            "error_exponent": v.error_exponent}


@app.post("/constants")
def constants(req: ConstantsRequest) -> dict:
    prec = _precision(req.digits)
    cs = constant_set(prec)
    from mpmath import mp

    def s(v):
        with mp.workprec(prec.work_bits):
            return mp.nstr(v.value, req.digits)

    return {
        "digits": req.digits,
        "pi": s(const_pi(prec)),
        "C1": s(cs.C1),
        "C2": s(cs.C2),
        "C_unif": s(cs.C_unif),
        "Omega_m3": s(cs.Omega_m3),
        "Omega_m4": s(cs.Omega_m4),
    }


@app.post("/selftest")
def selftest() -> ReportSet:
    """Fast internal consistency sweep: data integrity, one archimedean row
    at reduced precision, one exact root certificate, one short p-adic
    check."""
    import time

    reports: list[Report] = []
    t0 = time.perf_counter()
    verify_manifest()
    reports.append(Report(id="data", family="-", equation="manifest",
                          lhs="sha256", rhs="sha256", status="pass",
                          ms=(time.perf_counter() - t0) * 1000))
    prec = Precision(bits=200)
    row = identity_row(-84, "B")
    reports.extend(verify_archimedean(row, prec))
    reports.append(certify_root(identity_row(-120, "A")))
    reports.extend(verify_padic(identity_row(-40, "B"), 5, digits=12,
                                guard=4, target_digits=12))
    return ReportSet.wrap(reports)
