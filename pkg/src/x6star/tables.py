"""Loaders for the bundled data files, with sha256 manifest verification.

Data-file grammar (all files are plain text, ``#`` starts a comment line,
rationals are written ``p`` or ``p/q``):

* ``identities.txt`` — one identity row per line:
  ``D family M N R1 R2 R3 status`` with family ``A``/``B`` and status
  ``proved``/``numeric_only``.
* ``padic_r3.txt`` — ``D p R3``: the replacement constant for the p-adic
  congruence form of the B-family row at discriminant D.
* ``hecke_t5.txt`` — blocks ``k <weight>`` followed by the rows of the T5
  matrix acting on the weight-``k`` basis.
* ``cert_p{q}.txt`` — monomials ``coeff x_exp z_exp`` of the level-q
  certificate polynomial P_q(x, z).
* ``MANIFEST.sha256`` — ``<sha256>  <filename>`` for every other data file;
  verified before anything is parsed.
"""

from __future__ import annotations

import functools
import hashlib
import importlib.resources
from dataclasses import dataclass
from fractions import Fraction

from .polys import BiPoly


def _data_root():
    return importlib.resources.files("x6star") / "data"


class DataIntegrityError(RuntimeError):
    pass


@functools.lru_cache(maxsize=1)
def verify_manifest() -> dict[str, str]:
    """Check every data file against MANIFEST.sha256; returns the manifest."""
    root = _data_root()
    manifest = {}
    for line in (root / "MANIFEST.sha256").read_text().splitlines():
        if not line.strip():
            continue
        digest, name = line.split()
        manifest[name] = digest
    for name, digest in manifest.items():
        actual = hashlib.sha256((root / name).read_bytes()).hexdigest()
        if actual != digest:
            raise DataIntegrityError(
                f"data file {name} does not match its manifest digest")
    return manifest


def _read_rows(name: str) -> list[list[str]]:
    verify_manifest()
    rows = []
    for line in (_data_root() / name).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


@dataclass(frozen=True)
class IdentityRow:
    """One row of the identity table."""

    D: int
    family: str            # "A" or "B"
    M: int
    N: int
    R1: Fraction
    R2: Fraction
    R3: Fraction
    status: str            # "proved" or "numeric_only"

    @property
    def argument(self) -> Fraction:
        """Series argument M/N."""
        return Fraction(self.M, self.N)

    @property
    def t0(self) -> Fraction:
        """Value of the degree-4/2/6 hauptmodul at the CM point: M/N for the
        A family and N/M for the B family (where |t0| > 1)."""
        return Fraction(self.M, self.N) if self.family == "A" \
            else Fraction(self.N, self.M)

    @property
    def shift(self) -> Fraction:
        """Weight shift of the companion series: 1/2 (A) or 1/3 (B)."""
        return Fraction(1, 2) if self.family == "A" else Fraction(1, 3)

    @property
    def row_id(self) -> str:
        return f"{self.family}{self.D}"


@functools.lru_cache(maxsize=1)
def load_identities() -> tuple[IdentityRow, ...]:
    rows = []
    for tok in _read_rows("identities.txt"):
        d, fam, m, n, r1, r2, r3, status = tok
        rows.append(IdentityRow(int(d), fam, int(m), int(n), Fraction(r1),
                                Fraction(r2), Fraction(r3), status))
    return tuple(rows)


def identity_row(D: int, family: str | None = None) -> IdentityRow:
    for row in load_identities():
        if row.D == D and (family is None or row.family == family):
            return row
    raise KeyError(f"no identity row for D={D}"
                   + (f", family={family}" if family else ""))


@functools.lru_cache(maxsize=1)
def load_padic_r3() -> dict[tuple[int, int], Fraction]:
    out = {}
    for d, p, r3 in _read_rows("padic_r3.txt"):
        out[(int(d), int(p))] = Fraction(r3)
    return out


@functools.lru_cache(maxsize=1)
def load_hecke_t5() -> dict[int, list[list[Fraction]]]:
    out: dict[int, list[list[Fraction]]] = {}
    k = None
    for tok in _read_rows("hecke_t5.txt"):
        if tok[0] == "k":
            k = int(tok[1])
            out[k] = []
        else:
            if k is None:
                raise DataIntegrityError("matrix row before any 'k' header")
            out[k].append([Fraction(v) for v in tok])
    for k, m in out.items():
        if any(len(r) != len(m) for r in m):
            raise DataIntegrityError(f"T5 block k={k} is not square")
    return out


@functools.lru_cache(maxsize=8)
def load_certificate(q: int) -> BiPoly:
    """The level-q certificate polynomial P_q(x, z) as a sparse bipoly."""
    poly: BiPoly = {}
    for c, i, j in _read_rows(f"cert_p{q}.txt"):
        poly[(int(i), int(j))] = Fraction(c)
    return poly


CERTIFICATE_LEVELS = (5, 7, 11, 13)
