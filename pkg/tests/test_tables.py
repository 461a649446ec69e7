"""Data loaders: manifest integrity, grammar, and structural invariants."""

from fractions import Fraction

import pytest

from x6star.tables import (CERTIFICATE_LEVELS, DataIntegrityError,
                           identity_row, load_certificate, load_hecke_t5,
                           load_identities, load_padic_r3, verify_manifest)


def test_manifest_covers_all_data_files():
    import importlib.resources
    manifest = verify_manifest()
    root = importlib.resources.files("x6star") / "data"
    names = {p.name for p in root.iterdir()
             if p.name != "MANIFEST.sha256" and not p.name.startswith(".")}
    assert names == set(manifest)


def test_manifest_detects_tampering(tmp_path, monkeypatch):
    import importlib.resources
    import shutil
    src = importlib.resources.files("x6star") / "data"
    dst = tmp_path / "data"
    shutil.copytree(str(src), dst)
    (dst / "identities.txt").write_text(
        (dst / "identities.txt").read_text().replace("3375", "3376"))
    import x6star.tables as tables
    monkeypatch.setattr(tables, "_data_root", lambda: dst)
    tables.verify_manifest.cache_clear()
    try:
        with pytest.raises(DataIntegrityError):
            tables.verify_manifest()
    finally:
        tables.verify_manifest.cache_clear()


def test_identity_table_shape():
    rows = load_identities()
    assert len(rows) == 24
    fams = [(r.family, r.status) for r in rows]
    assert fams.count(("A", "proved")) == 8
    assert fams.count(("B", "proved")) == 12
    assert fams.count(("A", "numeric_only")) == 3
    assert fams.count(("B", "numeric_only")) == 1
    for r in rows:
        assert r.N > 0 and r.M != 0
        assert abs(Fraction(r.M, r.N)) < 1
        assert r.R1 > 0


def test_row_accessors():
    r = identity_row(-19, "B")
    assert r.argument == Fraction(-1024, 2187)
    assert r.t0 == Fraction(-2187, 1024)          # reciprocal for family B
    assert r.shift == Fraction(1, 3)
    a = identity_row(-120, "A")
    assert a.t0 == a.argument == Fraction(-2401, 3375)
    assert a.shift == Fraction(1, 2)
    with pytest.raises(KeyError):
        identity_row(-1)


def test_padic_r3_table():
    t = load_padic_r3()
    assert len(t) == 9
    assert t[(-40, 5)] == 2
    assert t[(-147, 5)] == Fraction(21, 2)
    assert t[(-267, 5)] == Fraction(1, 2)
    # every key refers to a B-family row whose M is divisible by p
    for (d, p) in t:
        row = identity_row(d, "B")
        assert row.M % p == 0


def test_hecke_blocks_square_and_sized():
    t = load_hecke_t5()
    for k, m in t.items():
        assert all(len(r) == len(m) for r in m)
    assert [len(t[k]) for k in sorted(t)] == [1, 1, 2, 2, 2, 3]


def test_certificates_load_with_expected_degrees():
    from x6star.polys import bipoly_degree
    for q in CERTIFICATE_LEVELS:
        p = load_certificate(q)
        assert bipoly_degree(p, 1) == q + 1      # z-degree is q + 1
        assert all(c != 0 for c in p.values())
