import json

import pytest

from autmap.catalog import CATALOG, catalog_group, catalog_names, get_entry
from autmap.cli import (
    EXIT_CAP_EXCEEDED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    cmd_mappings,
    cmd_spectrum,
    cmd_verify_theorem,
    cmd_witness_psl2,
    cmd_witness_wreath,
    main,
)
from autmap.reports import build_report, result_digest
from autmap.structure import is_solvable

# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def test_catalog_labels_match_solvability():
    for entry in CATALOG:
        G = catalog_group(entry.name)
        assert is_solvable(G) == entry.solvable, entry.name


def test_catalog_lookup():
    assert get_entry("A5").expr == "A5"
    assert get_entry("A5xC2").expr == "A5 x C2"
    with pytest.raises(KeyError):
        get_entry("M11")
    assert "PSL2(8)" in catalog_names()


# ---------------------------------------------------------------------------
# command functions
# ---------------------------------------------------------------------------


def test_verify_theorem_control_c3():
    results, table, code = cmd_verify_theorem(["C3"], jobs=1)
    assert code == EXIT_OK
    (g,) = results["groups"]
    assert g["solvable"] and g["control_identity_1_complete"] and g["odd_order"]


def test_verify_theorem_control_c4_identity_fails():
    results, _, code = cmd_verify_theorem(["C4"], jobs=1)
    assert code == EXIT_OK
    (g,) = results["groups"]
    assert g["solvable"] and not g["control_identity_1_complete"]


def test_verify_theorem_a5():
    results, table, code = cmd_verify_theorem(["A5"], jobs=1)
    assert code == EXIT_OK
    (g,) = results["groups"]
    assert g["aut_size"] == 120 and g["all_fail"]
    assert len(table) == 120
    assert all(not row["verdict"] for row in table)
    # every failure row carries a colliding pair that really collides
    G = catalog_group("A5")
    from autmap.catalog import catalog_aut

    aut = catalog_aut("A5")
    for row in table:
        g1, g2 = (int(v) for v in row["certificate"].removeprefix("collision:").split("|"))
        alpha = aut.all[row["aut_index"]]
        assert G.mul(g1, alpha(g1)) == G.mul(g2, alpha(g2))


def test_verify_theorem_control_certificate_is_the_image():
    _, table, _ = cmd_verify_theorem(["C3"], jobs=1)
    (row,) = table
    values = sorted(int(v) for v in row["certificate"].removeprefix("image:").split(";"))
    assert values == [0, 1, 2]


def test_spectrum_c5_gcd_pattern():
    results, table, code = cmd_spectrum("C5", -2, 3, False, False, 10000, jobs=1)
    assert code == EXIT_OK
    identity_rows = [r for r in table if r["provenance"] == "inner(0)"]
    assert len(identity_rows) == 6  # the identity is always the first rep
    from math import gcd

    for row in identity_rows:
        assert row["k_complete"] == (gcd(row["k"] + 1, 5) == 1)


def test_spectrum_with_iterate():
    _, table, code = cmd_spectrum("S3", 1, 3, True, True, 10000, jobs=2)
    assert code == EXIT_OK
    for row in table:
        assert "iterate_bijective" in row


def test_spectrum_k_limit():
    with pytest.raises(ValueError):
        cmd_spectrum("C5", -20, 3, False, False, 10000, jobs=1)


def test_witness_psl2_cmd():
    results, _, code = cmd_witness_psl2(7, 0)
    assert code == EXIT_OK
    assert results["verified"]
    assert results["variant"] == "q3mod4"


def test_witness_wreath_cmd():
    results, _, code = cmd_witness_wreath("A5", 3, seed=1, cap=10000)
    assert code == EXIT_OK
    assert results["verified"] and results["eq2_holds"]


def test_mappings_cmd():
    results, _, code = cmd_mappings("S3", cap=10000)
    assert code == EXIT_OK
    assert results["complete"]["status"] == "nonexistent"
    assert not results["hall_paige_predicts_existence"]
    results, _, code = cmd_mappings("Q8", cap=10000)
    assert code == EXIT_OK
    assert results["complete"]["status"] == "exists"


# ---------------------------------------------------------------------------
# determinism of report digests
# ---------------------------------------------------------------------------


def test_digest_stable_across_parallelism():
    r1, t1, _ = cmd_verify_theorem(["A5", "S5", "C3"], jobs=1)
    r2, t2, _ = cmd_verify_theorem(["A5", "S5", "C3"], jobs=4)
    assert result_digest(r1, t1) == result_digest(r2, t2)


def test_digest_ignores_wall_time():
    r, t, _ = cmd_mappings("C5", cap=10000)
    a = build_report("mappings", r, t, scope=["C5"], seed=0, caps={}, wall_time_s=0.5)
    b = build_report("mappings", r, t, scope=["C5"], seed=0, caps={}, wall_time_s=9.9)
    assert a["manifest"]["digest"] == b["manifest"]["digest"]


def test_wreath_witness_reproducible():
    a, _, _ = cmd_witness_wreath("A5", 2, seed=42, cap=10000)
    b, _, _ = cmd_witness_wreath("A5", 2, seed=42, cap=10000)
    assert a == b


# ---------------------------------------------------------------------------
# the executable surface
# ---------------------------------------------------------------------------


def test_main_writes_json_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["mappings", "--group", "C3", "--out", str(out)])
    assert code == EXIT_OK
    report = json.loads(out.read_text())
    assert report["schema_version"] == 1
    assert report["manifest"]["digest"]
    assert report["results"]["complete"]["status"] == "exists"


def test_main_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    code = main(["spectrum", "--group", "C5", "--k-min", "0", "--k-max", "2",
                 "--format", "csv", "--out", str(out)])
    assert code == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("aut_index") or "k_complete" in lines[0]
    assert len(lines) > 1


def test_main_input_errors():
    assert main(["spectrum", "--group", "A5 x", "--k-min", "0", "--k-max", "1"]) == EXIT_INPUT_ERROR
    assert main(["spectrum", "--group", "PSL2(6)", "--k-min", "0", "--k-max", "1"]) == EXIT_INPUT_ERROR
    assert main(["verify-theorem", "--scope", "M11"]) == EXIT_INPUT_ERROR


def test_main_cap_exceeded():
    assert main(["mappings", "--group", "S8"]) == EXIT_CAP_EXCEEDED
    assert main(["mappings", "--group", "A5", "--cap", "10"]) == EXIT_CAP_EXCEEDED


def test_main_witness_subcommands(tmp_path):
    assert main(["witness", "psl2", "--q", "5", "--i", "0", "--out",
                 str(tmp_path / "w1.json")]) == EXIT_OK
    assert main(["witness", "wreath", "--base", "A5", "--n", "2", "--seed", "3",
                 "--out", str(tmp_path / "w2.json")]) == EXIT_OK


def test_inner_size_law_across_catalog():
    # |Inn(G)| = |G| / |Z(G)| for every catalog entry
    from autmap.catalog import catalog_aut
    from autmap.groups import center

    for entry in CATALOG:
        G = catalog_group(entry.name)
        aut = catalog_aut(entry.name)
        assert len(aut.inner) == G.n // len(center(G)), entry.name
