"""Command-line interface.

Subcommands: verify-theorem, spectrum, witness (psl2 | wreath), mappings.
Reports are canonical JSON (or a flat CSV view) with an embedded manifest;
every positive claim is re-verified before it is written.

Exit codes: 0 success; 2 theorem-consistency violation (an implementation
bug, never new mathematics); 3 input error; 4 cap or budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .automorphisms import compute_aut, identity_automorphism
from .catalog import (
    NONSOLVABLE_ENTRIES,
    catalog_aut,
    catalog_group,
    catalog_names,
    get_entry,
)
from .completeness import is_k_complete, iterate_map_bijective
from .errors import (
    AutmapError,
    CapExceededError,
    ParseError,
    StrategyError,
    TheoremViolationError,
)
from .fields import prime_power
from .groups import ORDER_CAP
from .mappings import (
    EXISTS,
    INDETERMINATE,
    find_complete_mapping,
    find_orthomorphism,
    hall_paige_predict,
)
from .parser import elaborate_text
from .reports import build_report, write_report
from .structure import is_solvable
from .witnesses import WreathAut, find_inverted_witness, psl2_witness

EXIT_OK = 0
EXIT_THEOREM_VIOLATION = 2
EXIT_INPUT_ERROR = 3
EXIT_CAP_EXCEEDED = 4

K_RANGE_LIMIT = 16


def _ordered_map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _reverify_verdict(G, alpha, verdict) -> None:
    """Re-check a completeness certificate right before emission."""
    if verdict.verdict:
        if len(set(int(v) for v in verdict.image)) != G.n:
            raise TheoremViolationError("emitted success certificate failed re-verification")
    else:
        g, h = verdict.collision
        lhs = G.mul(G.power(g, verdict.k), alpha(g))
        rhs = G.mul(G.power(h, verdict.k), alpha(h))
        if lhs != rhs:
            raise TheoremViolationError("emitted failure certificate failed re-verification")


def _certificate_text(verdict) -> str:
    """Inline certificate: the displacement image on success, the colliding
    pair on failure."""
    if verdict.verdict:
        return "image:" + ";".join(str(int(x)) for x in verdict.image)
    return f"collision:{verdict.collision[0]}|{verdict.collision[1]}"


# ---------------------------------------------------------------------------
# verify-theorem
# ---------------------------------------------------------------------------


def cmd_verify_theorem(scope: list[str] | None, jobs: int) -> tuple[dict, list[dict], int]:
    names = scope if scope else [e.name for e in NONSOLVABLE_ENTRIES]
    for name in names:
        get_entry(name)  # validate early: unknown names are input errors

    def one_group(name):
        entry = get_entry(name)
        try:
            G = catalog_group(name)
        except CapExceededError as e:
            return {"group": name, "error": str(e)}, []
        solvable = is_solvable(G)
        if solvable != entry.solvable:
            raise TheoremViolationError(f"catalog solvability label is wrong for {name}")
        if solvable:
            ident = identity_automorphism(G)
            v = is_k_complete(ident, 1)
            _reverify_verdict(G, ident, v)
            result = {
                "group": name,
                "order": G.n,
                "solvable": True,
                "control_identity_1_complete": v.verdict,
                "odd_order": G.n % 2 == 1,
            }
            rows = [
                {
                    "group": name,
                    "aut_index": 0,
                    "provenance": ident.provenance,
                    "k": 1,
                    "verdict": v.verdict,
                    "certificate": _certificate_text(v),
                }
            ]
            return result, rows
        aut = catalog_aut(name)
        rows = []
        complete_count = 0
        for idx, alpha in enumerate(aut.all):
            v = is_k_complete(alpha, 1)
            _reverify_verdict(G, alpha, v)
            if v.verdict:
                complete_count += 1
            rows.append(
                {
                    "group": name,
                    "aut_index": idx,
                    "provenance": alpha.provenance,
                    "k": 1,
                    "verdict": v.verdict,
                    "certificate": _certificate_text(v),
                }
            )
        result = {
            "group": name,
            "order": G.n,
            "solvable": False,
            "aut_size": len(aut),
            "inner_size": len(aut.inner),
            "one_complete_found": complete_count,
            "all_fail": complete_count == 0,
        }
        return result, rows

    pairs = _ordered_map(one_group, names, jobs)
    results = {"groups": [p[0] for p in pairs]}
    table = [row for p in pairs for row in p[1]]
    violations = [
        g["group"] for g in results["groups"] if not g.get("all_fail", True)
    ]
    cap_errors = [g["group"] for g in results["groups"] if "error" in g]
    results["theorem_consistent"] = not violations
    if violations:
        code = EXIT_THEOREM_VIOLATION
    elif cap_errors:
        code = EXIT_CAP_EXCEEDED
    else:
        code = EXIT_OK
    return results, table, code


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def cmd_spectrum(
    expr: str, k_min: int, k_max: int, iterate: bool, all_autos: bool, cap: int, jobs: int
) -> tuple[dict, list[dict], int]:
    if k_min > k_max:
        raise ValueError("--k-min must be <= --k-max")
    if max(abs(k_min), abs(k_max)) > K_RANGE_LIMIT:
        raise ValueError(f"|k| is limited to {K_RANGE_LIMIT}")
    G = elaborate_text(expr, cap)
    aut = compute_aut(G, "auto")
    autos = aut.all if all_autos else aut.coset_reps
    ks = list(range(k_min, k_max + 1))

    def one_alpha(item):
        idx, alpha = item
        rows = []
        for k in ks:
            v = is_k_complete(alpha, k)
            _reverify_verdict(G, alpha, v)
            row = {
                "group": G.name,
                "aut_index": idx,
                "provenance": alpha.provenance,
                "k": k,
                "k_complete": v.verdict,
                "certificate": _certificate_text(v),
            }
            if iterate:
                row["iterate_bijective"] = iterate_map_bijective(alpha, k) if k >= 1 else None
            rows.append(row)
        return rows

    chunks = _ordered_map(one_alpha, list(enumerate(autos)), jobs)
    table = [row for chunk in chunks for row in chunk]
    results = {
        "group": G.name,
        "order": G.n,
        "aut_size": len(aut),
        "rows_are": "all" if all_autos else "coset_reps",
        "k_range": [k_min, k_max],
        "k_complete_counts": {
            str(k): sum(1 for r in table if r["k"] == k and r["k_complete"]) for k in ks
        },
    }
    return results, table, EXIT_OK


# ---------------------------------------------------------------------------
# witness
# ---------------------------------------------------------------------------


def cmd_witness_psl2(q: int, i: int) -> tuple[dict, list[dict], int]:
    p, _ = prime_power(q)
    if p == 2:
        variant = "char2"
    elif q % 4 == 1:
        variant = "q1mod4"
    else:
        variant = "q3mod4"
    wit = psl2_witness(q, i, variant)
    G = wit.group
    elem = wit.element
    transcript = {
        "element_is_nontrivial": elem != 0,
        "element_order_2": G.mul(elem, elem) == 0,
        "rep_inverts_element": int(wit.coset_rep(elem)) == int(G.inv[elem]),
    }
    results = {
        "kind": "psl2",
        "q": q,
        "i": i,
        "variant": variant,
        "group": G.name,
        "element_index": elem,
        "element": G.labels[elem],
        "coset_rep": wit.coset_rep.provenance,
        "exponent": wit.exponent,
        "transcript": transcript,
        "verified": bool(wit.verified and all(transcript.values())),
    }
    table = [
        {
            "kind": "psl2",
            "q": q,
            "i": i,
            "variant": variant,
            "element": G.labels[elem],
            "verified": results["verified"],
        }
    ]
    return results, table, EXIT_OK if results["verified"] else EXIT_THEOREM_VIOLATION


def cmd_witness_wreath(base_expr: str, n: int, seed: int, cap: int) -> tuple[dict, list[dict], int]:
    S = elaborate_text(base_expr, cap)
    aut = compute_aut(S, "auto")
    rng = np.random.default_rng(seed)
    alphas = tuple(aut.all[int(j)] for j in rng.integers(0, len(aut.all), size=n))
    sigma = tuple(int(x) for x in rng.permutation(n))
    w = WreathAut(S, n, alphas, sigma)
    wit = find_inverted_witness(w)
    image = wit.wreath.apply(wit.vector)
    eq2_holds = image == tuple(int(S.inv[x]) for x in wit.vector)
    verified = bool(wit.verified and eq2_holds and any(x != 0 for x in wit.vector))
    results = {
        "kind": "wreath",
        "base": S.name,
        "n": n,
        "seed": seed,
        "sigma": list(sigma),
        "alpha_provenances": [a.provenance for a in alphas],
        "cycle_used": list(wit.cycle_used),
        "twisted_coord": wit.twisted_coord,
        "vector_indices": list(wit.vector),
        "vector": [S.labels[x] for x in wit.vector],
        "eq2_holds": eq2_holds,
        "verified": verified,
    }
    table = [
        {
            "kind": "wreath",
            "base": S.name,
            "n": n,
            "seed": seed,
            "vector": ";".join(S.labels[x] for x in wit.vector),
            "verified": verified,
        }
    ]
    return results, table, EXIT_OK if verified else EXIT_THEOREM_VIOLATION


# ---------------------------------------------------------------------------
# mappings
# ---------------------------------------------------------------------------


def cmd_mappings(expr: str, cap: int) -> tuple[dict, list[dict], int]:
    G = elaborate_text(expr, cap)
    complete = find_complete_mapping(G)
    ortho = find_orthomorphism(G)
    predicted = hall_paige_predict(G)
    results = {
        "group": G.name,
        "order": G.n,
        "hall_paige_predicts_existence": predicted,
        "complete": {
            "status": complete.status,
            "nodes": complete.nodes,
            "mapping": list(complete.mapping) if complete.mapping else None,
        },
        "orthomorphism": {
            "status": ortho.status,
            "nodes": ortho.nodes,
            "mapping": list(ortho.mapping) if ortho.mapping else None,
        },
    }
    table = [
        {
            "group": G.name,
            "kind": kind,
            "status": cert.status,
            "nodes": cert.nodes,
            "prediction": predicted,
        }
        for kind, cert in (("complete", complete), ("orthomorphism", ortho))
    ]
    indeterminate = INDETERMINATE in (complete.status, ortho.status)
    mismatch = any(
        cert.status != INDETERMINATE and (cert.status == EXISTS) != predicted
        for cert in (complete, ortho)
    )
    results["matches_prediction"] = not mismatch and not indeterminate
    if mismatch:
        code = EXIT_THEOREM_VIOLATION
    elif indeterminate:
        code = EXIT_CAP_EXCEEDED
    else:
        code = EXIT_OK
    return results, table, code


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=ORDER_CAP, help="group order cap")

    ap = argparse.ArgumentParser(
        prog="autmap",
        description="Verify complete-mapping properties of finite-group automorphisms.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "verify-theorem",
        parents=[common],
        help="exhaustively confirm that no nonsolvable catalog group has a "
        "1-complete automorphism",
    )
    p.add_argument(
        "--scope",
        nargs="*",
        default=None,
        metavar="NAME",
        help=f"catalog names (default: all nonsolvable); known: {', '.join(catalog_names())}",
    )

    p = sub.add_parser(
        "spectrum",
        parents=[common],
        help="table of k-completeness verdicts over a k range",
    )
    p.add_argument(
        "--group",
        required=True,
        help="group expression: expr := term ('x' term)*; term := atom | '(' expr ')'; "
        "atom := NAME '(' INT ')' | NAME INT | 'Q8' with NAME in C, D, S, A, SL2, "
        "PSL2, PGL2 (case-insensitive)",
    )
    p.add_argument("--k-min", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--iterate", action="store_true", help="also check the iterate maps")
    p.add_argument(
        "--all-autos",
        action="store_true",
        help="one row per automorphism instead of per Inn-coset representative",
    )

    p = sub.add_parser("witness", parents=[common], help="construct inverted-element witnesses")
    wsub = p.add_subparsers(dest="witness_kind", required=True)
    wp = wsub.add_parser("psl2", parents=[common])
    wp.add_argument("--q", type=int, required=True)
    wp.add_argument("--i", type=int, default=0)
    ww = wsub.add_parser("wreath", parents=[common])
    ww.add_argument("--base", required=True, help="group expression for the simple base")
    ww.add_argument("--n", type=int, required=True)

    p = sub.add_parser(
        "mappings",
        parents=[common],
        help="complete-mapping/orthomorphism existence vs the Sylow-2 characterization",
    )
    p.add_argument("--group", required=True, help="group expression (same grammar as spectrum)")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    t0 = time.time()
    caps = {"order_cap": args.cap}
    try:
        if args.command == "verify-theorem":
            scope = args.scope if args.scope else [e.name for e in NONSOLVABLE_ENTRIES]
            results, table, code = cmd_verify_theorem(args.scope, args.jobs)
        elif args.command == "spectrum":
            scope = [args.group]
            results, table, code = cmd_spectrum(
                args.group, args.k_min, args.k_max, args.iterate, args.all_autos,
                args.cap, args.jobs,
            )
        elif args.command == "witness":
            if args.witness_kind == "psl2":
                scope = [f"PSL2({args.q})"]
                results, table, code = cmd_witness_psl2(args.q, args.i)
            else:
                scope = [args.base]
                results, table, code = cmd_witness_wreath(
                    args.base, args.n, args.seed, args.cap
                )
        elif args.command == "mappings":
            scope = [args.group]
            results, table, code = cmd_mappings(args.group, args.cap)
        else:  # unreachable: argparse requires a command
            return EXIT_INPUT_ERROR
    except ParseError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except CapExceededError as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except TheoremViolationError as e:
        print(f"theorem-consistency violation (bug): {e}", file=sys.stderr)
        return EXIT_THEOREM_VIOLATION
    except (ValueError, KeyError, StrategyError, AutmapError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    report = build_report(
        args.command,
        results,
        table,
        scope=scope,
        seed=args.seed,
        caps=caps,
        wall_time_s=time.time() - t0,
    )
    write_report(report, args.format, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
