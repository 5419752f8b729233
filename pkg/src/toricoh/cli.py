"""Command-line driver and JSON document formats.

Input documents carry either a fan or a ring (grading matrix) plus a
square-free ideal; indices are 1-based in documents and 0-based inside the
library.  Reports are emitted with sorted keys and lexicographically
ordered arrays so reruns are byte-identical.

Exit codes: 0 success, 2 invalid input, 3 finiteness violation,
4 internal cross-check failure.

The environment variable TORICOH_THREADS caps worker parallelism inside
API calls; TORICOH_FAULT_INJECT=sigma is a testing hook that corrupts one
intermediate result so the --verify error path can be exercised.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .api import (
    FreeModule,
    MonomialQuotient,
    UserBetti,
    bound_S,
    bound_module,
    ext_truncated_dim,
    hB_dim,
    sheaf_dim,
    sigma_dual,
    sigma_sheaf,
)
from .cech import sheaf_fine_dims, sigma_direct
from .cones import FinitenessError, f_bound, finiteness_check, finiteness_witness, separating_hyperplane
from .exact_linalg import IntMatrix, is_prime
from .grading import build_grading, grading_from_phi
from .monomials import minimalize
from .tables import SigmaTable, betti_table, sigma_table
from .toric import Fan, ToricData, cox_data, nerve_cohomology_dims

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_FINITENESS = 3
EXIT_CROSSCHECK = 4


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input documents


def normalize_input(doc: dict) -> dict:
    """Validated, canonically ordered copy of an input document;
    idempotent, which gives byte-stable round-trips through emit/parse."""
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    known = {"fan", "ring", "ideal", "module", "char"}
    unknown = set(doc) - known
    if unknown:
        raise InputError("unknown top-level keys: %s" % sorted(unknown))
    out = {}
    if ("fan" in doc) == ("ring" in doc):
        raise InputError("exactly one of 'fan' or 'ring' is required")
    if "fan" in doc:
        fan = doc["fan"]
        if set(fan) != {"dim", "rays", "max_cones"}:
            raise InputError("fan needs exactly: dim, rays, max_cones")
        out["fan"] = {
            "dim": int(fan["dim"]),
            "rays": [[int(c) for c in v] for v in fan["rays"]],
            "max_cones": sorted(sorted(int(i) for i in c) for c in fan["max_cones"]),
        }
        if any(i < 1 for c in out["fan"]["max_cones"] for i in c):
            raise InputError("cone indices are 1-based")
        if "ideal" in doc:
            raise InputError("an explicit ideal is only allowed with a ring")
    else:
        ring = doc["ring"]
        if "n" not in ring:
            raise InputError("ring needs a variable count n")
        n = int(ring["n"])
        rout = {"n": n}
        if ("rho" in ring) == ("phi" in ring):
            raise InputError("ring needs exactly one of 'rho' or 'phi'")
        if "rho" in ring:
            if set(ring) - {"n", "rho"}:
                raise InputError("unknown ring keys: %s" % sorted(set(ring) - {"n", "rho"}))
            rout["rho"] = [[int(c) for c in row] for row in ring["rho"]]
            if len(rout["rho"]) != n:
                raise InputError("rho needs one row per variable")
        else:
            if set(ring) - {"n", "phi", "torsion"}:
                raise InputError("unknown ring keys: %s" % sorted(set(ring) - {"n", "phi", "torsion"}))
            rout["phi"] = [[int(c) for c in row] for row in ring["phi"]]
            rout["torsion"] = [int(t) for t in ring.get("torsion", [])]
            if any(len(row) != n for row in rout["phi"]):
                raise InputError("phi rows must have length n")
        out["ring"] = rout
        if "ideal" not in doc:
            raise InputError("ring input requires an ideal")
        gens = [[int(e) for e in g] for g in doc["ideal"]["gens"]]
        if any(len(g) != n for g in gens):
            raise InputError("ideal generators must be exponent vectors of length n")
        if any(e not in (0, 1) for g in gens for e in g):
            raise InputError("ideal generators must be square-free (0/1 exponents)")
        out["ideal"] = {"gens": sorted(gens)}
    if "module" in doc:
        mod = doc["module"]
        keys = set(mod)
        if len(keys) != 1 or not keys <= {"shifts", "quotient", "betti"}:
            raise InputError("module needs exactly one of: shifts, quotient, betti")
        if "shifts" in mod:
            out["module"] = {"shifts": sorted([int(c) for c in a] for a in mod["shifts"])}
        elif "quotient" in mod:
            q = [[int(e) for e in g] for g in mod["quotient"]]
            if any(e not in (0, 1) for g in q for e in g):
                raise InputError("quotient generators must be square-free")
            out["module"] = {"quotient": sorted(q)}
        else:
            rows = []
            for row in mod["betti"]:
                rows.append(
                    {
                        "j": int(row["j"]),
                        "alpha": [int(c) for c in row["alpha"]],
                        "mult": int(row.get("mult", 1)),
                    }
                )
            out["module"] = {"betti": sorted(rows, key=lambda r: (r["j"], r["alpha"]))}
    char = int(doc.get("char", 0))
    if char != 0 and not is_prime(char):
        raise InputError("char must be 0 or a prime")
    out["char"] = char
    return out


def emit_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def parse_document(text: str) -> dict:
    return json.loads(text)


def _digest(doc: dict) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


class Context:
    """Everything a command needs, decoded from an input document."""

    def __init__(self, doc: dict, char_override=None):
        self.doc = normalize_input(doc)
        if char_override is not None:
            if char_override != 0 and not is_prime(char_override):
                raise InputError("char must be 0 or a prime")
            self.doc["char"] = char_override
        self.char = self.doc["char"]
        self.toric: ToricData | None = None
        if "fan" in self.doc:
            f = self.doc["fan"]
            try:
                fan = Fan(
                    f["dim"],
                    tuple(tuple(v) for v in f["rays"]),
                    tuple(tuple(i - 1 for i in c) for c in f["max_cones"]),
                )
                self.toric = cox_data(fan)
            except ValueError as e:
                raise InputError(str(e))
            self.grading = self.toric.grading
            self.ideal = self.toric.ideal
            if self.ideal.is_unit:
                raise InputError(
                    "single affine chart: the irrelevant ideal is the unit ideal"
                )
        else:
            ring = self.doc["ring"]
            n = ring["n"]
            try:
                if "rho" in ring:
                    ncols = len(ring["rho"][0]) if ring["rho"] else 0
                    self.grading = build_grading(IntMatrix.from_rows(ring["rho"], cols=ncols))
                else:
                    self.grading = grading_from_phi(n, ring["phi"], tuple(ring["torsion"]))
                self.ideal = minimalize(n, self.doc["ideal"]["gens"])
            except ValueError as e:
                raise InputError(str(e))
            if self.ideal.is_zero or self.ideal.is_unit:
                raise InputError("the ideal must be nonzero and proper")

    def delta(self, coords):
        g = self.grading
        want = g.free_rank + len(g.torsion)
        if len(coords) != want:
            raise InputError(
                "delta needs %d coordinates (%d free + %d torsion residues)"
                % (want, g.free_rank, len(g.torsion))
            )
        return g.degree(coords[: g.free_rank], coords[g.free_rank:])

    def module(self):
        spec = self.doc.get("module")
        if spec is None:
            return None
        if "shifts" in spec:
            return FreeModule(tuple(self.delta(a) for a in spec["shifts"]))
        if "quotient" in spec:
            return MonomialQuotient(minimalize(self.ideal.n, spec["quotient"]))
        rows = [(r["j"], self.delta(r["alpha"]), r["mult"]) for r in spec["betti"]]
        return UserBetti(betti_table(rows))

    def local_sigma(self):
        return sigma_dual(self.ideal, self.char)

    def sheaf_sigma(self):
        assert self.toric is not None
        return sigma_sheaf(self.toric, self.char)

    def basis_echo(self):
        g = self.grading
        return {
            "free_rows": [list(r) for r in g.phi_free.entries],
            "torsion_rows": [list(r) for r in g.phi_tors.entries],
            "torsion_orders": list(g.torsion),
        }


def _sigma_out(table: SigmaTable):
    return {
        str(i): [{"I": [v + 1 for v in subset], "dim": dim} for subset, dim in row]
        for i, row in table.entries
    }


def _report(ctx: Context, operation: str, results: dict) -> dict:
    return {
        "tool": "toricoh",
        "version": __version__,
        "operation": operation,
        "characteristic": ctx.char,
        "input_digest": _digest(ctx.doc),
        "basis": ctx.basis_echo(),
        "results": results,
    }


def _fault(name):
    return os.environ.get("TORICOH_FAULT_INJECT", "") == name


def _corrupt_sigma(table: SigmaTable) -> SigmaTable:
    mapping = table.mapping()
    top = max(mapping)
    mapping[top + 1] = {frozenset([0]): 1}
    return sigma_table(table.n, table.kind, table.source + "+fault", mapping)


# ---------------------------------------------------------------------------
# commands


def cmd_sigma(ctx: Context, verify: bool) -> tuple[dict, int]:
    table = ctx.local_sigma()
    results = {"sigma_local": _sigma_out(table)}
    if ctx.toric is not None:
        results["sigma_sheaf"] = _sigma_out(ctx.sheaf_sigma())
    code = EXIT_OK
    if verify:
        if _fault("sigma"):
            table = _corrupt_sigma(table)
        direct = sigma_direct(ctx.ideal, ctx.char)
        if table != direct:
            results["verify"] = {
                "status": "mismatch",
                "invariant": "dual and direct support tables agree",
            }
            code = EXIT_CROSSCHECK
        else:
            results["verify"] = {"status": "ok", "invariant": "dual and direct support tables agree"}
    return _report(ctx, "sigma", results), code


def cmd_cohom(ctx: Context, i: int, delta_coords, profile: bool) -> tuple[dict, int]:
    delta = ctx.delta(delta_coords)
    results = {"i": i, "delta": list(delta_coords)}
    if ctx.toric is not None:
        results["kind"] = "sheaf"
        results["dimension"] = sheaf_dim(ctx.toric, i, delta, ctx.char)
        local_i = i + 1 if i >= 1 else None
    else:
        results["kind"] = "local"
        results["dimension"] = hB_dim(ctx.ideal, ctx.grading, i, delta, ctx.char)
        local_i = i
    if profile and local_i:
        sigma = ctx.local_sigma()
        limit = bound_S(ctx.grading, sigma, local_i, delta)
        results["bound"] = limit
        results["ell_profile"] = [
            [ell, ext_truncated_dim(ctx.ideal, ctx.grading, local_i, delta, ell, ctx.char, sigma)]
            for ell in range(0, limit + 1)
        ]
    return _report(ctx, "cohom", results), EXIT_OK


def cmd_bound(ctx: Context, i: int, delta_coords) -> tuple[dict, int]:
    delta = ctx.delta(delta_coords)
    if ctx.toric is not None:
        sigma = ctx.sheaf_sigma()
    else:
        sigma = ctx.local_sigma()
    module = ctx.module()
    results = {"i": i, "delta": list(delta_coords)}
    if module is None:
        results["bound"] = bound_S(ctx.grading, sigma, i, delta)
        breakdown = []
        for subset, _dim in sigma.row(i).items():
            for j in sorted(subset):
                breakdown.append(
                    {
                        "I": [v + 1 for v in sorted(subset)],
                        "j": j + 1,
                        "f": f_bound(ctx.grading, subset, j, delta),
                    }
                )
        results["breakdown"] = sorted(breakdown, key=lambda r: (r["I"], r["j"]))
    else:
        results["bound"] = bound_module(ctx.grading, sigma, i, delta, module, ctx.char)
        if isinstance(module, MonomialQuotient):
            from .api import module_betti_levels

            levels = module_betti_levels(ctx.grading, module, ctx.char)
            results["betti"] = {
                str(j): sorted([list(a.free) + list(a.residues) for a in alphas])
                for j, alphas in levels.items()
            }
    return _report(ctx, "bound", results), EXIT_OK


def cmd_finiteness(ctx: Context) -> tuple[dict, int]:
    tables = [ctx.local_sigma()]
    if ctx.toric is not None:
        tables.append(ctx.sheaf_sigma())
    seen = {}
    for table in tables:
        for i, row in table.entries:
            for subset, _dim in row:
                seen[frozenset(subset)] = None
    verdicts = []
    for subset in sorted(seen, key=lambda s: (len(s), tuple(sorted(s)))):
        ok = finiteness_check(ctx.grading, subset)
        row = {"I": [v + 1 for v in sorted(subset)], "finite": ok}
        if not ok:
            w = finiteness_witness(ctx.grading, subset)
            row["certificate"] = list(w)
            if ctx.toric is not None:
                h = separating_hyperplane(ctx.toric.fan, subset)
                row["hyperplane"] = list(h) if h is not None else None
        verdicts.append(row)
    return _report(ctx, "finiteness", {"verdicts": verdicts}), EXIT_OK


def cmd_oracle_check(ctx: Context) -> tuple[dict, int]:
    checks = []
    ok_all = True
    dual = ctx.local_sigma()
    if _fault("sigma"):
        dual = _corrupt_sigma(dual)
    direct = sigma_direct(ctx.ideal, ctx.char)
    ok = dual == direct
    checks.append({"check": "dual and direct support tables agree", "status": "ok" if ok else "mismatch"})
    ok_all &= ok
    if ctx.toric is not None:
        n = ctx.toric.fan.n_rays
        agree = True
        for mask in range(1 << n):
            subset = frozenset(v for v in range(n) if mask >> v & 1)
            if nerve_cohomology_dims(ctx.toric, subset, ctx.char) != sheaf_fine_dims(
                ctx.toric, subset, ctx.char
            ):
                agree = False
                break
        checks.append({"check": "nerve and restricted complex dimensions agree", "status": "ok" if agree else "mismatch"})
        ok_all &= agree
    return (
        _report(ctx, "oracle-check", {"checks": checks}),
        EXIT_OK if ok_all else EXIT_CROSSCHECK,
    )


# ---------------------------------------------------------------------------
# entry point


def _parse_delta(text):
    if text is None:
        raise InputError("--delta is required for this command")
    try:
        return [int(t) for t in text.split(",") if t != ""]
    except ValueError:
        raise InputError("--delta must be a comma-separated integer list")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="toricoh",
        description="Exact cohomology with monomial supports and on toric varieties.",
    )
    ap.add_argument("command", choices=["sigma", "cohom", "bound", "finiteness", "oracle-check"])
    ap.add_argument("input", help="input JSON document")
    ap.add_argument("--i", type=int, default=None, help="cohomological index")
    ap.add_argument("--delta", default=None, help="coarse degree, comma separated")
    ap.add_argument("--ell", type=int, default=None, help="truncation level for the profile")
    ap.add_argument("--char", type=int, default=None, help="field characteristic (0 or prime)")
    ap.add_argument("--verify", action="store_true", help="cross-check with the direct path")
    ap.add_argument("--module", default=None, help="module document for bound")
    ap.add_argument("--out", default=None, help="write the report here instead of stdout")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.input) as fh:
            doc = parse_document(fh.read())
        if args.module is not None:
            with open(args.module) as fh:
                mdoc = parse_document(fh.read())
            if set(mdoc) - {"module"}:
                raise InputError("a module document holds a single 'module' key")
            doc = dict(doc)
            doc["module"] = mdoc["module"]
        ctx = Context(doc, char_override=args.char)
        if args.command == "sigma":
            report, code = cmd_sigma(ctx, args.verify)
        elif args.command == "cohom":
            if args.i is None:
                raise InputError("--i is required for cohom")
            report, code = cmd_cohom(ctx, args.i, _parse_delta(args.delta), profile=args.ell is not None or args.verify)
        elif args.command == "bound":
            if args.i is None:
                raise InputError("--i is required for bound")
            report, code = cmd_bound(ctx, args.i, _parse_delta(args.delta))
        elif args.command == "finiteness":
            report, code = cmd_finiteness(ctx)
        else:
            report, code = cmd_oracle_check(ctx)
    except InputError as e:
        print("toricoh: invalid input: %s" % e, file=sys.stderr)
        return EXIT_INVALID_INPUT
    except FinitenessError as e:
        payload = {
            "tool": "toricoh",
            "version": __version__,
            "error": "finiteness",
            "I": sorted(i + 1 for i in e.subset),
            "certificate": list(e.witness) if e.witness is not None else None,
        }
        print(emit_document(payload), end="")
        print("toricoh: %s" % e, file=sys.stderr)
        return EXIT_FINITENESS
    except (OSError, json.JSONDecodeError) as e:
        print("toricoh: invalid input: %s" % e, file=sys.stderr)
        return EXIT_INVALID_INPUT
    text = emit_document(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return code


if __name__ == "__main__":
    sys.exit(main())
