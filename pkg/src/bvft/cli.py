"""Command line runner: ``bvft run``, ``bvft families list``, ``bvft transform``, ``bvft report summarize``.

A run takes a JSON config, evaluates every (function, check) cell, writes one
JSON report per cell (CSV grids go to a ``grids/`` subdirectory) and a
``summary.csv`` whose rows are ordered by the config alone, so the bytes do
not depend on how many worker processes were used.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from bvft import testfns, transforms as tr, verify as V
from bvft.quadrature import QuadratureResult
from bvft.testfns import FamilySpec, ParameterError, RegistryError

log = logging.getLogger("bvft")

CHECKS = ("thm1", "thm2", "thm3", "lemma1", "prop1", "hardy", "fubini", "membership")

# formula each check exercises, written out so a summary row stands on its own
PAPER_REF = {
    "thm1": "||f_c||_1 <~ ||f'||_1 + ||T f'||_1 and ||f_s - (1/x) f(pi/(2x))||_1 <~ same",
    "thm2": "f_c(x) = -(1/x) (f')_s(x); f_c in L1 iff f' in Q0",
    "thm3": "f_s(x) = (1/x) f(pi/(2x)) + H0 script_T f'(x) + G(x) with ||G||_1 <~ ||f'||_1",
    "lemma1": "H0 script_T g(x) = (2/(pi x)) int g(t) [cos(xt) Si(xt) - sin(xt) Ci(xt)] dt",
    "prop1": "||H0 script_T g||_1 <~ ||g||_1 + ||T g||_1 for odd g",
    "hardy": "int_0^inf |g_s(x)|/x dx <~ ||g||_H1 for odd g",
    "fubini": "int_0^inf int_0^{pi/(2x)} t |f'(t)| dt dx = (pi/2) ||f'||_1",
    "membership": "H1_0 in H1_Q in Q0 in L1_0 (odd functions)",
}

SUMMARY_COLUMNS = ("function", "family", "lambda", "check", "quantity", "value", "abs_error_estimate",
                   "status", "verdict", "paper_ref")

FUBINI_TOL = 1e-6
LEMMA1_TOL = 1e-5


class ConfigError(ValueError):
    """The experiment config does not validate (usage error, exit 2)."""


@dataclass(frozen=True)
class XGrid:
    min: float
    max: float
    points_per_decade: int

    def points(self) -> np.ndarray:
        decades = math.log10(self.max / self.min)
        n = max(int(round(decades * self.points_per_decade)) + 1, 2)
        return np.geomspace(self.min, self.max, n)


@dataclass(frozen=True)
class ExperimentConfig:
    families: tuple
    x_grid: XGrid
    tolerances: dict
    checks: tuple
    output_dir: Path

    @classmethod
    def from_mapping(cls, data, base: Path | None = None) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - {"families", "x_grid", "tolerances", "checks", "output_dir"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        checks = data.get("checks")
        if not isinstance(checks, list) or not checks:
            raise ConfigError("checks must be a non-empty list")
        bad = [c for c in checks if c not in CHECKS]
        if bad:
            raise ConfigError(f"unknown checks {bad}; choose from {list(CHECKS)}")
        if len(set(checks)) != len(checks):
            raise ConfigError("checks must not repeat")

        fams = data.get("families")
        if not isinstance(fams, list) or not fams:
            raise ConfigError("families must be a non-empty list")
        specs = []
        for entry in fams:
            if isinstance(entry, str):
                entry = {"family": entry}
            try:
                specs.append(FamilySpec.from_mapping(entry))
            except (RegistryError, ParameterError, TypeError, AttributeError) as exc:
                raise ConfigError(f"bad family entry {entry!r}: {exc}") from None

        g = data.get("x_grid", {"min": 1e-2, "max": 1e2, "points_per_decade": 25})
        try:
            grid = XGrid(float(g["min"]), float(g["max"]), int(g["points_per_decade"]))
        except (KeyError, TypeError, ValueError):
            raise ConfigError("x_grid needs numeric min, max and points_per_decade") from None
        if not (grid.min > 0 and math.isfinite(grid.max) and grid.max > grid.min):
            raise ConfigError("x_grid needs 0 < min < max < inf")
        if grid.points_per_decade < 4:
            raise ConfigError("x_grid.points_per_decade must be at least 4")

        tols = dict(data.get("tolerances", {}))
        known = {"tol", "pv_ladder_depth", "dyadic_block_limit", "tail_threshold", "ratio_ceiling", "rtol"}
        if set(tols) - known:
            raise ConfigError(f"unknown tolerance keys: {sorted(set(tols) - known)}")
        try:
            prec = V.Precision.from_mapping(tols)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad tolerances: {exc}") from None
        if not (prec.outer_tol > 0 and prec.ratio_ceiling > 0 and prec.opts.tail_threshold > 0):
            raise ConfigError("tolerances must be positive")

        out = Path(data.get("output_dir", "bvft_out"))
        if not out.is_absolute() and base is not None:
            out = base / out
        return cls(tuple(specs), grid, tols, tuple(checks), out)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        return cls.from_mapping(data, base=path.parent)

    @property
    def precision(self) -> V.Precision:
        return V.Precision.from_mapping(self.tolerances)

    def cells(self) -> list[tuple[dict, str]]:
        out = []
        for spec in self.families:
            for params in spec.parameter_grid:
                member = {"family": spec.family_id, "params": dict(params)}
                out.extend((member, check) for check in self.checks)
        return out


# --------------------------------------------------------------------------
# cells


def _stem(f: testfns.TestFunction) -> str:
    return f"{f.id}_lam{f.lam!r}"


def _qr_row(name, r: QuadratureResult, verdict: str = "") -> dict:
    return {"quantity": name, "value": r.value, "abs_error_estimate": r.abs_error_estimate,
            "status": r.status.value, "verdict": verdict or V.verdict_of(r).value}


def _plain_row(name, value: float, verdict: str, status: str = "") -> dict:
    return {"quantity": name, "value": value, "abs_error_estimate": "", "status": status, "verdict": verdict}


def _ratio_row(name, r: V.Ratio) -> dict:
    v = r.verdict.value if r.below_ceiling or r.verdict is not V.Tri.YES else "no"
    return {"quantity": name, "value": r.value, "abs_error_estimate": "", "status": "", "verdict": v}


def _combined(verdicts) -> str:
    vs = list(verdicts)
    if any(v == "no" for v in vs):
        return "no"
    return "yes" if all(v == "yes" for v in vs) else "undecided"


GRID_DIR = "grids"


def _write_grid(outdir: Path, name: str, grid: tr.TransformGrid) -> str:
    """Write a grid sidecar under ``grids/``; returns its path relative to the run directory."""
    (outdir / GRID_DIR).mkdir(exist_ok=True)
    grid.to_csv(outdir / GRID_DIR / name)
    return f"{GRID_DIR}/{name}"


def run_cell(member: dict, check: str, points: np.ndarray, tolerances: dict, outdir: Path) -> dict:
    """Evaluate one (function, check) cell and write its JSON report and grids."""
    prec = V.Precision.from_mapping(tolerances)
    f = testfns.registry_get(member["family"], member["params"])
    stem = f"{_stem(f)}__{check}"
    norms, ratios, grids, rows = {}, {}, {}, []
    extra = {}

    if check == "thm1":
        res = V.check_thm1(f, prec)
        norms = res.report.to_dict()
        norms["l1_F"] = res.l1_F.to_dict()
        ratios = {"r_c": res.r_c.value, "r_s": res.r_s.value}
        rows = [_ratio_row("r_c", res.r_c), _ratio_row("r_s", res.r_s)]
    elif check == "thm2":
        res = V.check_thm2(f, points, prec)
        norms = {"l1_ft_cosine": res.l1_ft_cosine.to_dict(), "q0_fprime": res.q0_fprime.to_dict()}
        ratios = {"max_scaled_residual": res.max_scaled_residual}
        grids["residual"] = _write_grid(outdir, f"{stem}__residual.csv", res.residual)
        extra = {"verdict_cosine": res.verdict_cosine.value, "verdict_q0": res.verdict_q0.value}
        rows = [_qr_row("l1_ft_cosine", res.l1_ft_cosine), _qr_row("q0_fprime", res.q0_fprime),
                _plain_row("max_scaled_residual", res.max_scaled_residual,
                           "yes" if res.max_scaled_residual <= 1e-6 else "no"),
                _plain_row("verdicts_agree", float(res.agree), "yes" if res.agree else "no")]
    elif check == "thm3":
        res = V.check_thm3(f, points, prec)
        norms = {"l1_G": res.l1_G.to_dict(), "l1_F": res.l1_F.to_dict(), "l1_fprime": res.l1_fprime.to_dict()}
        ratios = {"ratio_G": res.ratio_G}
        for name in ("grid", "leading_term", "h0t_term", "g_residual", "f_residual"):
            grids[name] = _write_grid(outdir, f"{stem}__{name}.csv", getattr(res, name))
        extra = {"reconstruction_exact": res.exact}
        below = math.isfinite(res.ratio_G) and res.ratio_G < prec.ratio_ceiling
        rv = V.verdict_of(res.l1_G).value
        rows = [_qr_row("l1_G", res.l1_G), _qr_row("l1_F", res.l1_F),
                _plain_row("ratio_G", res.ratio_G, rv if below or rv != "yes" else "no"),
                _plain_row("reconstruction_exact", float(res.exact), "yes" if res.exact else "no")]
    elif check == "lemma1":
        res = V.check_lemma1(f, points, prec)
        grids["cisi"] = _write_grid(outdir, f"{stem}__cisi.csv", res.cisi)
        grids["nested"] = _write_grid(outdir, f"{stem}__nested.csv", res.nested)
        ratios = {"max_abs_difference": res.max_abs_difference}
        rows = [_plain_row("max_abs_difference", res.max_abs_difference,
                           "yes" if res.max_abs_difference <= LEMMA1_TOL else "no")]
    elif check in ("prop1", "hardy"):
        res = (V.check_prop1 if check == "prop1" else V.check_hardy)(f, prec)
        norms = {"numerator": res.numerator.to_dict(), "denominator": res.denominator.to_dict()}
        ratios = {check: res.value}
        rows = [_ratio_row(check, res)]
    elif check == "fubini":
        res = V.check_fubini(f, prec)
        norms = {"lhs": res.lhs.to_dict(), "rhs": res.rhs.to_dict()}
        ratios = {"relative_residual": res.residual}
        ok = res.lhs.converged and res.rhs.converged
        rows = [_plain_row("relative_residual", res.residual,
                           "yes" if ok and res.residual <= FUBINI_TOL else ("undecided" if not ok else "no"))]
    elif check == "membership":
        res = V.classify_membership(f.fprime, prec=V.membership_precision(prec), name=f.label + "'")
        d = res.to_dict()
        norms = d["evidence"]
        extra = {k: d[k] for k in res.CHAIN}
        extra["monotone"] = res.monotone
        rows = [_plain_row(k, "", d[k]) for k in res.CHAIN]
        rows.append(_plain_row("monotone", float(res.monotone), "yes" if res.monotone else "no"))
    else:  # pragma: no cover - guarded by config validation
        raise ValueError(check)

    verdict = _combined(r["verdict"] for r in rows)
    report = {"function": {**testfns.to_json(f), "label": f.label}, "check": check,
              "paper_ref": PAPER_REF[check], "norms": norms, "ratios": ratios, "verdict": verdict,
              "details": extra, "grids": grids}
    (outdir / f"{stem}.json").write_text(json.dumps(report, indent=2, default=_json_default) + "\n")
    for r in rows:
        r.update(function=f.label, family=f.id, **{"lambda": f.lam}, check=check, paper_ref=PAPER_REF[check])
    return {"report": f"{stem}.json", "rows": rows}


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")


def _cell_job(args):
    return run_cell(*args)


def worker_count() -> int:
    raw = os.environ.get("BVFT_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"BVFT_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ConfigError("BVFT_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def summary_csv(results: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for res in results:
        for row in res["rows"]:
            w.writerow([_fmt(row[c]) for c in SUMMARY_COLUMNS])
    return buf.getvalue()


def run(config: ExperimentConfig, workers: int | None = None) -> list[dict]:
    """Evaluate every cell and write reports; results come back in config order."""
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    points = config.x_grid.points()
    jobs = [(member, check, points, config.tolerances, out) for member, check in config.cells()]
    n = worker_count() if workers is None else workers
    n = max(1, min(n, len(jobs)))
    log.info("%d cells on %d worker(s)", len(jobs), n)
    if n == 1:
        results = [_cell_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            # map keeps submission order, so the summary is independent of scheduling
            results = list(pool.map(_cell_job, jobs))
    (out / "summary.csv").write_text(summary_csv(results))
    return results


def summarize(directory) -> str:
    """Compact text view of a run directory's summary table."""
    path = Path(directory) / "summary.csv"
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    lines = []
    width = max((len(r["function"]) for r in rows), default=8)
    for r in rows:
        lines.append(f"{r['function']:<{width}}  {r['check']:<10} {r['quantity']:<22} "
                     f"{r['value']:<24} {r['verdict']}")
    counts = {}
    for r in rows:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    lines.append("verdicts: " + ", ".join(f"{k}={counts[k]}" for k in sorted(counts)))
    return "\n".join(lines)


# --------------------------------------------------------------------------
# argparse front end


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bvft", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run the checks listed in a JSON config")
    r.add_argument("--config", required=True, help="path to the JSON experiment config")

    fam = sub.add_parser("families", help="inspect the function registry")
    fam_sub = fam.add_subparsers(dest="action", required=True)
    fam_sub.add_parser("list", help="list shipped families")

    t = sub.add_parser("transform", help="evaluate one Fourier transform value")
    t.add_argument("--family", required=True)
    t.add_argument("--kind", choices=("cosine", "sine"), required=True)
    t.add_argument("--x", type=float, required=True)
    t.add_argument("--lambda", dest="lam", type=float, default=1.0)
    t.add_argument("--tol", type=float, default=tr.DEFAULT_TOL)

    rep = sub.add_parser("report", help="work with finished runs")
    rep_sub = rep.add_subparsers(dest="action", required=True)
    s = rep_sub.add_parser("summarize", help="print the summary table of a run directory")
    s.add_argument("directory")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            cfg = ExperimentConfig.load(args.config)
            results = run(cfg)
            print(f"{len(results)} reports written to {cfg.output_dir}")
        elif args.command == "families":
            for fid in testfns.list_families():
                print(f"{fid}\t{testfns.describe(fid)}")
        elif args.command == "transform":
            if args.x < 0 or not math.isfinite(args.x):
                raise ConfigError("--x must be a finite non-negative number")
            try:
                f = testfns.registry_get(args.family, {"lambda": args.lam})
            except (RegistryError, ParameterError) as exc:
                raise ConfigError(str(exc)) from None
            fn = tr.fourier_cosine if args.kind == "cosine" else tr.fourier_sine
            r = fn(f, args.x, args.tol)
            print(json.dumps({"function": f.label, "kind": args.kind, "x": args.x, **r.to_dict()}))
        elif args.command == "report":
            print(summarize(args.directory))
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"bvft: error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"bvft: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        log.exception("internal failure")
        print(f"bvft: internal failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
