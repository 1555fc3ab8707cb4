"""Command-line surface: spectra, plot-ready curves, verification, sweeps.

Commands: spectrum, basis, potential, wavefunction, verify, sweep.
Curves are written as CSV (header x,V,chi,prob), everything else as JSON.
Every output embeds a run manifest with the resolved parameters so that a
run can be reproduced exactly.  Exit codes: 0 success, 1 verification or
IO failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any

import numpy as np

from . import __version__
from .fock import SubspaceLabel, subspace_basis
from .hamiltonian import ModeFrequencies, build_hamiltonian
from .heun import (
    Branch,
    bhe_operator_residual,
    bhe_params,
    bhe_standard_residual,
    fock_to_rho_polynomial,
)
from .fdoracle import FdConfig, contains_eigenvalue, suggest_domain
from .schroedinger import (
    certification_grid,
    eval_potential,
    eval_wavefunction,
    potential_spec,
    schrodinger_residual,
    split_sextic,
    wavefunction_spec,
)
from .spectra import eig_sym

BHE_RTOL = 1e-10
RESIDUAL_TOL = 1e-6
RESIDUAL_MIN_ORDER = 3.5


def fmt(x: float) -> str:
    return f"{x:.15g}"


def _round15(obj: Any) -> Any:
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round15(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round15(v) for v in obj]
    return obj


@dataclass
class RunManifest:
    command: str
    params: dict[str, Any]
    version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "params": _round15(self.params),
            "version": self.version,
            "timestamp": self.timestamp,
        }


class UsageError(Exception):
    pass


def parse_w(text: str) -> ModeFrequencies:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--w expects three comma-separated numbers, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"cannot parse --w {text!r}: {exc}") from None
    return ModeFrequencies(*vals)


def parse_b(text: str) -> Fraction:
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --b {text!r}: {exc}") from None
    if frac <= 0:
        raise UsageError(f"--b must be positive, got {text!r}")
    return frac


def parse_branch(text: str) -> Branch:
    try:
        return Branch(text)
    except ValueError:
        raise UsageError(f"--branch must be plus or minus, got {text!r}") from None


def _write_json(payload: dict[str, Any], out: str | None) -> None:
    text = json.dumps(_round15(payload), indent=2)
    if out is None:
        print(text)
    else:
        try:
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise IOError(f"cannot write {out}: {exc}") from exc


def _write_csv(
    manifest: RunManifest, rows: list[tuple[float, float, float, float]], out: str | None
) -> None:
    lines = ["# manifest " + json.dumps(manifest.as_dict(), separators=(",", ":"))]
    lines.append("x,V,chi,prob")
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise IOError(f"cannot write {out}: {exc}") from exc


def _spectrum_payload(freqs: ModeFrequencies, label: SubspaceLabel) -> dict[str, Any]:
    ham = build_hamiltonian(freqs, label)
    spec = eig_sym(ham)
    basis = subspace_basis(label)
    return {
        "label": {"l": label.ell, "m": label.m, "k": label.k, "dim": label.dim},
        "basis": [[s.n_a, s.n_b, s.n_c] for s in basis],
        "eigenvalues": [float(v) for v in spec.eigenvalues],
        "eigenvectors": [list(map(float, spec.eigenvectors[:, i])) for i in range(spec.dim)],
    }


def cmd_spectrum(args: argparse.Namespace) -> int:
    freqs = parse_w(args.w)
    label = SubspaceLabel(args.l, args.m)
    manifest = RunManifest("spectrum", {"l": args.l, "m": args.m, "w": args.w})
    payload = {"manifest": manifest.as_dict(), **_spectrum_payload(freqs, label)}
    _write_json(payload, args.out)
    return 0


def cmd_basis(args: argparse.Namespace) -> int:
    label = SubspaceLabel(args.l, args.m)
    manifest = RunManifest("basis", {"l": args.l, "m": args.m})
    payload = {
        "manifest": manifest.as_dict(),
        "label": {"l": label.ell, "m": label.m, "k": label.k, "dim": label.dim},
        "basis": [[s.n_a, s.n_b, s.n_c] for s in subspace_basis(label)],
    }
    _write_json(payload, args.out)
    return 0


def _resolve_eigenpair(freqs, label, p_index):
    """Energy index p follows the worked tables: p = 1 is the largest eigenvalue."""
    ham = build_hamiltonian(freqs, label)
    spec = eig_sym(ham)
    if not (1 <= p_index <= label.dim):
        raise UsageError(f"--p must lie in 1..{label.dim}, got {p_index}")
    idx = label.dim - p_index
    return spec.pair(idx)


def _curve_rows(args, freqs, label, bfrac, branch):
    energy, vec = _resolve_eigenpair(freqs, label, args.p)
    phi = fock_to_rho_polynomial(label, vec, branch)
    wf = wavefunction_spec(bfrac, freqs, label, phi)
    shifted = bool(getattr(args, "shifted", False))
    if shifted:
        if bfrac != Fraction(1, 2):
            raise UsageError("--shifted applies to b=1/2 only")
        vspec, eps_map = split_sextic(freqs, label, branch)
        lam = eps_map(energy)
    else:
        vspec = potential_spec(bfrac, freqs, label, energy, branch)
        lam = 0.0
    rows = []
    if args.points > 0:
        xs = np.linspace(args.xmin, args.xmax, args.points)
        if xs[0] <= 0.0:
            raise UsageError("--xmin must be > 0")
        vvals = np.asarray(eval_potential(vspec, xs))
        cvals = np.asarray(eval_wavefunction(wf, xs))
        rows = [
            (float(x), float(v), float(c), float(c * c))
            for x, v, c in zip(xs, vvals, cvals)
        ]
        if not all(np.isfinite(r).all() for r in map(np.asarray, rows)):
            raise IOError("non-finite values in curve output")
    return rows, energy, lam, shifted


def cmd_potential(args: argparse.Namespace) -> int:
    freqs = parse_w(args.w)
    label = SubspaceLabel(args.l, args.m)
    bfrac = parse_b(args.b)
    branch = parse_branch(args.branch)
    rows, energy, lam, shifted = _curve_rows(args, freqs, label, bfrac, branch)
    manifest = RunManifest(
        args.command,
        {
            "l": args.l, "m": args.m, "w": args.w, "b": str(bfrac),
            "branch": branch.value, "p": args.p, "xmin": args.xmin,
            "xmax": args.xmax, "points": args.points, "shifted": shifted,
            "energy": energy, "lambda": lam,
        },
    )
    if shifted:
        print(f"epsilon(E) = {fmt(lam)}", file=sys.stderr)
    if args.format == "json":
        payload = {
            "manifest": manifest.as_dict(),
            "columns": ["x", "V", "chi", "prob"],
            "rows": [list(r) for r in rows],
        }
        _write_json(payload, args.out)
    else:
        _write_csv(manifest, rows, args.out)
    return 0


def _verify_one(freqs, label, bfrac, branch, energy_override=None, oracle=True,
                oracle_points=None):
    """Certification for every eigenpair of one (w, l, m, b, branch) tuple."""
    ham = build_hamiltonian(freqs, label)
    spec = eig_sym(ham)
    checks = []
    for i in range(label.dim):
        energy, vec = spec.pair(i)
        used_energy = energy if energy_override is None else energy_override
        phi = fock_to_rho_polynomial(label, vec, branch)
        scale = max(abs(x) for x in phi.coeffs)
        op_res = bhe_operator_residual(freqs, label, used_energy, phi)
        std_res = bhe_standard_residual(
            bhe_params(freqs, label, used_energy, branch), phi
        )
        op_rel = float(np.max(np.abs(op_res))) / scale
        std_rel = float(np.max(np.abs(std_res))) / scale
        wf = wavefunction_spec(bfrac, freqs, label, phi)
        if bfrac == Fraction(1, 2):
            vspec, eps_map = split_sextic(freqs, label, branch)
            lam = eps_map(used_energy)
        else:
            vspec = potential_spec(bfrac, freqs, label, used_energy, branch)
            lam = 0.0
        grid = certification_grid(vspec, wf, lam)
        report = schrodinger_residual(vspec, wf, lam, grid)
        entry = {
            "p": label.dim - i,
            "energy": energy,
            "energy_used": used_energy,
            "lambda": lam,
            "bhe_operator_residual": op_rel,
            "bhe_standard_residual": std_rel,
            "schrodinger_residual": report.residual,
            "refinement_order": report.order,
        }
        ok = (
            op_rel <= BHE_RTOL
            and std_rel <= BHE_RTOL
            and report.residual <= RESIDUAL_TOL
            and report.order >= RESIDUAL_MIN_ORDER
        )
        if oracle:
            x_min, x_max = suggest_domain(vspec, lam)
            if oracle_points is None:
                # aim for h ~ 2.5e-3 so singular boundaries stay resolved
                points = int(min(max((x_max - x_min) / 2.5e-3, 4000), 24000))
            else:
                points = oracle_points
            cfg = FdConfig(x_min, x_max, points)
            cont = contains_eigenvalue(vspec, cfg, lam)
            entry["oracle_nearest"] = cont.nearest
            entry["oracle_richardson_gap"] = cont.richardson_gap
            entry["oracle_hit"] = cont.hit
            ok = ok and cont.hit
        entry["pass"] = ok
        checks.append(entry)
    return checks


def _b2_zero_search(freqs, label, branch):
    """Search w3 values that null the x^(-3/2) term of the b=2 potential.

    The coefficient (A B - 2 D)/(2 b^2) depends on w3 both directly and
    through the eigenvalue, so each energy index gets a bisection search
    over w3 around the given frequencies.
    """

    def coeff(w3: float, idx: int) -> float:
        f = ModeFrequencies(freqs.w1, freqs.w2, w3)
        spectrum = eig_sym(build_hamiltonian(f, label))
        energy = float(spectrum.eigenvalues[idx])
        vspec = potential_spec(Fraction(2), f, label, energy, branch)
        return vspec.terms[1][1]

    results = []
    for idx in range(label.dim):
        lo, hi = freqs.w3 - 10.0, freqs.w3 + 10.0
        flo, fhi = coeff(lo, idx), coeff(hi, idx)
        found = None
        if flo * fhi <= 0.0:
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fmid = coeff(mid, idx)
                if flo * fmid <= 0.0:
                    hi, fhi = mid, fmid
                else:
                    lo, flo = mid, fmid
            found = 0.5 * (lo + hi)
        results.append(
            {
                "p": label.dim - idx,
                "w3_zeroing_term": found,
                "residual_coefficient": None if found is None else coeff(found, idx),
            }
        )
    return results


def cmd_verify(args: argparse.Namespace) -> int:
    freqs = parse_w(args.w)
    label = SubspaceLabel(args.l, args.m)
    bfrac = parse_b(args.b)
    branch = parse_branch(args.branch)
    checks = _verify_one(
        freqs, label, bfrac, branch,
        energy_override=args.energy_override,
        oracle=not args.no_oracle,
    )
    all_pass = all(c["pass"] for c in checks)
    manifest = RunManifest(
        "verify",
        {
            "l": args.l, "m": args.m, "w": args.w, "b": str(bfrac),
            "branch": branch.value, "energy_override": args.energy_override,
        },
    )
    payload = {"manifest": manifest.as_dict(), "checks": checks, "pass": all_pass}
    if args.find_b2_zero:
        payload["b2_zero_search"] = _b2_zero_search(freqs, label, branch)
    _write_json(payload, args.out)
    return 0 if all_pass else 1


def cmd_wavefunction(args: argparse.Namespace) -> int:
    return cmd_potential(args)


def cmd_sweep(args: argparse.Namespace) -> int:
    freqs = parse_w(args.w)
    if args.lmax > 20 or args.mmax > 20:
        raise UsageError("sweep bounds are limited to l, m <= 20")
    b_values = [parse_b(tok) for tok in args.b.split(",")]
    branches = [parse_branch(args.branch)] if args.branch else [Branch.PLUS, Branch.MINUS]
    tuples = [
        (ell, m, bf, br)
        for ell in range(args.lmax + 1)
        for m in range(args.mmax + 1)
        for bf in b_values
        for br in branches
    ]

    def work(tup):
        ell, m, bf, br = tup
        checks = _verify_one(
            ModeFrequencies(*freqs.as_tuple()), SubspaceLabel(ell, m), bf, br,
            oracle=not args.no_oracle, oracle_points=args.oracle_points,
        )
        worst = {
            "bhe_operator_residual": max(c["bhe_operator_residual"] for c in checks),
            "bhe_standard_residual": max(c["bhe_standard_residual"] for c in checks),
            "schrodinger_residual": max(c["schrodinger_residual"] for c in checks),
        }
        if not args.no_oracle:
            worst["oracle_richardson_gap"] = max(
                c["oracle_richardson_gap"] for c in checks
            )
        return {
            "l": ell, "m": m, "b": str(bf), "branch": br.value,
            "pass": all(c["pass"] for c in checks), "worst": worst,
        }

    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, tuples))
    else:
        results = [work(t) for t in tuples]
    results.sort(key=lambda r: (r["l"], r["m"], Fraction(r["b"]), r["branch"]))
    all_pass = all(r["pass"] for r in results)
    manifest = RunManifest(
        "sweep",
        {
            "lmax": args.lmax, "mmax": args.mmax, "w": args.w, "b": args.b,
            "branch": args.branch, "threads": args.threads,
        },
    )
    payload = {
        "manifest": manifest.as_dict(),
        "tuples": results,
        "count": len(results),
        "pass": all_pass,
    }
    _write_json(payload, args.out)
    for r in results:
        status = "pass" if r["pass"] else "FAIL"
        print(
            f"l={r['l']} m={r['m']} b={r['b']} {r['branch']:>5}: {status}",
            file=sys.stderr,
        )
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triqes",
        description="Trilinear boson model -> BHE -> quasi-exactly solvable potentials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, curve=False):
        p.add_argument("--l", type=int, required=True, help="L eigenvalue (>= 0)")
        p.add_argument("--m", type=int, required=True, help="M eigenvalue (>= 0)")
        p.add_argument("--w", default="1,1,1", help="scaled frequencies w1,w2,w3")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if curve:
            p.add_argument("--b", default="1", help="transformation exponent p/q")
            p.add_argument("--branch", default="plus", choices=["plus", "minus"])
            p.add_argument("--p", type=int, default=1,
                           help="energy index, 1 = largest eigenvalue")
            p.add_argument("--xmin", type=float, default=0.05)
            p.add_argument("--xmax", type=float, default=4.0)
            p.add_argument("--points", type=int, default=400)
            p.add_argument("--shifted", action="store_true",
                           help="b=1/2 only: displaced sextic and eps(E)")
            p.add_argument("--format", default="csv", choices=["csv", "json"])

    p_spec = sub.add_parser("spectrum", help="eigenvalues and eigenvectors")
    common(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_basis = sub.add_parser("basis", help="canonical Fock basis of W(l, m)")
    common(p_basis)
    p_basis.set_defaults(func=cmd_basis)

    p_pot = sub.add_parser("potential", help="potential/wavefunction curve CSV")
    common(p_pot, curve=True)
    p_pot.set_defaults(func=cmd_potential)

    p_wf = sub.add_parser("wavefunction", help="wavefunction curve CSV")
    common(p_wf, curve=True)
    p_wf.set_defaults(func=cmd_wavefunction)

    p_ver = sub.add_parser("verify", help="run all certifications for one tuple")
    common(p_ver)
    p_ver.add_argument("--b", default="1/2", help="transformation exponent p/q")
    p_ver.add_argument("--branch", default="plus", choices=["plus", "minus"])
    p_ver.add_argument("--energy-override", type=float, default=None,
                       help="inject a wrong energy to watch the checks fail")
    p_ver.add_argument("--no-oracle", action="store_true",
                       help="skip the finite-difference containment check")
    p_ver.add_argument("--find-b2-zero", action="store_true",
                       help="search w3 values nulling the b=2 x^(-3/2) term")
    p_ver.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="verification matrix over (l, m)")
    p_sweep.add_argument("--lmax", type=int, default=2)
    p_sweep.add_argument("--mmax", type=int, default=2)
    p_sweep.add_argument("--w", default="1,1,1")
    p_sweep.add_argument("--b", default="1,1/2", help="comma list of exponents")
    p_sweep.add_argument("--branch", default=None, choices=["plus", "minus"],
                         help="restrict to one branch (default: both)")
    p_sweep.add_argument("--threads", type=int, default=None,
                         help="worker threads (default: all available)")
    p_sweep.add_argument("--no-oracle", action="store_true")
    p_sweep.add_argument("--oracle-points", type=int, default=None,
                         help="fd oracle grid size (default: sized by domain)")
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
