"""Command-line runner: JSON scenario configs in, trace reports out.

Verbs: trace, spectrum, decompose, wigner, quantize, verify, haar-check.
Every verb reads --config (a strict JSON scenario: unknown keys are errors),
writes report.json under --out, and prints a one-line summary. spectrum
additionally writes spectrum.csv when --format csv. Exit codes: 0 success,
2 invalid input or config, 3 numeric failure or tolerance breach.

Reports are byte-identical across reruns of the same config apart from the
runtime_ms field; all randomness flows through the config's integer seed,
which is mandatory whenever a random family appears.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from .errors import NumericError, ValidationError
from .grids import UniformGrid, ksum
from .numerics import dense_eigenvalues, matrix_trace
from .nuclear import (
    RankOneSequence,
    apply_kernel,
    kernel_from_decomposition,
    r_quasinorm_bound,
)
from .euclid import PhaseSpec, lidskii_report
from .quantize import tau_apply, tau_convert, weyl_symbol_from_decomposition, wigner
from .lattice import (
    LatticePhase,
    LatticeRankOne,
    LatticeSymbol,
    LatticeWindow,
    lattice_matrix,
    lattice_mixed_norms,
    lattice_nuclear_trace,
    lattice_quasinorm_bound,
    lattice_symbol_from_decomposition,
)
from .group import (
    GroupRankOne,
    GroupSymbol,
    TorusPhase,
    TorusSymbol,
    group_delgado_trace,
    group_matrix,
    group_nuclear_trace,
    group_quasinorm_bound,
    group_symbol_from_decomposition,
    identity_phase,
    s3_quadrature,
    su2_haar_quadrature,
    su2_irrep_table,
    torus_freqs,
    torus_matrix,
    torus_nuclear_trace,
    torus_symbol_from_decomposition,
    wigner_matrix,
    euler_from_su2,
)
from .homog import (
    HomogPhase,
    HomogSymbol,
    class_i_mask,
    homog_mixed_norm,
    homog_nuclear_trace,
    su3_fundamental_batch,
    su3_haar_quadrature,
    su3_mass,
    su3_schur_error,
    table_from_su2,
    table_from_torus,
)
from . import families
from .report import TraceReport

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERIC = 3

_VERBS = ("trace", "spectrum", "decompose", "wigner", "quantize", "verify", "haar-check")


# -- config plumbing ----------------------------------------------------------


def _check_keys(cfg: dict, where: str, required: tuple, optional: tuple) -> None:
    if not isinstance(cfg, dict):
        raise ValidationError(f"{where}: expected an object, got {type(cfg).__name__}")
    unknown = sorted(set(cfg) - set(required) - set(optional))
    if unknown:
        raise ValidationError(f"{where}: unknown keys {unknown}")
    missing = sorted(set(required) - set(cfg))
    if missing:
        raise ValidationError(f"{where}: missing required keys {missing}")


def _load_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValidationError("config root must be an object")
    return cfg


def _collect_family_specs(cfg) -> list:
    found = []
    if isinstance(cfg, dict):
        if "family" in cfg:
            found.append(cfg)
        for v in cfg.values():
            found.extend(_collect_family_specs(v))
    elif isinstance(cfg, list):
        for v in cfg:
            found.extend(_collect_family_specs(v))
    return found


def _rng_for(cfg: dict) -> np.random.Generator | None:
    needs = any(families.spec_needs_rng(s) for s in _collect_family_specs(cfg))
    seed = cfg.get("seed")
    if needs and seed is None:
        raise ValidationError("config uses a random family but carries no integer 'seed'")
    if seed is None:
        return None
    if not isinstance(seed, int):
        raise ValidationError(f"seed must be an integer, got {seed!r}")
    return np.random.default_rng(seed)


def _grid_from(spec: dict, where: str, periodic: bool = False) -> UniformGrid:
    _check_keys(spec, where, ("count",), ("lo", "hi", "dim"))
    dim = int(spec.get("dim", 1))
    count = int(spec["count"])
    if periodic:
        return UniformGrid.torus(count, dim)
    lo = float(spec.get("lo", -6.0))
    hi = float(spec.get("hi", 6.0))
    return UniformGrid.box(lo, hi, count, dim)


# -- euclid -------------------------------------------------------------------


def _euclid_phase(spec: dict, x_grid: UniformGrid, xi_grid: UniformGrid) -> PhaseSpec:
    _check_keys(spec, "phase", ("kind",), ("family", "shift"))
    if spec["kind"] == "linear":
        return PhaseSpec.linear()
    if spec["kind"] != "sampled":
        raise ValidationError(f"phase kind {spec['kind']!r} not in ('linear', 'sampled')")
    fam = spec.get("family", "shifted_linear")
    if fam == "shifted_linear":
        shift = float(spec.get("shift", 0.0))
        table = 2.0 * np.pi * ((x_grid.nodes + shift) @ xi_grid.nodes.T)
        return PhaseSpec("sampled", table)
    raise ValidationError(f"unknown sampled phase family {fam!r}")


def _euclid_decomposition(spec: dict, grid: UniformGrid, rng) -> RankOneSequence:
    _check_keys(spec, "decomposition", ("terms",), ("p1", "p2", "r"))
    terms = []
    for i, t in enumerate(spec["terms"]):
        _check_keys(t, f"decomposition.terms[{i}]", ("h", "g"), ())
        terms.append(
            (families.euclid_field(grid, t["h"], rng), families.euclid_field(grid, t["g"], rng))
        )
    return RankOneSequence(
        tuple(terms), float(spec.get("p1", 2.0)), float(spec.get("p2", 2.0)), float(spec.get("r", 1.0))
    )


_EUCLID_KEYS = ("setting", "seed", "grid", "xi_grid", "phase", "decomposition", "p", "taus", "probe")


def _run_euclid(cfg: dict, verb: str) -> TraceReport:
    _check_keys(cfg, "config", ("setting", "grid", "decomposition"), tuple(k for k in _EUCLID_KEYS if k not in ("setting", "grid", "decomposition")))
    rng = _rng_for(cfg)
    grid = _grid_from(cfg["grid"], "grid")
    xi_grid = _grid_from(cfg["xi_grid"], "xi_grid") if "xi_grid" in cfg else UniformGrid(grid.axes)
    phase = _euclid_phase(cfg.get("phase", {"kind": "linear"}), grid, xi_grid)
    d = _euclid_decomposition(cfg["decomposition"], grid, rng)
    p = float(cfg.get("p", 2.0))
    report = lidskii_report(phase, d, p, xi_grid)

    if verb == "wigner":
        h1, g1 = d.terms[0]
        W = wigner(h1, g1, xi_grid)
        peak_flat = int(np.abs(W.values).argmax())
        ix, ixi = np.unravel_index(peak_flat, (grid.size, xi_grid.size))
        peak = W.values[ix, ixi]
        integral = complex(
            ksum(grid.weights[:, None] * xi_grid.weights[None, :] * W.values)
        )
        report.extras.update(
            {
                "wigner_peak": {"re": peak.real, "im": peak.imag},
                "wigner_peak_x": float(grid.nodes[ix, 0]),
                "wigner_peak_xi": float(xi_grid.nodes[ixi, 0]),
                "wigner_integral": {"re": integral.real, "im": integral.imag},
            }
        )
    elif verb == "quantize":
        taus = cfg.get("taus", [0.25, 0.5, 0.75, 1.0])
        probe_spec = cfg.get("probe", {"family": "gaussian", "center": 0.3, "width": 1.1})
        probe = families.euclid_field(grid, probe_spec, rng)
        K = kernel_from_decomposition(d)
        want = apply_kernel(K, probe).values
        scale = float(np.abs(want).max()) or 1.0
        gaps = {}
        for tau in taus:
            sym = weyl_symbol_from_decomposition(d, float(tau), xi_grid)
            got = tau_apply(sym, float(tau), probe).values
            gaps[f"{float(tau):g}"] = float(np.abs(got - want).max() / scale)
        report.extras["tau_action_gaps"] = gaps
        if len(taus) >= 2:
            t0, t1 = float(taus[0]), float(taus[1])
            sym0 = weyl_symbol_from_decomposition(d, t0, xi_grid)
            back = tau_convert(tau_convert(sym0, t0, t1), t1, t0)
            denom = float(np.abs(sym0.values).max()) or 1.0
            report.extras["tau_roundtrip_gap"] = float(
                np.abs(back.values - sym0.values).max() / denom
            )
    return report


# -- lattice ------------------------------------------------------------------


_LATTICE_KEYS = ("setting", "seed", "dim", "radius", "xi_count", "phase", "decomposition", "symbol", "p")


def _lattice_phase(spec: dict) -> LatticePhase:
    _check_keys(spec, "phase", ("kind",), ())
    if spec["kind"] != "linear":
        raise ValidationError("lattice configs support the linear phase only")
    return LatticePhase.linear()


def _run_lattice(cfg: dict, verb: str) -> TraceReport:
    _check_keys(cfg, "config", ("setting", "radius"), tuple(k for k in _LATTICE_KEYS if k not in ("setting", "radius")))
    rng = _rng_for(cfg)
    window = LatticeWindow(int(cfg.get("dim", 1)), int(cfg["radius"]))
    xi_count = int(cfg.get("xi_count", max(32, window.min_xi_count())))
    if xi_count < window.min_xi_count():
        raise ValidationError(
            f"xi_count = {xi_count} below the exactness threshold {window.min_xi_count()}"
        )
    xi_grid = UniformGrid.torus(xi_count, window.n)
    phase = _lattice_phase(cfg.get("phase", {"kind": "linear"}))
    t0 = time.perf_counter()
    quasinorm = None
    mixed = (None, None)
    if "decomposition" in cfg and "symbol" in cfg:
        raise ValidationError("give either 'decomposition' or 'symbol', not both")
    if "decomposition" in cfg:
        spec = cfg["decomposition"]
        _check_keys(spec, "decomposition", ("terms",), ("p1", "p2", "r"))
        terms = []
        for i, t in enumerate(spec["terms"]):
            _check_keys(t, f"decomposition.terms[{i}]", ("h", "g"), ())
            terms.append(
                (
                    families.lattice_sequence(window, t["h"], rng),
                    families.lattice_sequence(window, t["g"], rng),
                )
            )
        d = LatticeRankOne(
            tuple(terms), float(spec.get("p1", 2.0)), float(spec.get("p2", 2.0)), float(spec.get("r", 1.0))
        )
        a = lattice_symbol_from_decomposition(phase, d, xi_grid)
        quasinorm = lattice_quasinorm_bound(d)
        mixed = lattice_mixed_norms(a, d.p1, d.p2)
    elif "symbol" in cfg:
        sspec = cfg["symbol"]
        _check_keys(sspec, "symbol", ("family",), ("value",))
        if sspec["family"] != "constant":
            raise ValidationError("direct lattice symbols support the constant family only")
        c = complex(float(sspec.get("value", 1.0)))
        a = LatticeSymbol(window, xi_grid, np.full((window.size, xi_grid.size), c, dtype=complex))
        p = float(cfg.get("p", 2.0))
        mixed = lattice_mixed_norms(a, p, p)
    else:
        raise ValidationError("lattice config needs 'decomposition' or 'symbol'")
    nuclear = lattice_nuclear_trace(phase, a)
    M = lattice_matrix(phase, a)
    report = TraceReport(
        setting="lattice",
        nuclear_trace=nuclear,
        matrix_trace=matrix_trace(M),
        eigenvalues=dense_eigenvalues(M),
        quasinorm_bound=quasinorm,
        mixed_norm_x_first=mixed[0],
        mixed_norm_xi_first=mixed[1],
        runtime_ms=(time.perf_counter() - t0) * 1e3,
    )
    return report


# -- torus --------------------------------------------------------------------


_TORUS_KEYS = ("setting", "seed", "dim", "cutoff", "x_count", "phase", "decomposition", "symbol", "p")


def _run_torus(cfg: dict, verb: str) -> TraceReport:
    _check_keys(cfg, "config", ("setting", "cutoff"), tuple(k for k in _TORUS_KEYS if k not in ("setting", "cutoff")))
    rng = _rng_for(cfg)
    dim = int(cfg.get("dim", 1))
    cutoff = int(cfg["cutoff"])
    x_count = int(cfg.get("x_count", 32))
    if x_count < 4 * cutoff + 2:
        raise ValidationError(
            f"x_count = {x_count} below the exactness threshold {4 * cutoff + 2}"
        )
    x_grid = UniformGrid.torus(x_count, dim)
    pspec = cfg.get("phase", {"kind": "linear"})
    _check_keys(pspec, "phase", ("kind",), ())
    if pspec["kind"] != "linear":
        raise ValidationError("torus configs support the linear phase only")
    phase = TorusPhase.linear()
    t0 = time.perf_counter()
    quasinorm = None
    if "decomposition" in cfg:
        spec = cfg["decomposition"]
        _check_keys(spec, "decomposition", ("terms",), ("p1", "p2", "r"))
        terms = []
        for i, t in enumerate(spec["terms"]):
            _check_keys(t, f"decomposition.terms[{i}]", ("h", "g"), ())
            terms.append(
                (
                    families.euclid_field(x_grid, t["h"], rng),
                    families.euclid_field(x_grid, t["g"], rng),
                )
            )
        d = RankOneSequence(
            tuple(terms), float(spec.get("p1", 2.0)), float(spec.get("p2", 2.0)), float(spec.get("r", 1.0))
        )
        a = torus_symbol_from_decomposition(phase, d, cutoff, x_grid)
        quasinorm = r_quasinorm_bound(d)
    elif "symbol" in cfg:
        sspec = cfg["symbol"]
        _check_keys(sspec, "symbol", ("family",), ("value",))
        if sspec["family"] != "constant":
            raise ValidationError("direct torus symbols support the constant family only")
        c = complex(float(sspec.get("value", 1.0)))
        n_freq = torus_freqs(cutoff, dim).shape[0]
        a = TorusSymbol(x_grid, cutoff, np.full((x_grid.size, n_freq), c, dtype=complex))
    else:
        raise ValidationError("torus config needs 'decomposition' or 'symbol'")
    nuclear = torus_nuclear_trace(phase, a)
    M = torus_matrix(phase, a)
    return TraceReport(
        setting="torus",
        nuclear_trace=nuclear,
        matrix_trace=matrix_trace(M),
        eigenvalues=dense_eigenvalues(M),
        quasinorm_bound=quasinorm,
        runtime_ms=(time.perf_counter() - t0) * 1e3,
    )


# -- su2 ----------------------------------------------------------------------


_SU2_KEYS = ("setting", "seed", "quadrature", "cutoff_twoL", "symbol", "decomposition", "p")


def _su2_quad(cfg: dict):
    qspec = cfg.get("quadrature", {})
    _check_keys(qspec, "quadrature", (), ("n_alpha", "n_beta", "n_gamma"))
    return su2_haar_quadrature(
        int(qspec.get("n_alpha", 16)), int(qspec.get("n_beta", 16)), int(qspec.get("n_gamma", 32))
    )


def _group_rank_one(cfg_spec: dict, quad, cutoff: int, rng) -> GroupRankOne:
    _check_keys(cfg_spec, "decomposition", ("terms",), ("p1", "p2", "r"))
    terms = []
    for i, t in enumerate(cfg_spec["terms"]):
        _check_keys(t, f"decomposition.terms[{i}]", ("h", "g"), ())
        pair = []
        for side in ("h", "g"):
            fspec = t[side]
            _check_keys(fspec, f"decomposition.terms[{i}].{side}", ("family",), ("value", "twoL", "i", "j"))
            fam = fspec["family"]
            if fam == "constant":
                pair.append(np.full(quad.size, complex(float(fspec.get("value", 1.0)))))
            elif fam == "matrix_entry":
                twoL = int(fspec.get("twoL", 1))
                T = su2_irrep_table(quad, twoL)
                pair.append(np.sqrt(twoL + 1) * T[:, int(fspec.get("i", 0)), int(fspec.get("j", 0))])
            elif fam == "random_bandlimited":
                if rng is None:
                    raise ValidationError("random_bandlimited needs a config seed")
                vals = np.zeros(quad.size, dtype=complex)
                for twoL in range(cutoff + 1):
                    T = su2_irrep_table(quad, twoL)
                    d = twoL + 1
                    C = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
                    vals += np.sqrt(d) * np.einsum("nij,ij->n", T, C)
                pair.append(vals)
            else:
                raise ValidationError(f"unknown group field family {fam!r}")
        terms.append(tuple(pair))
    return GroupRankOne(
        quad,
        tuple(terms),
        float(cfg_spec.get("p1", 2.0)),
        float(cfg_spec.get("p2", 2.0)),
        float(cfg_spec.get("r", 1.0)),
    )


def _run_su2(cfg: dict, verb: str) -> TraceReport:
    _check_keys(cfg, "config", ("setting", "cutoff_twoL"), tuple(k for k in _SU2_KEYS if k not in ("setting", "cutoff_twoL")))
    rng = _rng_for(cfg)
    quad = _su2_quad(cfg)
    cutoff = int(cfg["cutoff_twoL"])
    Phi = identity_phase(quad, cutoff)
    t0 = time.perf_counter()
    quasinorm = None
    extras = {}
    if "decomposition" in cfg:
        d = _group_rank_one(cfg["decomposition"], quad, cutoff, rng)
        a = group_symbol_from_decomposition(Phi, d, cutoff)
        quasinorm = group_quasinorm_bound(d)
        dtr = group_delgado_trace(d)
        extras["delgado_trace"] = {"re": dtr.real, "im": dtr.imag}
    else:
        sym = cfg.get("symbol", "identity")
        if sym != "identity":
            raise ValidationError("su2 config needs 'decomposition' or symbol 'identity'")
        blocks = {
            twoL: np.broadcast_to(np.eye(twoL + 1, dtype=complex), (quad.size, twoL + 1, twoL + 1)).copy()
            for twoL in range(cutoff + 1)
        }
        a = GroupSymbol(quad, blocks)
    nuclear = group_nuclear_trace(Phi, a, cutoff)
    M = group_matrix(Phi, a, cutoff)
    return TraceReport(
        setting="su2",
        nuclear_trace=nuclear,
        matrix_trace=matrix_trace(M),
        eigenvalues=dense_eigenvalues(M),
        quasinorm_bound=quasinorm,
        runtime_ms=(time.perf_counter() - t0) * 1e3,
        extras=extras,
    )


# -- homog --------------------------------------------------------------------


_HOMOG_KEYS = ("setting", "seed", "instance", "quadrature", "cutoff_twoL", "dim", "cutoff", "x_count", "p1", "p2")


def _run_homog(cfg: dict, verb: str) -> TraceReport:
    _check_keys(cfg, "config", ("setting", "instance"), tuple(k for k in _HOMOG_KEYS if k not in ("setting", "instance")))
    instance = cfg["instance"]
    t0 = time.perf_counter()
    p1, p2 = float(cfg.get("p1", 2.0)), float(cfg.get("p2", 2.0))
    if instance == "su2":
        quad = _su2_quad(cfg)
        cutoff = int(cfg.get("cutoff_twoL", 2))
        table = table_from_su2(quad, cutoff)
        blocks_phi = {t: table.entries[t].matrices for t in table.labels}
        blocks_a = {
            t: np.broadcast_to(np.eye(t + 1, dtype=complex), (quad.size, t + 1, t + 1)).copy()
            for t in table.labels
        }
        Phi_h = HomogPhase(table, blocks_phi)
        a_h = HomogSymbol(table, blocks_a)
        nuclear = homog_nuclear_trace(Phi_h, a_h)
        Phi_g = identity_phase(quad, cutoff)
        a_g = GroupSymbol(quad, {t: blocks_a[t] for t in table.labels})
        group_value = group_nuclear_trace(Phi_g, a_g, cutoff)
        M = group_matrix(Phi_g, a_g, cutoff)
        extras = {
            "group_trace": {"re": group_value.real, "im": group_value.imag},
            "degeneration_gap": abs(nuclear - group_value),
            "mixed_norm_dual": homog_mixed_norm(a_h, p1, p2),
        }
    elif instance == "torus":
        dim = int(cfg.get("dim", 1))
        cutoff = int(cfg.get("cutoff", 2))
        x_count = int(cfg.get("x_count", 32))
        x_grid = UniformGrid.torus(x_count, dim)
        table = table_from_torus(x_grid, cutoff)
        blocks_phi = {lab: table.entries[lab].matrices for lab in table.labels}
        blocks_a = {
            lab: np.ones((x_grid.size, 1, 1), dtype=complex) for lab in table.labels
        }
        Phi_h = HomogPhase(table, blocks_phi)
        a_h = HomogSymbol(table, blocks_a)
        nuclear = homog_nuclear_trace(Phi_h, a_h)
        n_freq = torus_freqs(cutoff, dim).shape[0]
        a_t = TorusSymbol(x_grid, cutoff, np.ones((x_grid.size, n_freq), dtype=complex))
        torus_value = torus_nuclear_trace(TorusPhase.linear(), a_t)
        M = torus_matrix(TorusPhase.linear(), a_t)
        extras = {
            "torus_trace": {"re": torus_value.real, "im": torus_value.imag},
            "degeneration_gap": abs(nuclear - torus_value),
            "mixed_norm_dual": homog_mixed_norm(a_h, p1, p2),
        }
    else:
        raise ValidationError(f"homog instance {instance!r} not in ('su2', 'torus')")
    return TraceReport(
        setting="homog",
        nuclear_trace=nuclear,
        matrix_trace=matrix_trace(M),
        eigenvalues=dense_eigenvalues(M),
        runtime_ms=(time.perf_counter() - t0) * 1e3,
        extras=extras,
    )


_RUNNERS = {
    "euclid": _run_euclid,
    "lattice": _run_lattice,
    "torus": _run_torus,
    "su2": _run_su2,
    "homog": _run_homog,
}


# -- verify / haar-check ------------------------------------------------------


def _su2_verify_checks(cfg: dict, tolerance: float | None) -> list:
    quad = _su2_quad(cfg)
    cutoff = int(cfg.get("cutoff_twoL", 2))
    checks = []

    wsum = abs(float(ksum(quad.weights)) - 1.0)
    checks.append(("haar_weight_sum", wsum, 1e-10))

    defect = 0.0
    for twoL in range(cutoff + 1):
        T = su2_irrep_table(quad, twoL)
        eye = np.eye(twoL + 1)
        defect = max(defect, float(np.abs(np.einsum("nij,nkj->nik", T, T.conj()) - eye).max()))
    checks.append(("table_unitarity", defect, 1e-10))

    # Schur orthogonality up to spin 3/2 (twoL <= 3)
    schur = 0.0
    for tA in range(0, 4):
        TA = su2_irrep_table(quad, tA)
        for tB in range(0, 4):
            TB = su2_irrep_table(quad, tB)
            G = np.einsum("n,nij,nkl->ijkl", quad.weights, TA, TB.conj())
            if tA == tB:
                d = tA + 1
                target = np.einsum("ik,jl->ijkl", np.eye(d), np.eye(d)) / d
                schur = max(schur, float(np.abs(G - target).max()))
            else:
                schur = max(schur, float(np.abs(G).max()))
    checks.append(("schur_orthogonality", schur, 1e-6))

    # composition D(U1 U2) = D(U1) D(U2) on deterministic angle pairs
    pairs = [
        ((0.7, 0.9, 1.3), (2.1, 2.4, 3.7)),
        ((5.9, 0.2, 9.1), (1.0, 3.0, 0.5)),
        ((3.3, 1.6, 7.7), (4.4, 2.8, 11.0)),
    ]
    comp = 0.0
    for e1, e2 in pairs:
        U1, U2 = wigner_matrix(1, *e1), wigner_matrix(1, *e2)
        e12 = euler_from_su2(U1 @ U2)
        for twoL in range(0, 5):
            D12 = wigner_matrix(twoL, *e12)
            D1D2 = wigner_matrix(twoL, *e1) @ wigner_matrix(twoL, *e2)
            comp = max(comp, float(np.abs(D12 - D1D2).max()))
    checks.append(("composition", comp, 1e-8))

    # identity-operator trace = sum of squared dimensions
    Phi = identity_phase(quad, cutoff)
    blocks = {
        t: np.broadcast_to(np.eye(t + 1, dtype=complex), (quad.size, t + 1, t + 1)).copy()
        for t in range(cutoff + 1)
    }
    a = GroupSymbol(quad, blocks)
    expected = float(sum((t + 1) ** 2 for t in range(cutoff + 1)))
    trace_gap = abs(group_nuclear_trace(Phi, a, cutoff) - expected)
    checks.append(("identity_trace", trace_gap, 1e-6))

    s3 = s3_quadrature(int(cfg.get("s3_resolution", 48)))
    checks.append(("s3_raw_mass", abs(s3.raw_mass - 4.0 * np.pi**2), 1e-4))

    if tolerance is not None:
        checks = [(n, v, tolerance) for n, v, _ in checks]
    return checks


_SU3_KEYS = ("setting", "seed", "resolution", "phi_count", "samples")


def _su3_checks(cfg: dict, tolerance: float | None) -> list:
    _check_keys(cfg, "config", ("setting",), tuple(k for k in _SU3_KEYS if k != "setting"))
    quad = su3_haar_quadrature(int(cfg.get("resolution", 16)), int(cfg.get("phi_count", 5)))
    checks = [
        ("haar_mass", abs(su3_mass(quad) - 1.0), 1e-6),
        ("schur_orthogonality", su3_schur_error(quad), 1e-3),
    ]
    samples = int(cfg.get("samples", 10000))
    seed = cfg.get("seed", 0)
    rng = np.random.default_rng(int(seed))
    angles = np.empty((samples, 8))
    angles[:, :3] = rng.uniform(0.0, np.pi / 2.0, size=(samples, 3))
    angles[:, 3:] = rng.uniform(0.0, 2.0 * np.pi, size=(samples, 5))
    U = su3_fundamental_batch(angles)
    eye = np.eye(3)
    unit = float(np.abs(np.einsum("nij,nkj->nik", U, U.conj()) - eye).max())
    det = float(np.abs(np.linalg.det(U) - 1.0).max())
    checks.append(("sampled_unitarity", unit, 1e-10))
    checks.append(("sampled_determinant", det, 1e-10))
    if tolerance is not None:
        checks = [(n, v, tolerance) for n, v, _ in checks]
    return checks


def _homog_verify_checks(cfg: dict, tolerance: float | None) -> list:
    report = _run_homog(cfg, "verify")
    checks = [("degeneration_gap", float(report.extras["degeneration_gap"]), 1e-10)]
    rng = np.random.default_rng(7)
    B = rng.standard_normal((5, 4, 4)) + 1j * rng.standard_normal((5, 4, 4))
    masked = class_i_mask(B, 2)
    twice = class_i_mask(masked, 2)
    checks.append(("mask_idempotence", float(np.abs(twice - masked).max()), 0.0))
    outside = float(np.abs(masked[:, 2:, :]).max()) + float(np.abs(masked[:, :, 2:]).max())
    checks.append(("mask_support", outside, 0.0))
    if tolerance is not None:
        checks = [(n, v, tolerance) for n, v, _ in checks[:1]] + checks[1:]
    return checks


def _generic_verify_checks(cfg: dict, report: TraceReport, tolerance: float | None) -> list:
    tol = 1e-8 if tolerance is None else tolerance
    checks = [
        ("trace_vs_matrix", report.discrepancy_trace_vs_matrix, tol),
        ("trace_vs_eigensum", report.discrepancy_trace_vs_eigensum, tol),
    ]
    return checks


# -- output -------------------------------------------------------------------


def _write_report(payload: dict, out_dir: str) -> Path:
    path = Path(out_dir) / "report.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n")
    return path


def _write_spectrum_csv(eigenvalues, out_dir: str) -> Path:
    path = Path(out_dir) / "spectrum.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "re", "im", "modulus"])
        for i, z in enumerate(np.asarray(eigenvalues, dtype=complex)):
            w.writerow([i, repr(float(z.real)), repr(float(z.imag)), repr(float(abs(z)))])
    return path


def _checks_payload(checks: list) -> dict:
    return {
        name: {"value": float(value), "tolerance": float(tol), "pass": bool(value <= tol)}
        for name, value, tol in checks
    }


def _empty_report(setting: str) -> TraceReport:
    return TraceReport(
        setting=setting,
        nuclear_trace=0.0,
        matrix_trace=0.0,
        eigenvalues=np.zeros(0, dtype=complex),
    )


# -- driver -------------------------------------------------------------------


def run_scenario(cfg: dict, verb: str, tolerance: float | None = None):
    """Execute one verb against a parsed config; returns (report, checks)."""
    if verb not in _VERBS:
        raise ValidationError(f"unknown verb {verb!r}")
    setting = cfg.get("setting")
    if verb == "haar-check":
        if setting == "su2":
            allowed = tuple(set(_SU2_KEYS) | {"s3_resolution"})
            _check_keys(cfg, "config", ("setting",), tuple(k for k in allowed if k != "setting"))
            return _empty_report("su2"), _su2_verify_checks(cfg, tolerance)
        if setting == "su3":
            return _empty_report("su3"), _su3_checks(cfg, tolerance)
        raise ValidationError("haar-check supports settings 'su2' and 'su3'")
    if setting not in _RUNNERS:
        raise ValidationError(
            f"setting {setting!r} not in {sorted(_RUNNERS)} (config needs a 'setting')"
        )
    if verb == "verify":
        if setting == "su2":
            allowed = tuple(set(_SU2_KEYS) | {"s3_resolution"})
            _check_keys(cfg, "config", ("setting",), tuple(k for k in allowed if k != "setting"))
            return _empty_report("su2"), _su2_verify_checks(cfg, tolerance)
        if setting == "homog":
            return _run_homog(cfg, verb), _homog_verify_checks(cfg, tolerance)
        report = _RUNNERS[setting](cfg, verb)
        return report, _generic_verify_checks(cfg, report, tolerance)
    report = _RUNNERS[setting](cfg, verb)
    return report, []


def run_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nucfio",
        description="Nuclear-trace computations for Fourier integral operators.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in _VERBS:
        sp = sub.add_parser(verb)
        sp.add_argument("--config", required=True, help="path to a JSON scenario")
        sp.add_argument("--out", default=".", help="output directory (default: cwd)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--tolerance", type=float, default=None)
    args = parser.parse_args(argv)

    try:
        cfg = _load_config(args.config)
        report, checks = run_scenario(cfg, args.verb, args.tolerance)
        payload = report.to_payload()
        if checks:
            payload["checks"] = _checks_payload(checks)
        path = _write_report(payload, args.out)
        written = [str(path)]
        if args.verb == "spectrum" and args.format == "csv":
            written.append(str(_write_spectrum_csv(report.eigenvalues, args.out)))
        for name, value, tol in checks:
            status = "pass" if value <= tol else "FAIL"
            print(f"{status} {name}: {value:.3e} (tolerance {tol:.3e})")
        tr = report.nuclear_trace
        print(
            f"{args.verb} {report.setting}: nuclear_trace = {tr.real:.12g}"
            f"{tr.imag:+.12g}i -> {', '.join(written)}"
        )
        if checks and any(value > tol for _, value, tol in checks):
            return EXIT_NUMERIC
        return EXIT_OK
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
