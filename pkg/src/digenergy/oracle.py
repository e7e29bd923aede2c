"""Exhaustive and randomized verification harness.

Enumerates labeled loop-free digraphs (or samples them reproducibly),
evaluates a registry of named checks on each one, and reports every
violation with the offending digraph serialized in the edge-list format.
The checks recompute each bound formula inline from profile integers, so a
drifted formula in ``bounds`` is caught directly and not merely when an
inequality happens to invert.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np

from . import bounds as bounds_mod
from .digraph import (
    Digraph,
    adjacency_matrix,
    cycle_arc_reduction,
    geometric_symmetrization,
    serialize_edge_list,
    walk_profile,
)
from .errors import BoundInapplicableError, PurelyImaginaryEigenvalueError, UnknownCheckError
from .spectrum import characteristic_polynomial, coulson_energy, eigenvalues
from .structure import equality_verdict_energy_upper, equality_verdict_rho_lower

EXHAUSTIVE_MAX_N = 5
RANDOM_MAX_N = 12
IFF_TOL = 1e-7
PIN_TOL = 1e-12

_MASK64 = (1 << 64) - 1


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def enumerate_digraphs(n: int) -> Iterator[Digraph]:
    """All 2^(n(n-1)) labeled loop-free digraphs, in arc-bitmask order."""
    if not 1 <= n <= EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration needs 1 <= n <= {EXHAUSTIVE_MAX_N}, got {n}")
    pairs = _pair_list(n)
    for mask in range(1 << len(pairs)):
        arcs = [pairs[k] for k in range(len(pairs)) if (mask >> k) & 1]
        yield Digraph(n, arcs)


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return z, state


def random_digraph(n: int, p: float, seed: int) -> Digraph:
    """Each ordered pair included independently with probability p.

    Reproducible across platforms: a SplitMix64 stream seeded with ``seed``
    draws one 64-bit word per ordered pair (lexicographic order) and the
    arc is included iff the word is below floor(p * 2^64).
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"need 0 <= p <= 1, got {p}")
    threshold = int(p * (1 << 64))
    state = seed & _MASK64
    arcs = []
    for pair in _pair_list(n):
        word, state = _splitmix64(state)
        if word < threshold:
            arcs.append(pair)
    return Digraph(n, arcs)


@dataclass(frozen=True)
class Violation:
    digraph_text: str
    check: str
    lhs: float
    rhs: float
    gap: float

    def to_dict(self) -> dict:
        return {
            "digraph": self.digraph_text,
            "check": self.check,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
        }


@dataclass
class CheckStats:
    passed: int = 0
    failed: int = 0
    skipped: int = 0


@dataclass(frozen=True)
class VerificationReport:
    n: int
    mode: str
    digraphs_checked: int
    checks_run: dict[str, CheckStats]
    violations: tuple[Violation, ...]
    bound_inapplicable: tuple[str, ...]
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "digraphs_checked": self.digraphs_checked,
            "checks": {
                name: {"passed": s.passed, "failed": s.failed, "skipped": s.skipped}
                for name, s in self.checks_run.items()
            },
            "violations": [v.to_dict() for v in self.violations],
            "bound_inapplicable": list(self.bound_inapplicable),
            "elapsed_seconds": self.elapsed,
        }


class _Ctx:
    """Per-digraph lazy cache so each quantity is computed at most once."""

    def __init__(self, d: Digraph, tol: float):
        self.d = d
        self.tol = tol

    @cached_property
    def profile(self):
        return walk_profile(self.d)

    @cached_property
    def spectrum(self):
        return eigenvalues(self.d)

    @cached_property
    def symmetrization(self):
        return geometric_symmetrization(adjacency_matrix(self.d))

    @cached_property
    def reduced(self):
        return cycle_arc_reduction(self.d)

    @cached_property
    def text(self):
        return serialize_edge_list(self.d)


# Each check returns a list of (lhs, rhs, gap) violations, or the string
# "skip" when its precondition does not apply to the digraph.


def _check_walk_rowsum(ctx: _Ctx):
    rows = np.asarray(ctx.symmetrization).sum(axis=1)
    out = []
    for i, c in enumerate(ctx.profile.c2_seq):
        if int(rows[i]) != c:
            out.append((float(c), float(rows[i]), abs(float(rows[i]) - c)))
    return out

_check_walk_rowsum.check_name = "walk_rowsum"


def _check_walk_sum_identity(ctx: _Ctx):
    lhs = sum(ctx.profile.t2_seq)
    rhs = ctx.profile.sum_c2_sq
    return [] if lhs == rhs else [(float(lhs), float(rhs), float(abs(lhs - rhs)))]

_check_walk_sum_identity.check_name = "walk_sum_identity"


def _check_symmetrization_radius(ctx: _Ctx):
    out = []
    s = np.asarray(ctx.symmetrization, dtype=float)
    if s.size == 0:
        return out
    s_vals = np.linalg.eigvalsh(s)
    rho_s = float(np.max(np.abs(s_vals))) if len(s_vals) else 0.0
    s2_vals = np.linalg.eigvalsh(s @ s)
    rho_s2 = float(np.max(np.abs(s2_vals))) if len(s2_vals) else 0.0
    rho_a = ctx.spectrum.rho
    if rho_a < rho_s - 1e-9:
        out.append((rho_a, rho_s, rho_s - rho_a))
    if abs(rho_s - math.sqrt(rho_s2)) > 1e-9:
        out.append((rho_s, math.sqrt(rho_s2), abs(rho_s - math.sqrt(rho_s2))))
    return out

_check_symmetrization_radius.check_name = "symmetrization_radius"


def _check_moment_difference(ctx: _Ctx):
    spec = ctx.spectrum
    residual = (spec.sum_re_sq - spec.sum_im_sq) - ctx.profile.c2_total
    if abs(residual) > 1e-8:
        return [(spec.sum_re_sq - spec.sum_im_sq, float(ctx.profile.c2_total), abs(residual))]
    return []

_check_moment_difference.check_name = "moment_difference"


def _check_moment_total(ctx: _Ctx):
    spec = ctx.spectrum
    total = spec.sum_re_sq + spec.sum_im_sq
    if total > ctx.profile.a + 1e-8:
        return [(total, float(ctx.profile.a), total - ctx.profile.a)]
    return []

_check_moment_total.check_name = "moment_total"


def _inline_rho_lowers(profile, n):
    mean = profile.c2_total / n
    rms = math.sqrt(profile.sum_c2_sq / n)
    ratio = math.sqrt(profile.sum_t2_sq / profile.sum_c2_sq) if profile.sum_c2_sq else 0.0
    return mean, rms, ratio


def _check_rho_chain(ctx: _Ctx):
    out = []
    profile, n, tol = ctx.profile, ctx.d.n, ctx.tol
    mean_i, rms_i, ratio_i = _inline_rho_lowers(profile, n)
    mean = bounds_mod.rho_lower_walk_mean(profile, n)
    rms = bounds_mod.rho_lower_walk_rms(profile, n)
    ratio = bounds_mod.rho_lower_walk_ratio(profile)
    # Formula pins: the module values must match the inline recomputation.
    for got, want in ((mean, mean_i), (rms, rms_i), (ratio, ratio_i)):
        if not bounds_mod.close_tol(got, want, PIN_TOL):
            out.append((got, want, abs(got - want)))
    rho = ctx.spectrum.rho
    if not bounds_mod.leq_tol(mean_i, rms_i, tol):
        out.append((mean_i, rms_i, mean_i - rms_i))
    if profile.c2_total > 0 and not bounds_mod.leq_tol(rms_i, ratio_i, tol):
        out.append((rms_i, ratio_i, rms_i - ratio_i))
    for low in (mean_i, rms_i, ratio_i):
        if not bounds_mod.leq_tol(low, rho, tol):
            out.append((low, rho, low - rho))
    return out

_check_rho_chain.check_name = "rho_chain"


def _inline_energy_uppers(profile, n, rho):
    def f(x):
        return x + math.sqrt(max(0.0, (n - 1) * (profile.a - x * x)))

    mean, rms, ratio = _inline_rho_lowers(profile, n)
    mc = math.sqrt(n * (profile.a + profile.c2_total) / 2.0)
    return mc, f(rho), f(mean), f(rms), f(ratio)


def _check_energy_bounds(ctx: _Ctx):
    out = []
    profile, n, tol = ctx.profile, ctx.d.n, ctx.tol
    spec = ctx.spectrum
    mc_i, radius_i, mean_i, rms_i, ratio_i = _inline_energy_uppers(profile, n, spec.rho)
    mc = bounds_mod.energy_upper_mcclelland(profile, n)
    e_mean = bounds_mod.energy_upper_walk_mean(profile, n)
    e_rms = bounds_mod.energy_upper_walk_rms(profile, n)
    radius = bounds_mod._f_energy(spec.rho, n, profile.a) + bounds_mod._fault("energy_upper_radius")
    try:
        e_ratio = bounds_mod.energy_upper_walk_ratio(profile, n)
    except BoundInapplicableError:
        e_ratio = None
    for got, want in ((mc, mc_i), (radius, radius_i), (e_mean, mean_i), (e_rms, rms_i)):
        if not bounds_mod.close_tol(got, want, PIN_TOL):
            out.append((got, want, abs(got - want)))
    if e_ratio is not None and not bounds_mod.close_tol(e_ratio, ratio_i, PIN_TOL):
        out.append((e_ratio, ratio_i, abs(e_ratio - ratio_i)))
    uppers = [mc_i, radius_i, mean_i, rms_i, ratio_i]
    for upper in uppers:
        if not bounds_mod.leq_tol(spec.energy, upper, tol):
            out.append((spec.energy, upper, spec.energy - upper))
    return out

_check_energy_bounds.check_name = "energy_bounds"


def _check_dominance_chain(ctx: _Ctx):
    profile, n, tol = ctx.profile, ctx.d.n, ctx.tol
    if profile.a * n >= profile.c2_total ** 2:
        return "skip"
    out = []
    spec = ctx.spectrum
    mean, rms, ratio = _inline_rho_lowers(profile, n)
    sqrt_an = math.sqrt(profile.a / n)
    sqrt_a = math.sqrt(profile.a)
    chain = [sqrt_an, mean, rms, ratio, spec.rho, sqrt_a]
    for lo, hi in zip(chain, chain[1:]):
        if not bounds_mod.leq_tol(lo, hi, tol):
            out.append((lo, hi, lo - hi))
    _, _, f_mean, f_rms, f_ratio = _inline_energy_uppers(profile, n, spec.rho)
    for lo, hi in ((f_ratio, f_rms), (f_rms, f_mean)):
        if not bounds_mod.leq_tol(lo, hi, tol):
            out.append((lo, hi, lo - hi))
    if not bounds_mod.leq_tol(spec.energy, f_ratio, tol):
        out.append((spec.energy, f_ratio, spec.energy - f_ratio))
    return out

_check_dominance_chain.check_name = "dominance_chain"


def _check_charpoly_reduction_invariance(ctx: _Ctx):
    p1 = characteristic_polynomial(ctx.d).coeffs
    p2 = characteristic_polynomial(ctx.reduced).coeffs
    if p1 != p2:
        gap = max(abs(a - b) for a, b in zip(p1, p2))
        return [(float(p1[0]), float(p2[0]), float(gap))]
    return []

_check_charpoly_reduction_invariance.check_name = "charpoly_reduction_invariance"


def _check_coulson_match(ctx: _Ctx):
    spec = ctx.spectrum
    for z in spec.eigenvalues:
        if abs(z.real) <= 1e-6 and abs(z) > 1e-6:
            return "skip"
    try:
        integral = coulson_energy(ctx.d, rel_tol=1e-6)
    except PurelyImaginaryEigenvalueError:
        return "skip"
    diff = abs(integral - spec.energy) / max(1.0, spec.energy)
    if diff > 1e-6:
        return [(integral, spec.energy, diff)]
    return []

_check_coulson_match.check_name = "coulson_match"


def _check_equality_iff_rho(ctx: _Ctx):
    profile = ctx.profile
    _, _, ratio = _inline_rho_lowers(profile, ctx.d.n)
    numeric = abs(ratio - ctx.spectrum.rho) <= IFF_TOL
    predicted = equality_verdict_rho_lower(ctx.d).predicted_equality
    if predicted != numeric:
        return [(float(predicted), float(numeric), abs(ratio - ctx.spectrum.rho))]
    return []

_check_equality_iff_rho.check_name = "equality_iff_rho"


def _check_equality_iff_energy(ctx: _Ctx):
    profile, n = ctx.profile, ctx.d.n
    _, _, _, _, f_ratio = _inline_energy_uppers(profile, n, ctx.spectrum.rho)
    numeric = abs(f_ratio - ctx.spectrum.energy) <= IFF_TOL
    predicted = equality_verdict_energy_upper(ctx.d).predicted_equality
    if predicted != numeric:
        return [(float(predicted), float(numeric), abs(f_ratio - ctx.spectrum.energy))]
    return []

_check_equality_iff_energy.check_name = "equality_iff_energy"


_CHECKS = {
    fn.check_name: fn
    for fn in (
        _check_walk_rowsum,
        _check_walk_sum_identity,
        _check_symmetrization_radius,
        _check_moment_difference,
        _check_moment_total,
        _check_rho_chain,
        _check_energy_bounds,
        _check_dominance_chain,
        _check_charpoly_reduction_invariance,
        _check_coulson_match,
        _check_equality_iff_rho,
        _check_equality_iff_energy,
    )
}

CHECK_NAMES: tuple[str, ...] = tuple(_CHECKS)


def verify_all(
    n: int,
    checks: Optional[Sequence[str]] = None,
    mode: str = "exhaustive",
    *,
    count: int = 1000,
    p: float = 0.5,
    seed: int = 0,
    tol: float = bounds_mod.DEFAULT_TOL,
) -> VerificationReport:
    """Run the named checks over every digraph of the requested corpus.

    ``mode="exhaustive"`` walks all labeled digraphs (n <= 5);
    ``mode="random"`` samples ``count`` digraphs with arc probability ``p``
    from seeds seed, seed+1, ... (n <= 12).  Reports are deterministic for
    a fixed configuration, including violation order.
    """
    if checks is None:
        selected = list(CHECK_NAMES)
    else:
        selected = list(checks)
        unknown = [c for c in selected if c not in _CHECKS]
        if unknown:
            raise UnknownCheckError(f"unknown check name(s): {', '.join(unknown)}; "
                                    f"known: {', '.join(CHECK_NAMES)}")
    if mode == "exhaustive":
        if not 1 <= n <= EXHAUSTIVE_MAX_N:
            raise ValueError(f"exhaustive mode needs 1 <= n <= {EXHAUSTIVE_MAX_N}, got {n}")
        source = enumerate_digraphs(n)
        mode_desc = "exhaustive"
    elif mode == "random":
        if not 1 <= n <= RANDOM_MAX_N:
            raise ValueError(f"random mode needs 1 <= n <= {RANDOM_MAX_N}, got {n}")
        if count < 1:
            raise ValueError(f"need count >= 1, got {count}")
        source = (random_digraph(n, p, seed + k) for k in range(count))
        mode_desc = f"random(count={count}, p={p}, seed={seed})"
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'exhaustive' or 'random'")

    stats = {name: CheckStats() for name in selected}
    violations: list[Violation] = []
    inapplicable: list[str] = []
    checked = 0
    started = time.monotonic()
    for d in source:
        checked += 1
        ctx = _Ctx(d, tol)
        if d.arc_count and d.n:
            prof = ctx.profile
            if prof.sum_t2_sq > prof.a * prof.sum_c2_sq:
                inapplicable.append(ctx.text)
        for name in selected:
            result = _CHECKS[name](ctx)
            if result == "skip":
                stats[name].skipped += 1
            elif result:
                stats[name].failed += 1
                for lhs, rhs, gap in result:
                    violations.append(Violation(ctx.text, name, float(lhs), float(rhs), float(gap)))
            else:
                stats[name].passed += 1
    return VerificationReport(
        n=n,
        mode=mode_desc,
        digraphs_checked=checked,
        checks_run=stats,
        violations=tuple(violations),
        bound_inapplicable=tuple(inapplicable),
        elapsed=time.monotonic() - started,
    )
