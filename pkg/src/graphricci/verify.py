"""Executable checks of the Harnack inequalities and eigenvalue–diameter bounds.

Every check compares a left-hand side against a right-hand side at each vertex
and reports the tightest slack ``rhs − lhs`` (negative means violated).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .curvature import CurvatureResult, check_dimension, graph_curvature, inv_dim
from .graph import Graph, diameter
from .operators import apply_laplacian, gradient_norm_sq, gradient_norm_sq_all, second_difference_sum
from .spectra import EigenPair, Spectrum, eigen_residual, harmonic_eigenpairs

CHECK_TOL = 1e-8
KAPPA_LAMBDA_TOL = 1e-9
MEAN_ZERO_REL = 1e-8
RESIDUAL_TOL = 1e-8
ALPHA_EPS = 1e-12
DEFAULT_SAMPLES = 500


class InadmissibleAlpha(ValueError):
    pass


class BoundVariant(enum.Enum):
    STATED = "stated"
    PROOF = "proof"
    CHUNG_YAU = "chung_yau"


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst_slack: float
    worst_vertex: int | None
    params: dict[str, Any] = field(default_factory=dict)

    def sort_key(self):
        p = self.params
        return (
            self.name,
            p.get("m", -math.inf),
            p.get("lambda", -math.inf),
            p.get("alpha", -math.inf),
            p.get("index", -1),
            str(p.get("source", "")),
        )


def _result(name: str, slack: np.ndarray, tol: float, params: dict) -> CheckResult:
    slack = np.asarray(slack, dtype=float)
    flat = slack.reshape(slack.shape[0], -1).min(axis=1) if slack.ndim > 1 else slack
    worst = int(np.argmin(flat))
    ws = float(flat[worst])
    return CheckResult(name, bool(ws >= -tol), ws, worst, params)


def _require_nontrivial(pair: EigenPair) -> None:
    if pair.trivial:
        raise ValueError("check requires a nontrivial eigenpair")


def lemma31_sides(g: Graph, f, m: float, kappa: float) -> tuple[np.ndarray, np.ndarray]:
    """Per-vertex (lhs, rhs); works on a single function or columns of functions."""
    f = np.asarray(f, dtype=float)
    lap = apply_laplacian(g, f)
    grad = np.array([gradient_norm_sq(g, f, x) for x in range(g.n)])
    lhs = (4.0 * inv_dim(m) - 2.0) * lap**2 + (2.0 + 2.0 * kappa) * grad
    rhs = np.array([second_difference_sum(g, f, x) for x in range(g.n)])
    return lhs, rhs


def check_lemma31(g: Graph, f, m: float, kappa: float, tol: float = CHECK_TOL, **params) -> CheckResult:
    """(4/m − 2)(Δf)² + (2 + 2κ)|∇f|² ≤ second-difference sum, at every vertex.

    ``f`` may hold several functions as columns; the worst one is reported.
    """
    m = check_dimension(m)
    lhs, rhs = lemma31_sides(g, f, m, kappa)
    return _result("lemma31", rhs - lhs, tol, {"m": m, "kappa": kappa, **params})


def harnack_pointwise_constant(lam: float, m: float, kappa: float, alpha: float) -> float:
    denom = (alpha - 2.0) * lam + 2.0 * kappa
    if not denom > ALPHA_EPS:
        raise InadmissibleAlpha(
            f"alpha={alpha!r} is not admissible: need alpha > 2 - 2*kappa/lambda = {2.0 - 2.0 * kappa / lam!r}"
        )
    return ((alpha**2 - 4.0 * inv_dim(m)) * lam + 2.0 * kappa * alpha) / denom * lam


def harnack_gradient_constant(lam: float, m: float, kappa: float) -> float:
    return (8.0 - 2.0 * inv_dim(m)) * lam - 4.0 * kappa


def check_harnack_pointwise(
    g: Graph, pair: EigenPair, m: float, kappa: float, alpha: float, tol: float = CHECK_TOL, **params
) -> CheckResult:
    """|∇f|²(x) + αλf²(x) ≤ C(α, λ, κ, m)·λ·max f² for a harmonic eigenfunction."""
    _require_nontrivial(pair)
    m = check_dimension(m)
    lam, f = pair.lam, pair.f
    const = harnack_pointwise_constant(lam, m, kappa, alpha)
    lhs = gradient_norm_sq_all(g, f) + alpha * lam * f**2
    rhs = const * float(np.max(f**2))
    return _result(
        "harnack_pointwise", rhs - lhs, tol, {"m": m, "kappa": kappa, "alpha": alpha, "lambda": lam, **params}
    )


def check_harnack_gradient(
    g: Graph, pair: EigenPair, m: float, kappa: float, tol: float = CHECK_TOL, **params
) -> CheckResult:
    """|∇f|²(x) ≤ ((8 − 2/m)λ − 4κ)·max f²."""
    _require_nontrivial(pair)
    m = check_dimension(m)
    lhs = gradient_norm_sq_all(g, pair.f)
    rhs = harnack_gradient_constant(pair.lam, m, kappa) * float(np.max(pair.f**2))
    return _result("harnack_gradient", rhs - lhs, tol, {"m": m, "kappa": kappa, "lambda": pair.lam, **params})


def check_inequality_11(g: Graph, pair: EigenPair, tol: float = CHECK_TOL, **params) -> CheckResult:
    """(1/d_x) Σ_y (f(x) − f(y))² ≤ 8λ max f². Known to fail on some graphs; informational."""
    _require_nontrivial(pair)
    f = pair.f
    lhs = np.array([sum((f[x] - f[y]) ** 2 for y, _ in g.neighbors(x)) / g.degrees[x] for x in range(g.n)])
    rhs = 8.0 * pair.lam * float(np.max(f**2))
    return _result("inequality_11", rhs - lhs, tol, {"lambda": pair.lam, **params})


def eigenvalue_bound(d: float, D: int, m: float, kappa: float, variant: BoundVariant = BoundVariant.PROOF) -> float:
    """Lower bound on a nonzero eigenvalue from max degree ``d`` and diameter ``D``.

    PROOF: (1 + 2κdD²)/(d(4 − 1/m)D²); STATED: (1 + 4κdD²)/(d(8 − 2/m)D²);
    CHUNG_YAU: 1/(8dD²), the κ = 0, m = ∞ reference.
    """
    if D <= 0 or d <= 0:
        raise ValueError(f"need D > 0 and d > 0, got D={D!r}, d={d!r}")
    m = check_dimension(m)
    im = inv_dim(m)
    dd = d * D * D
    if variant is BoundVariant.PROOF:
        return (1.0 + 2.0 * kappa * dd) / (dd * (4.0 - im))
    if variant is BoundVariant.STATED:
        return (1.0 + 4.0 * kappa * dd) / (dd * (8.0 - 2.0 * im))
    if variant is BoundVariant.CHUNG_YAU:
        return 1.0 / (8.0 * dd)
    raise ValueError(f"unknown variant {variant!r}")


def proof_bound_applies(d: float, D: int, kappa: float) -> bool:
    return 1.0 + 2.0 * kappa * d * D * D > 0.0


@dataclass(frozen=True)
class InfoItem:
    name: str
    status: str
    detail: dict[str, Any]


@dataclass
class VerificationReport:
    n: int
    num_edges: int
    d_max: float
    diam: int
    curvature: list[CurvatureResult]
    spectrum: Spectrum
    checks: list[CheckResult]
    info: list[InfoItem]
    seed: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "graph": {"n": self.n, "edges": self.num_edges, "d_max": self.d_max, "diameter": self.diam},
            "curvature": [
                {
                    "m": _num(c.m),
                    "kappa": c.kappa,
                    "argmin": c.argmin,
                    "per_vertex": [float(v) for v in c.per_vertex],
                }
                for c in self.curvature
            ],
            "spectrum": {"eigenvalues": [float(v) for v in self.spectrum.eigenvalues]},
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "worst_slack": c.worst_slack,
                    "worst_vertex": c.worst_vertex,
                    "params": {k: _num(v) for k, v in c.params.items()},
                }
                for c in self.checks
            ],
            "info": [{"name": i.name, "status": i.status, "detail": {k: _num(v) for k, v in i.detail.items()}} for i in self.info],
            "seed": self.seed,
        }


def _num(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if isinstance(v, (np.floating, np.integer)):
        return _num(v.item())
    return v


def full_report(
    g: Graph,
    m_list: Sequence[float],
    alpha_list: Sequence[float] = (),
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    workers: int | None = 1,
) -> VerificationReport:
    """Run every check for each dimension in ``m_list``.

    The curvature used in each inequality is the computed κ(G, m), so CD(m, κ)
    holds by construction and every mandatory check is expected to pass.
    """
    m_list = [check_dimension(m) for m in m_list]
    stats = diameter(g)
    d, D = stats.max_degree, stats.diameter
    spec = harmonic_eigenpairs(g)
    nontrivial = spec.nontrivial
    lam1 = spec.lambda1
    checks: list[CheckResult] = []
    info: list[InfoItem] = []

    for i, p in enumerate(spec.pairs):
        if p.trivial:
            continue
        res = eigen_residual(g, p)
        checks.append(CheckResult("eigen_residual", res <= RESIDUAL_TOL, RESIDUAL_TOL - res, None, {"lambda": p.lam, "index": i}))
        weighted = g.degrees * p.f
        bound = MEAN_ZERO_REL * float(np.abs(weighted).sum())
        slack = bound - abs(float(weighted.sum()))
        checks.append(CheckResult("mean_zero", slack >= 0.0, slack, None, {"lambda": p.lam, "index": i}))

    trivial_count = sum(p.trivial for p in spec.pairs)
    checks.append(
        CheckResult("single_zero_eigenvalue", trivial_count == 1, float(-abs(trivial_count - 1)), None, {})
    )

    worst11 = None
    for i, p in enumerate(spec.pairs):
        if p.trivial:
            continue
        r = check_inequality_11(g, p, index=i)
        if worst11 is None or r.worst_slack < worst11.worst_slack:
            worst11 = r
    info.append(
        InfoItem(
            "inequality_11",
            "pass" if worst11.passed else "fail",
            {"worst_slack": worst11.worst_slack, "worst_vertex": worst11.worst_vertex, "lambda": worst11.params["lambda"]},
        )
    )

    rng = np.random.default_rng(seed)
    sample = rng.normal(size=(g.n, samples))

    curvatures = []
    for m in m_list:
        cr = graph_curvature(g, m, workers=workers)
        curvatures.append(cr)
        kappa = cr.kappa

        checks.append(
            CheckResult(
                "kappa_le_lambda1", lam1 - kappa >= -KAPPA_LAMBDA_TOL, lam1 - kappa, cr.argmin, {"m": m, "kappa": kappa, "lambda": lam1}
            )
        )
        if samples > 0:
            checks.append(check_lemma31(g, sample, m, kappa, source="random", samples=samples))
        for i, p in enumerate(spec.pairs):
            checks.append(check_lemma31(g, p.f, m, kappa, **{"lambda": p.lam, "index": i}))

        for i, p in enumerate(spec.pairs):
            if p.trivial:
                continue
            checks.append(check_harnack_gradient(g, p, m, kappa, index=i))
            alphas = [(4.0 - 2.0 * kappa / p.lam, "4-2kappa/lambda")] + [(float(a), "given") for a in alpha_list]
            for a, rule in alphas:
                try:
                    checks.append(check_harnack_pointwise(g, p, m, kappa, a, index=i, alpha_rule=rule))
                except InadmissibleAlpha:
                    info.append(
                        InfoItem(
                            "alpha_skipped",
                            "inadmissible",
                            {"m": m, "alpha": a, "lambda": p.lam, "index": i, "alpha_min": 2.0 - 2.0 * kappa / p.lam},
                        )
                    )

        proof = eigenvalue_bound(d, D, m, kappa, BoundVariant.PROOF)
        if proof_bound_applies(d, D, kappa):
            checks.append(
                CheckResult(
                    "eigenvalue_bound_proof",
                    lam1 - proof >= -CHECK_TOL,
                    lam1 - proof,
                    None,
                    {"m": m, "kappa": kappa, "lambda": lam1, "bound": proof},
                )
            )
        else:
            info.append(InfoItem("eigenvalue_bound_proof", "not_applicable", {"m": m, "kappa": kappa, "bound": proof}))

        stated = eigenvalue_bound(d, D, m, kappa, BoundVariant.STATED)
        info.append(
            InfoItem(
                "eigenvalue_bound_stated",
                "pass" if lam1 >= stated - CHECK_TOL else "discrepancy",
                {"m": m, "kappa": kappa, "lambda": lam1, "bound": stated, "slack": lam1 - stated},
            )
        )
        cy = eigenvalue_bound(d, D, m, kappa, BoundVariant.CHUNG_YAU)
        info.append(
            InfoItem(
                "eigenvalue_bound_chung_yau",
                "pass" if lam1 >= cy - CHECK_TOL else "fail",
                {"m": m, "kappa": kappa, "lambda": lam1, "bound": cy, "slack": lam1 - cy},
            )
        )
        if not math.isinf(m):
            refined = kappa * (1.0 + 1.0 / (m - 1.0))
            info.append(
                InfoItem(
                    "kappa_lambda_refined",
                    "pass" if lam1 >= refined - KAPPA_LAMBDA_TOL else "fail",
                    {"m": m, "kappa": kappa, "lambda": lam1, "bound": refined, "slack": lam1 - refined},
                )
            )

    checks.sort(key=CheckResult.sort_key)
    return VerificationReport(g.n, g.num_edges, d, D, curvatures, spec, checks, info, seed)
