"""Pointwise Laplacian, carré du champ Γ, iterated Γ₂ and the normalized Laplacian matrix.

Functions on vertices are plain numpy arrays indexed by vertex. The pointwise
operators also accept a batch of functions stacked as columns, shape ``(n, k)``,
and then return one value per column.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph


def as_vertex_function(g: Graph, f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape[:1] != (g.n,):
        raise ValueError(f"vertex function has length {f.shape[:1]}, graph has n={g.n}")
    if not np.all(np.isfinite(f)):
        raise ValueError("vertex function has non-finite values")
    return f


def apply_laplacian(g: Graph, f) -> np.ndarray:
    """Δf(x) = (1/d_x) Σ_y w_xy (f(y) − f(x)) at every vertex."""
    f = as_vertex_function(g, f)
    out = np.empty_like(f)
    for x in range(g.n):
        out[x] = laplacian_at(g, f, x)
    return out


def laplacian_at(g: Graph, f: np.ndarray, x: int):
    acc = 0.0
    for y, w in g.neighbors(x):
        acc = acc + w * (f[y] - f[x])
    return acc / g.degrees[x]


def sym_laplacian_matrix(g: Graph) -> np.ndarray:
    """I − D^{-1/2} A D^{-1/2}, exactly symmetric."""
    s = 1.0 / np.sqrt(g.degrees)
    m = np.eye(g.n)
    for x, y, w in g.edges:
        m[x, y] = m[y, x] = -w * s[x] * s[y]
    return m


def gamma(g: Graph, f, h, x: int):
    """Γ(f,h)(x) = (1/2d_x) Σ_y w_xy (f(x)−f(y)) (h(x)−h(y))."""
    acc = 0.0
    for y, w in g.neighbors(x):
        acc = acc + w * (f[x] - f[y]) * (h[x] - h[y])
    return acc / (2.0 * g.degrees[x])


def gradient_norm_sq(g: Graph, f, x: int):
    """|∇f|²(x) = (1/d_x) Σ_y w_xy (f(x)−f(y))², i.e. 2Γ(f,f)(x)."""
    acc = 0.0
    for y, w in g.neighbors(x):
        acc = acc + w * (f[x] - f[y]) ** 2
    return acc / g.degrees[x]


def gradient_norm_sq_all(g: Graph, f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    return np.array([gradient_norm_sq(g, f, x) for x in range(g.n)])


def gamma2_def(g: Graph, f, x: int):
    """Γ₂(f,f)(x) from the definition ½{ΔΓ(f,f) − 2Γ(f,Δf)}, composed literally.

    Needs Γ(f,f) on the closed neighbourhood of ``x`` and Δf on the same set.
    """
    f = np.asarray(f, dtype=float)
    closed = [x] + [y for y, _ in g.neighbors(x)]
    gff = {v: gamma(g, f, f, v) for v in closed}
    lap = {v: laplacian_at(g, f, v) for v in closed}

    delta_gff = 0.0
    for y, w in g.neighbors(x):
        delta_gff = delta_gff + w * (gff[y] - gff[x])
    delta_gff = delta_gff / g.degrees[x]

    g_f_lapf = 0.0
    for y, w in g.neighbors(x):
        g_f_lapf = g_f_lapf + w * (f[x] - f[y]) * (lap[x] - lap[y])
    g_f_lapf = g_f_lapf / (2.0 * g.degrees[x])

    return 0.5 * delta_gff - g_f_lapf


def second_difference_sum(g: Graph, f, x: int):
    """(1/d_x) Σ_{y∼x} (w_xy/d_y) Σ_{z∼y} w_yz [f(x) − 2f(y) + f(z)]²."""
    d = g.degrees
    acc = 0.0
    for y, wxy in g.neighbors(x):
        inner = 0.0
        for z, wyz in g.neighbors(y):
            inner = inner + wyz * (f[x] - 2.0 * f[y] + f[z]) ** 2
        acc = acc + (wxy / d[y]) * inner
    return acc / d[x]


def gamma2_local(g: Graph, f, x: int):
    """Γ₂(f,f)(x) in closed form over the 2-ball of ``x``.

    ¼·second_difference_sum − ½|∇f|²(x) + ½(Δf(x))².
    """
    f = np.asarray(f, dtype=float)
    lap = laplacian_at(g, f, x)
    return 0.25 * second_difference_sum(g, f, x) - 0.5 * gradient_norm_sq(g, f, x) + 0.5 * lap**2
