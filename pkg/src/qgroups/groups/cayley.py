"""Balls in Cayley graphs and the truncated operators Σ_s c_s L_s on them.

Vertices are indexed in BFS order from the identity, children visited in
generator order.  For each generator s we keep index arrays (src, dst) with
dst = index of s·x for every x whose left translate stays in the ball, so
(L_s v)[s·x] = v[x] and everything leaving the ball is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discrete import DiscreteGroup, FreeGroup

DEFAULT_CAP = 10_000_000


class BallTooLarge(ValueError):
    pass


@dataclass
class CayleyBall:
    group: DiscreteGroup
    radius: int
    sphere_sizes: list
    edges: list                 # per generator: (src, dst) int arrays
    elements: list | None       # normal forms (None when decoded on demand)
    _decode: object = None

    @property
    def size(self) -> int:
        return int(sum(self.sphere_sizes))

    @property
    def n_generators(self) -> int:
        return len(self.edges)

    @property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.sphere_sizes)])

    def element(self, i: int):
        if self.elements is not None:
            return self.elements[i]
        return self._decode(i)

    def sphere_of(self) -> np.ndarray:
        return np.repeat(np.arange(len(self.sphere_sizes)), self.sphere_sizes)

    @property
    def closed(self) -> bool:
        """True when no generator leads out of the ball (the ball is the whole finite group)."""
        return all(len(src) == self.size for src, _ in self.edges)

    def dense_matrix(self, coeffs=None) -> np.ndarray:
        """Dense Σ_s c_s L_s; meant for small balls only."""
        n = self.size
        if n > 5000:
            raise BallTooLarge(f"dense matrix of a {n}-element ball refused (limit 5000)")
        coeffs = np.ones(self.n_generators) if coeffs is None else np.asarray(coeffs)
        M = np.zeros((n, n), dtype=np.result_type(coeffs, np.int64))
        for c, (src, dst) in zip(coeffs, self.edges):
            M[dst, src] += c
        return M


def _generic_ball(G: DiscreteGroup, R: int, cap: int) -> CayleyBall:
    gens = G.generators()
    e = G.identity()
    index = {e: 0}
    elements = [e]
    sphere_sizes = [1]
    frontier = [e]
    for _ in range(R):
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.multiply(s, x)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise BallTooLarge(f"ball of radius {R} in {G.name} exceeds the cap of {cap} elements")
        if not nxt:
            break
        sphere_sizes.append(len(nxt))
        frontier = nxt
    edges = []
    for s in gens:
        src, dst = [], []
        for i, x in enumerate(elements):
            j = index.get(G.multiply(s, x))
            if j is not None:
                src.append(i)
                dst.append(j)
        edges.append((np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64)))
    return CayleyBall(G, R, sphere_sizes, edges, elements)


def _free_ball(G: FreeGroup, R: int, cap: int) -> CayleyBall:
    """Vectorized BFS for F_k: children of x are s·x for s != first(x)^-1."""
    k2 = 2 * G.k
    if k2 == 0 or R == 0:
        empty = np.zeros(0, dtype=np.int64)
        return CayleyBall(G, R, [1], [(empty, empty) for _ in range(k2)], [()])
    sizes = [1] + [k2 * (k2 - 1) ** (r - 1) for r in range(1, R + 1)]
    total = sum(sizes)
    if total > cap:
        raise BallTooLarge(f"ball of radius {R} in {G.name} has {total} elements, over the cap of {cap}")
    idx_t = np.int32 if total < 2**31 else np.int64
    first = np.full(total, -1, dtype=np.int8)     # first letter of the reduced word
    parent = np.full(total, -1, dtype=idx_t)      # index of the word without its first letter
    child0 = np.full(total, -1, dtype=idx_t)      # index of the first child
    off = np.concatenate([[0], np.cumsum(sizes)])
    gens = np.arange(k2, dtype=np.int8)
    # sphere 1
    first[1:1 + k2] = gens
    parent[1:1 + k2] = 0
    child0[0] = 1
    for r in range(1, R):
        lo, hi = off[r], off[r + 1]
        p = np.arange(lo, hi, dtype=idx_t)
        f = first[lo:hi]
        cand_p = np.repeat(p, k2)
        cand_s = np.tile(gens, hi - lo)
        keep = cand_s != (np.repeat(f, k2) ^ 1)
        cp, cs = cand_p[keep], cand_s[keep]
        a, b = off[r + 1], off[r + 2]
        parent[a:b] = cp
        first[a:b] = cs
        child0[lo:hi] = a + (k2 - 1) * np.arange(hi - lo, dtype=idx_t)
    edges = []
    inner = off[R]                    # vertices with |x| < R have all children in the ball
    for s in range(k2):
        # s·x = parent(x) when first(x) = s^-1
        up = np.nonzero(first == (s ^ 1))[0].astype(idx_t)
        src_up, dst_up = up, parent[up]
        # s·x = child of x otherwise, for |x| < R
        xs = np.arange(inner, dtype=idx_t)
        f = first[:inner]
        ok = f != (s ^ 1)
        xs = xs[ok]
        f = f[ok]
        # rank of s among the allowed letters of x (all letters for the identity)
        rank = np.where((f >= 0) & (s > (f ^ 1)), s - 1, s).astype(idx_t)
        dst_down = child0[xs] + rank
        src = np.concatenate([src_up, xs])
        dst = np.concatenate([dst_up, dst_down])
        edges.append((src, dst))

    def decode(i: int):
        word = []
        while i > 0:
            word.append(int(first[i]))
            i = int(parent[i])
        return tuple(word)

    ball = CayleyBall(G, R, sizes, edges, None, decode)
    ball.first = first
    ball.parent = parent
    return ball


def ball(group: DiscreteGroup, R: int, cap: int = DEFAULT_CAP) -> CayleyBall:
    """Ball of word length <= R around the identity, BFS ordered."""
    if R < 0:
        raise ValueError("radius must be nonnegative")
    group.check_generators()
    if isinstance(group, FreeGroup):
        return _free_ball(group, R, cap)
    return _generic_ball(group, R, cap)


class CayleyOperator:
    """Matrix-free Σ_s c_s L_s restricted to a ball (Dirichlet truncation).

    Read-only after construction; ``matvec`` and ``rmatvec`` allocate their
    outputs, so one instance may serve concurrent callers.
    """

    def __init__(self, B: CayleyBall, coeffs=None):
        self.ball = B
        self.coeffs = np.ones(B.n_generators) if coeffs is None else np.asarray(coeffs)
        if len(self.coeffs) != B.n_generators:
            raise ValueError(f"{len(self.coeffs)} coefficients for {B.n_generators} generators")
        self.dtype = np.result_type(self.coeffs, np.float64)
        self.shape = (B.size, B.size)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        y = np.zeros(self.ball.size, dtype=np.result_type(self.dtype, v.dtype))
        for c, (src, dst) in zip(self.coeffs, self.ball.edges):
            if c == 0:
                continue
            # dst entries are distinct for one generator (left translation is injective)
            if c == 1:
                y[dst] += v[src]
            else:
                y[dst] += c * v[src]
        return y

    def rmatvec(self, v: np.ndarray) -> np.ndarray:
        """Conjugate transpose applied to v."""
        y = np.zeros(self.ball.size, dtype=np.result_type(self.dtype, v.dtype))
        for c, (src, dst) in zip(self.coeffs, self.ball.edges):
            if c == 0:
                continue
            y[src] += np.conj(c) * v[dst]
        return y


__all__ = ["CayleyBall", "CayleyOperator", "ball", "BallTooLarge", "DEFAULT_CAP"]
