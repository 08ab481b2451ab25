"""Kesten-type spectral tests on Cayley-ball truncations.

The truncation of Σ_s L_s to a ball is a compression of the operator on
ℓ²(Γ), so every number computed here is a lower bound for the reduced norm
‖Σ_s λ(s)‖.  Verdicts use upper bounds only when one is supplied or a
closed form is explicitly requested.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .cayley import DEFAULT_CAP, CayleyBall, CayleyOperator, ball
from .discrete import DiscreteGroup

WALK_CAP = 4096
LANCZOS_TOL = 1e-9
VERDICTS = ("co-amenable", "not co-amenable", "inconclusive")


@dataclass
class LanczosResult:
    value: float
    iterations: int
    converged: bool


def lanczos_top(apply, n: int, start: np.ndarray, tol: float = LANCZOS_TOL, max_iter: int = 3000) -> LanczosResult:
    """Largest eigenvalue of a Hermitian operator by the plain three-term recurrence.

    Stops when the top Ritz value changes by less than ``tol`` or the Krylov
    space is exhausted.  No reorthogonalization: only the extreme Ritz value
    is read, and lost orthogonality merely duplicates it.
    """
    v = start.astype(np.result_type(start.dtype, np.float64)) / np.linalg.norm(start)
    v_prev = np.zeros_like(v)
    alphas: list = []
    betas: list = []
    beta = 0.0
    prev = None
    top = 0.0
    for it in range(1, min(max_iter, n) + 1):
        w = apply(v)
        alpha = float(np.real(np.vdot(v, w)))
        w -= alpha * v
        if beta:
            w -= beta * v_prev
        alphas.append(alpha)
        if len(alphas) == 1:
            top = alpha
        else:
            top = float(eigvalsh_tridiagonal(np.array(alphas), np.array(betas), select="i",
                                             select_range=(len(alphas) - 1, len(alphas) - 1))[0])
        beta = float(np.linalg.norm(w))
        if beta <= 1e-12 * max(1.0, abs(top)):
            return LanczosResult(top, it, True)
        if prev is not None and abs(top - prev) < tol:
            return LanczosResult(top, it, True)
        prev = top
        betas.append(beta)
        v_prev, v = v, w / beta
    return LanczosResult(top, len(alphas), len(alphas) >= n)


# -- closed walks ----------------------------------------------------------------


def _sphere_quotient(B: CayleyBall):
    """Tridiagonal sphere-to-sphere counts if every sphere is uniform, else None.

    Row r lists how many neighbours a vertex of sphere r has in spheres
    r-1, r, r+1 (inside the ball).  When this is constant on each sphere the
    spheres form an equitable partition and walk counts from e can be done on
    the (R+1)-point quotient.
    """
    sph = B.sphere_of()
    nsph = len(B.sphere_sizes)
    off = B.offsets[:-1]
    counts = np.zeros((3, B.size), dtype=np.int64)
    for src, dst in B.edges:
        d = sph[src] - sph[dst]
        if np.any(np.abs(d) > 1):
            return None
        for j, delta in enumerate((-1, 0, 1)):
            sel = dst[d == delta]
            counts[j] += np.bincount(sel, minlength=B.size)
    rows = []
    for j in range(3):
        lo = np.minimum.reduceat(counts[j], off)
        hi = np.maximum.reduceat(counts[j], off)
        if np.any(lo != hi):
            return None
        rows.append([int(c) for c in lo])
    return rows, nsph


def closed_walks(B: CayleyBall, length: int) -> int:
    """Exact number of words of the given length over S that evaluate to e
    and whose every prefix stays in the ball (big-integer arithmetic)."""
    if length < 0:
        raise ValueError("walk length must be nonnegative")
    q = _sphere_quotient(B)
    if q is not None:
        (down, same, up), nsph = q
        f = [0] * nsph
        f[0] = 1
        for _ in range(length):
            g = [0] * nsph
            for r in range(nsph):
                t = same[r] * f[r]
                if r > 0:
                    t += down[r] * f[r - 1]
                if r + 1 < nsph:
                    t += up[r] * f[r + 1]
                g[r] = t
            f = g
        return f[0]
    n_gen = max(B.n_generators, 1)
    exact_small = n_gen ** length < 2**63
    v = np.zeros(B.size, dtype=np.int64 if exact_small else object)
    v[0] = 1
    for _ in range(length):
        y = np.zeros(B.size, dtype=v.dtype)
        for src, dst in B.edges:
            y[dst] += v[src]
        v = y
    return int(v[0])


def walk_growth(count: int, length: int) -> float:
    """count^(1/length) computed from the exact integer."""
    if count <= 0 or length == 0:
        return 0.0
    bits = count.bit_length()
    shift = max(0, bits - 900)
    mant = count >> shift
    return math.exp((math.log(mant) + shift * math.log(2)) / length)


# -- reports and verdicts -------------------------------------------------------


@dataclass
class KestenReport:
    group: str
    N: int
    radius: int
    ball_size: int
    method: str
    top_eigenvalue_estimate: float | None
    walk_estimate: float | None
    walk_length: int | None
    closed_walks: str | None
    lanczos_iterations: int | None
    verdict: str
    oracle_used: bool
    oracle_norm: float | None
    tolerance: float
    amenable_tag: bool | None = None
    notes: list = field(default_factory=list)

    @property
    def best_estimate(self) -> float:
        vals = [v for v in (self.top_eigenvalue_estimate, self.walk_estimate) if v is not None]
        return max(vals) if vals else 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def co_amenability_verdict(report: KestenReport, oracle_norm: float | None = None, tol: float = 1e-3) -> str:
    """co-amenable when the lower bound reaches N - tol; not co-amenable only
    when a certified upper bound lies strictly below N; otherwise inconclusive."""
    est = report.best_estimate
    if oracle_norm is not None:
        if est > oracle_norm + 1e-9:
            raise ValueError(f"estimate {est!r} exceeds the claimed upper bound {oracle_norm!r}")
        if oracle_norm < report.N:
            return "not co-amenable"
    if est >= report.N - tol:
        return "co-amenable"
    return "inconclusive"


def kesten_estimate(group: DiscreteGroup, R: int, method: str = "lanczos", walk_length: int | None = None,
                    oracle_norm: float | None = None, use_builtin_oracle: bool = False, tol: float = 1e-3,
                    cap: int = DEFAULT_CAP, B: CayleyBall | None = None) -> KestenReport:
    """Lower bounds for ‖Σ_s λ(s)‖ from the radius-R ball, with a verdict.

    ``walk_length`` is the even word length 2n for the closed-walk estimate
    (default 8R, at most 4096).
    """
    if method not in ("lanczos", "walks", "both"):
        raise ValueError(f"method must be lanczos, walks or both, got {method!r}")
    B = ball(group, R, cap) if B is None else B
    N = B.n_generators
    notes = []
    top = iters = None
    if method in ("lanczos", "both"):
        if N == 0:
            top, iters = 0.0, 0
        else:
            op = CayleyOperator(B)
            start = np.zeros(B.size)
            start[0] = 1.0
            res = lanczos_top(op.matvec, B.size, start)
            top, iters = res.value, res.iterations
            if not res.converged:
                notes.append("lanczos stopped at the iteration cap")
            if B.closed:
                # the ball is the whole finite group: the graph is N-regular and
                # connected, so the constant vector gives the top eigenvalue N exactly
                top = float(N)
                notes.append("ball covers the finite group; top eigenvalue is exactly |S|")
    walk = wl = count = None
    if method in ("walks", "both"):
        wl = walk_length if walk_length is not None else min(WALK_CAP, max(2, 8 * R))
        if wl % 2 or wl < 0:
            raise ValueError(f"walk length must be even and nonnegative, got {wl}")
        if wl > WALK_CAP:
            raise ValueError(f"walk length {wl} exceeds the cap of {WALK_CAP}")
        c = closed_walks(B, wl)
        count = str(c)
        walk = walk_growth(c, wl)
    oracle = oracle_norm
    used = oracle is not None
    if oracle is None and use_builtin_oracle:
        oracle = group.oracle_norm()
        used = oracle is not None
    rep = KestenReport(group.name, N, R, B.size, method, top, walk, wl, count, iters, "inconclusive",
                       used, oracle, tol, group.amenable, notes)
    if rep.best_estimate > N + 1e-9:
        raise AssertionError(f"estimate {rep.best_estimate} exceeds N = {N}")
    rep.verdict = co_amenability_verdict(rep, oracle, tol)
    return rep


@dataclass
class Condition5Report:
    group: str
    radius: int
    lam: list
    lhs: float            # |Σ_{i=0}^N λ_i|
    truncated_norm: float  # lower bound for ‖λ_0 1 + Σ λ_i λ(s_i)‖
    oracle_upper: float | None
    status: str
    iterations: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lam"] = [[float(np.real(z)), float(np.imag(z))] for z in self.lam]
        return d


def condition5_check(group: DiscreteGroup, R: int, lam, oracle_upper: float | None = None, tol: float = 1e-3,
                     cap: int = DEFAULT_CAP, B: CayleyBall | None = None) -> Condition5Report:
    """Test |Σ λ_i| <= ‖λ_0 1 + Σ_i λ_i L_{s_i}‖ on the radius-R ball.

    status: "violated" if |Σ λ_i| exceeds the supplied upper bound,
    "confirmed-at-truncation" if the truncated norm already reaches it
    (within tol), "open" otherwise.
    """
    B = ball(group, R, cap) if B is None else B
    lam = np.asarray(lam, dtype=complex)
    if lam.ndim != 1 or len(lam) != B.n_generators + 1:
        raise ValueError(f"λ needs {B.n_generators + 1} entries (λ_0 and one per generator), got {lam.size}")
    op = CayleyOperator(B, lam[1:])

    def gram(v):
        Mv = op.matvec(v) + lam[0] * v
        return op.rmatvec(Mv) + np.conj(lam[0]) * Mv

    start = np.zeros(B.size, dtype=complex)
    start[0] = 1.0
    res = lanczos_top(gram, B.size, start)
    norm = math.sqrt(max(res.value, 0.0))
    lhs = float(abs(lam.sum()))
    if oracle_upper is not None and norm > oracle_upper + 1e-9:
        raise ValueError(f"truncated norm {norm!r} exceeds the claimed upper bound {oracle_upper!r}")
    if oracle_upper is not None and lhs > oracle_upper + 1e-12:
        status = "violated"
    elif lhs <= norm + tol:
        status = "confirmed-at-truncation"
    else:
        status = "open"
    return Condition5Report(group.name, R, list(lam), lhs, norm, oracle_upper, status, res.iterations)


__all__ = ["KestenReport", "Condition5Report", "kesten_estimate", "co_amenability_verdict", "condition5_check",
           "closed_walks", "walk_growth", "lanczos_top", "LanczosResult", "WALK_CAP", "VERDICTS"]
