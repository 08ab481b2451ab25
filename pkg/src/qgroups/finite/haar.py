"""Haar state, left kernels, the reduced quantum group, GNS data and the
multiplicative unitary of a finite quantum group."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..bialgebra import LinearFunctional, add_into
from ..linalg import (
    Matrix,
    conj_transpose,
    inverse,
    is_identity,
    kron,
    matmul,
    nullspace,
    psd_rank,
    rref,
    solve_sparse,
)
from ..scalars import ONE, ZERO, ExactScalar
from .core import FiniteQuantumGroup, InvalidQuantumGroup, check_morphism


class NotAState(ValueError):
    pass


class NotFaithful(ValueError):
    pass


def haar_solve(A: FiniteQuantumGroup) -> LinearFunctional:
    """The unique two-sided invariant state, by exact linear solve.

    Raises :class:`InvalidQuantumGroup` when the invariance system has no
    normalised solution, more than one, or when the solution is not positive.
    """
    n = A.dim
    unit = A.unit()
    eqs = []
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for (j, k), c in A.comultiply_key(i).items():
            add_into(left.setdefault(k, {}), {j: c})
            add_into(right.setdefault(j, {}), {k: c})
        for out in range(n):
            u = unit.get(out, ZERO)
            for side in (left, right):
                row = dict(side.get(out, {}))
                if u:
                    add_into(row, {i: -u})
                eqs.append((row, ZERO))
    eqs.append((dict(unit), ONE))
    sol, nullity = solve_sparse(eqs, list(range(n)))
    if sol is None:
        raise InvalidQuantumGroup(f"not a compact quantum group datum: {A.name} has no invariant normalised functional")
    if nullity:
        raise InvalidQuantumGroup(
            f"not a compact quantum group datum: invariant functionals on {A.name} form a {nullity + 1}-dimensional family")
    h = A.functional([sol[i] for i in range(n)])
    ok, _ = psd_rank(gram_matrix(A, h))
    if not ok:
        raise InvalidQuantumGroup(f"not a compact quantum group datum: invariant functional on {A.name} is not positive")
    return h


def gram_matrix(A: FiniteQuantumGroup, phi: LinearFunctional, keys: Sequence[int] | None = None) -> Matrix:
    """G[b][a] = phi(x_b^* x_a)."""
    keys = list(range(A.dim)) if keys is None else list(keys)
    stars = {b: A.star_key(b) for b in keys}
    return [[phi(A.multiply(stars[b], {a: ONE})) for a in keys] for b in keys]


def is_positive(A: FiniteQuantumGroup, phi: LinearFunctional) -> bool:
    return psd_rank(gram_matrix(A, phi))[0]


def is_state(A: FiniteQuantumGroup, phi: LinearFunctional) -> bool:
    return phi(A.unit()) == ONE and is_positive(A, phi)


def left_kernel(A: FiniteQuantumGroup, phi: LinearFunctional) -> Matrix:
    """Basis (in reduced row echelon form) of {a : phi(a^*a) = 0}."""
    G = gram_matrix(A, phi)
    ok, _ = psd_rank(G)
    if not ok:
        raise NotAState(f"functional on {A.name} is not positive")
    # for PSD G, phi(a*a) = 0 iff G a = 0
    null = nullspace(G, A.dim)
    if not null:
        return []
    R, _ = rref(null, A.dim)
    return R


@dataclass
class Quotient:
    """A/N with N given by an RREF basis; classes are represented by the
    basis vectors at non-pivot positions."""

    A: FiniteQuantumGroup
    kernel: Matrix
    pivots: list
    reps: list

    @classmethod
    def build(cls, A: FiniteQuantumGroup, kernel: Matrix) -> "Quotient":
        pivots = []
        for row in kernel:
            pivots.append(next(i for i, c in enumerate(row) if c))
        reps = [i for i in range(A.dim) if i not in set(pivots)]
        return cls(A, kernel, pivots, reps)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def project(self, x: dict) -> list[ExactScalar]:
        """Coordinates of the class of x on the representatives."""
        v = self.A.vector(x)
        for row, p in zip(self.kernel, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return [v[i] for i in self.reps]

    def theta(self) -> Matrix:
        cols = [self.project({a: ONE}) for a in range(self.A.dim)]
        return [[cols[a][r] for a in range(self.A.dim)] for r in range(self.dim)]

    def lift(self, r: int) -> dict:
        return {self.reps[r]: ONE}

    def _element(self, coords) -> dict:
        return {r: c for r, c in enumerate(coords) if c}

    def algebra(self, with_comult: bool, name: str) -> FiniteQuantumGroup:
        """Induced structure maps on the quotient."""
        A = self.A
        m = self.dim
        mult = {(r, s): self._element(self.project(A.multiply(self.lift(r), self.lift(s))))
                for r in range(m) for s in range(m)}
        invol = {r: self._element(self.project(A.star(self.lift(r)))) for r in range(m)}
        unit = self._element(self.project(A.unit()))
        comult: dict = {}
        if with_comult:
            proj = {a: self._element(self.project({a: ONE})) for a in range(A.dim)}
            for r in range(m):
                out: dict = {}
                for (x, y), c in A.comultiply_key(self.reps[r]).items():
                    for u, cu in proj[x].items():
                        for v, cv in proj[y].items():
                            add_into(out, {(u, v): cu * cv}, c)
                comult[r] = out
        labels = [A.labels[i] for i in self.reps]
        return FiniteQuantumGroup(labels, unit, mult, invol, comult, name=name)


def quotient_algebra(A: FiniteQuantumGroup, phi: LinearFunctional):
    """A/N_phi as a *-algebra (no comultiplication); returns (algebra, theta)."""
    q = Quotient.build(A, left_kernel(A, phi))
    return q.algebra(with_comult=False, name=f"{A.name}/N"), q.theta()


@dataclass
class Reduced:
    algebra: FiniteQuantumGroup
    theta: Matrix
    haar: LinearFunctional

    @property
    def bijective(self) -> bool:
        return len(self.theta) == len(self.theta[0]) and is_identity(self.theta)


def reduce(A: FiniteQuantumGroup, h: LinearFunctional | None = None) -> Reduced:
    """Quotient by the left kernel of the Haar state, with verified morphism θ
    and faithful induced Haar state."""
    h = haar_solve(A) if h is None else h
    q = Quotient.build(A, left_kernel(A, h))
    Ar = q.algebra(with_comult=True, name=f"{A.name}_r")
    theta = q.theta()
    h_r = Ar.functional([h.value(i) for i in q.reps])
    report = check_morphism(A, Ar, theta)
    if not report.passed:
        raise InvalidQuantumGroup("θ is not a morphism: " + "; ".join(report.failures))
    # h = h_r ∘ θ
    for a in range(A.dim):
        if sum((theta[r][a] * h_r.value(r) for r in range(q.dim)), ZERO) != h.value(a):
            raise InvalidQuantumGroup("h != h_r ∘ θ")
    ok, rk = psd_rank(gram_matrix(Ar, h_r))
    if not ok or rk != Ar.dim:
        raise InvalidQuantumGroup("reduced Haar state is not faithful")
    return Reduced(Ar, theta, h_r)


@dataclass
class GnsData:
    gns_dim: int
    inner_product: Matrix      # G[b][a] = h(x_b^* x_a) on class representatives
    rep: dict                  # basis index -> gns_dim x gns_dim matrix
    cyclic_vector: list
    labels: list

    def inner(self, u, v) -> ExactScalar:
        """⟨u, v⟩, linear in u."""
        total = ZERO
        for b, vb in enumerate(v):
            if not vb:
                continue
            for a, ua in enumerate(u):
                if ua and self.inner_product[b][a]:
                    total = total + vb.conj() * self.inner_product[b][a] * ua
        return total

    def apply(self, a: int, vec):
        M = self.rep[a]
        return [sum((M[i][j] * vec[j] for j in range(self.gns_dim) if M[i][j] and vec[j]), ZERO)
                for i in range(self.gns_dim)]

    def check(self, A: FiniteQuantumGroup, phi: LinearFunctional) -> list[str]:
        """Exact verification of the GNS identities; returns failures."""
        failures = []
        n = self.gns_dim
        basis = [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
        z = self.cyclic_vector
        rep_of = lambda x: _rep_matrix(self, x)  # noqa: E731
        if not is_identity(rep_of(A.unit())):
            failures.append("rep(1) != identity")
        for a in range(A.dim):
            if self.inner(self.apply(a, z), z) != phi.value(a):
                failures.append(f"h({A.labels[a]}) != <rep z, z>")
            star = rep_of(A.star_key(a))
            for u in basis:
                for v in basis:
                    lhs = self.inner(self.apply(a, u), v)
                    rhs = self.inner(u, _mv(star, v))
                    if lhs != rhs:
                        failures.append(f"rep({A.labels[a]})^* != rep({A.labels[a]}^*)")
                        break
                else:
                    continue
                break
            for b in range(A.dim):
                lhs = rep_of(A.multiply_keys(a, b))
                rhs = matmul(self.rep[a], self.rep[b])
                if lhs != rhs:
                    failures.append(f"rep not multiplicative on ({A.labels[a]},{A.labels[b]})")
        return failures

    def to_json(self) -> dict:
        return {
            "gns_dim": self.gns_dim,
            "labels": self.labels,
            "inner_product": [[c.to_json() for c in row] for row in self.inner_product],
            "cyclic_vector": [c.to_json() for c in self.cyclic_vector],
            "rep": {str(a): [[c.to_json() for c in row] for row in M] for a, M in self.rep.items()},
        }


def _mv(M, v):
    return [sum((M[i][j] * v[j] for j in range(len(v)) if M[i][j] and v[j]), ZERO) for i in range(len(M))]


def _rep_matrix(g: GnsData, x: dict) -> Matrix:
    n = g.gns_dim
    out = [[ZERO] * n for _ in range(n)]
    for a, c in x.items():
        M = g.rep[a]
        for i in range(n):
            for j in range(n):
                if M[i][j]:
                    out[i][j] = out[i][j] + c * M[i][j]
    return out


def gns(A: FiniteQuantumGroup, phi: LinearFunctional) -> GnsData:
    """GNS construction: left multiplication on A/N_phi with cyclic vector [1]."""
    if not is_state(A, phi):
        raise NotAState(f"functional on {A.name} is not a state")
    q = Quotient.build(A, left_kernel(A, phi))
    G = gram_matrix(A, phi, q.reps)
    rep = {}
    for a in range(A.dim):
        cols = [q.project(A.multiply({a: ONE}, q.lift(r))) for r in range(q.dim)]
        rep[a] = [[cols[c][r] for c in range(q.dim)] for r in range(q.dim)]
    z = q.project(A.unit())
    return GnsData(q.dim, G, rep, z, [A.labels[i] for i in q.reps])


@dataclass
class MultiplicativeUnitary:
    """W(x_a ⊗ x_b) = Δ(x_b)(x_a ⊗ 1) on A⊗A, basis index a*dim + b."""

    dim: int
    matrix: Matrix
    gram: Matrix   # Gram matrix of h⊗h on the tensor basis

    def adjoint(self) -> Matrix:
        """Adjoint with respect to the Haar inner product: G^{-1} W^H G."""
        return matmul(inverse(self.gram), matmul(conj_transpose(self.matrix), self.gram))

    def is_unitary(self) -> bool:
        Wstar = self.adjoint()
        return is_identity(matmul(Wstar, self.matrix)) and is_identity(matmul(self.matrix, Wstar))

    def to_json(self) -> dict:
        return {"dim": self.dim, "matrix": [[c.to_json() for c in row] for row in self.matrix],
                "gram": [[c.to_json() for c in row] for row in self.gram]}


def multiplicative_unitary_map(A: FiniteQuantumGroup, a: int, b: int) -> dict:
    """Δ(x_b)(x_a ⊗ 1) as a sparse tensor."""
    out: dict = {}
    for (x, y), c in A.comultiply_key(b).items():
        for z, cz in A.multiply_keys(x, a).items():
            add_into(out, {(z, y): cz}, c)
    return out


def multiplicative_unitary(A: FiniteQuantumGroup, h: LinearFunctional | None = None) -> MultiplicativeUnitary:
    h = haar_solve(A) if h is None else h
    G = gram_matrix(A, h)
    ok, rk = psd_rank(G)
    if not ok or rk != A.dim:
        raise NotFaithful(f"Haar state of {A.name} is not faithful; reduce first")
    n = A.dim
    W = [[ZERO] * (n * n) for _ in range(n * n)]
    for a in range(n):
        for b in range(n):
            col = a * n + b
            for (z, y), c in multiplicative_unitary_map(A, a, b).items():
                W[z * n + y][col] = c
    return MultiplicativeUnitary(n, W, kron(G, G))


def tensor_haar_norm2(A: FiniteQuantumGroup, h: LinearFunctional, t: dict) -> ExactScalar:
    """(h⊗h)(t^* t) computed inside the algebra A⊗A."""
    total = ZERO
    for (a1, b1), c1 in t.items():
        sa, sb = A.star_key(a1), A.star_key(b1)
        for (a2, b2), c2 in t.items():
            left = h(A.multiply(sa, {a2: ONE}))
            if not left:
                continue
            right = h(A.multiply(sb, {b2: ONE}))
            total = total + c1.conj() * c2 * left * right
    return total


__all__ = [
    "haar_solve", "gram_matrix", "is_positive", "is_state", "left_kernel", "quotient_algebra",
    "reduce", "Reduced", "gns", "GnsData", "multiplicative_unitary", "MultiplicativeUnitary",
    "multiplicative_unitary_map", "tensor_haar_norm2", "NotAState", "NotFaithful",
]
