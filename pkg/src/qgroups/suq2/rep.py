"""Float truncations of the Hilbert space representation and the spectral witness.

The representation acts on e_{n,k} (n >= 0, k in Z) by
φ(α)e_{n,k} = c_n e_{n-1,k} and φ(γ)e_{n,k} = q^n e_{n,k+1}, c_n = (1 - q^{2n})^{1/2}.
Truncation keeps 0 <= n <= n_max and |k| <= k_window and drops whatever leaves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigvalsh_tridiagonal

from .algebra import key_word


def c_coefficients(q: float, n_max: int) -> np.ndarray:
    """c_1, ..., c_{n_max}."""
    n = np.arange(1, n_max + 1)
    return np.sqrt(1.0 - np.abs(q) ** (2 * n))


@dataclass
class TruncatedRep:
    q: float
    n_max: int
    k_window: int
    alpha: sp.csr_matrix
    gamma: sp.csr_matrix

    @classmethod
    def build(cls, q: float, n_max: int, k_window: int) -> "TruncatedRep":
        q = float(q)
        if not 0 < abs(q) < 1:
            raise ValueError(f"q must satisfy 0 < |q| < 1, got {q}")
        if n_max < 1 or k_window < 0:
            raise ValueError("need n_max >= 1 and k_window >= 0")
        K = 2 * k_window + 1
        dim = (n_max + 1) * K
        c = c_coefficients(q, n_max)
        rows, cols, vals = [], [], []
        grows, gcols, gvals = [], [], []
        for n in range(n_max + 1):
            for j in range(K):
                src = n * K + j
                if n >= 1:
                    rows.append((n - 1) * K + j)
                    cols.append(src)
                    vals.append(c[n - 1])
                if j + 1 < K:
                    grows.append(n * K + j + 1)
                    gcols.append(src)
                    gvals.append(q ** n)
        alpha = sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))
        gamma = sp.csr_matrix((gvals, (grows, gcols)), shape=(dim, dim))
        return cls(q, n_max, k_window, alpha, gamma)

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    def index(self, n: int, k: int) -> int:
        return n * (2 * self.k_window + 1) + k + self.k_window

    def letter(self, c: str):
        return {"a": self.alpha, "A": self.alpha.T.tocsr(), "g": self.gamma, "G": self.gamma.T.tocsr()}[c]

    def monomial(self, key):
        """φ(a_{kmn}) as a sparse matrix (product of letter matrices)."""
        M = sp.identity(self.dim, format="csr")
        for c in key_word(key):
            M = M @ self.letter(c)
        return M

    def element(self, terms: dict):
        M = sp.csr_matrix((self.dim, self.dim), dtype=complex)
        for key, c in terms.items():
            M = M + complex(c) * self.monomial(key)
        return M

    def interior(self) -> np.ndarray:
        """Indices with n < n_max and |k| < k_window, where the relations hold exactly."""
        idx = [self.index(n, k) for n in range(self.n_max) for k in range(-self.k_window + 1, self.k_window)]
        return np.array(idx, dtype=int)

    def relation_residuals(self) -> dict:
        """Max column norm of each relation's defect on interior basis vectors."""
        a, g = self.alpha, self.gamma
        A, G = a.T, g.T
        q = self.q
        eye = sp.identity(self.dim, format="csr")
        rels = {
            "α*α+γ*γ=1": A @ a + G @ g - eye,
            "αα*+q²γγ*=1": a @ A + q * q * (g @ G) - eye,
            "γγ*=γ*γ": g @ G - G @ g,
            "αγ=qγα": a @ g - q * (g @ a),
            "αγ*=qγ*α": a @ G - q * (G @ a),
        }
        cols = self.interior()
        out = {}
        for name, R in rels.items():
            if len(cols) == 0:
                out[name] = 0.0
                continue
            sub = R.tocsc()[:, cols]
            out[name] = float(np.sqrt(np.max(np.asarray(sub.multiply(sub.conj()).sum(axis=0)).ravel())))
        return out

    def haar_partial_sum(self, terms: dict) -> complex:
        """(1 - q²) Σ_n q^{2n} <φ(x) e_{n,0}, e_{n,0}> over the truncation."""
        M = self.element(terms).tocsr()
        total = 0j
        for n in range(self.n_max + 1):
            i = self.index(n, 0)
            total += self.q ** (2 * n) * M[i, i]
        return (1 - self.q ** 2) * total


def truncated_rep(q: float, n_max: int, k_window: int) -> TruncatedRep:
    return TruncatedRep.build(q, n_max, k_window)


def spectral_witness(q: float, n_max: int) -> float:
    """Top eigenvalue of φ(α) + φ(α)* on one k-block, truncated at n_max.

    The block is the symmetric tridiagonal matrix with zero diagonal and
    off-diagonal c_1, ..., c_{n_max}; by interlacing the value is
    nondecreasing in n_max and it never exceeds 2.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    q = float(q)
    if not 0 < abs(q) < 1:
        raise ValueError(f"q must satisfy 0 < |q| < 1, got {q}")
    off = c_coefficients(q, n_max)
    d = np.zeros(n_max + 1)
    top = eigvalsh_tridiagonal(d, off, select="i", select_range=(n_max, n_max))
    return float(top[0])


__all__ = ["TruncatedRep", "truncated_rep", "spectral_witness", "c_coefficients"]
