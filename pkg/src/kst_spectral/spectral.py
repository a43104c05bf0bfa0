"""Signless Laplacian spectral radius, Rayleigh quotients and upper-bound certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import CertificateError, DomainError, ParameterError, SolverError
from .graph import Graph

DEFAULT_TOL = 1e-10
COMPARE_MARGIN = 1e-8
DENSE_LIMIT = 64


@dataclass
class SpectralResult:
    q: float
    perron: np.ndarray
    residual: float
    iterations: int
    component: tuple[int, ...] = ()
    method: str = "power"


def _component_q(g: Graph, comp: tuple[int, ...], tol: float, max_iter: int, dense_limit: int):
    k = len(comp)
    if k == 1:
        return 0.0, np.ones(1), 0.0, 0, "trivial"
    sub = g.induced(comp) if k < g.order else g
    rows, cols = [], []
    for u, v in sub.edges():
        rows += (u, v)
        cols += (v, u)
    deg = np.asarray(sub.degrees, dtype=float)
    a = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(k, k))
    q_mat = a + sp.diags(deg)

    x = np.full(k, 1.0 / np.sqrt(k))
    prev_res = None
    slow = 0
    best = (0.0, x, np.inf)
    for it in range(1, max_iter + 1):
        y = q_mat @ x
        mu = float(x @ y)
        res = float(np.max(np.abs(y - mu * x)))
        if res < best[2]:
            best = (mu, x, res)
        if res <= tol:
            return mu, x, res, it, "power"
        if prev_res is not None and res > 0.9 * prev_res:
            slow += 1
        else:
            slow = 0
        prev_res = res
        if slow >= 25 and k <= dense_limit:
            break
        x = y / np.linalg.norm(y)
    else:
        if k > dense_limit:
            raise SolverError(
                f"power iteration did not reach residual {tol:g} in {max_iter} steps", best=best
            )
    w, vecs = np.linalg.eigh(q_mat.toarray())
    vec = np.abs(vecs[:, -1])
    vec /= np.linalg.norm(vec)
    mu = float(vec @ (q_mat @ vec))
    res = float(np.max(np.abs(q_mat @ vec - mu * vec)))
    return mu, vec, res, it, "dense"


def q_radius(
    g: Graph, tol: float = DEFAULT_TOL, max_iter: int = 200_000, dense_limit: int = DENSE_LIMIT
) -> SpectralResult:
    """Largest eigenvalue of Q(G) = D(G) + A(G) with a nonnegative unit eigenvector.

    Each connected component is solved separately by power iteration from
    the all-ones vector. Components of at most ``dense_limit`` vertices whose
    iteration stalls switch to a dense symmetric eigensolve. The radius of a
    disconnected graph is the maximum over components; ``perron`` is
    supported on the first component attaining it.

    Raises:
        DomainError: for the order-0 graph.
        SolverError: when a large component does not converge.
    """
    if g.order < 1:
        raise DomainError("spectral radius of the order-0 graph")
    if tol <= 0:
        raise ParameterError("tolerance must be positive")
    best = None
    total_iter = 0
    for comp in g.components():
        mu, vec, res, it, method = _component_q(g, comp, tol, max_iter, dense_limit)
        total_iter += it
        if best is None or mu > best[0] + COMPARE_MARGIN:
            best = (mu, vec, res, comp, method)
    mu, vec, res, comp, method = best
    x = np.zeros(g.order)
    x[list(comp)] = vec
    return SpectralResult(q=mu, perron=x, residual=res, iterations=total_iter, component=comp, method=method)


def q_value(g: Graph, tol: float = DEFAULT_TOL) -> float:
    return q_radius(g, tol).q


def rayleigh_quotient(g: Graph, x: Sequence[float]) -> float:
    """Edge-sum form of x^T Q x / x^T x."""
    x = np.asarray(x, dtype=float)
    if x.shape != (g.order,):
        raise DomainError(f"vector length {x.shape} does not match order {g.order}")
    denom = float(x @ x)
    if denom == 0.0:
        raise DomainError("Rayleigh quotient of the zero vector")
    num = sum((x[u] + x[v]) ** 2 for u, v in g.edges())
    return float(num) / denom


def merris_bound(g: Graph) -> float:
    """max over non-isolated v of d(v) + (1/d(v)) * sum of neighbour degrees."""
    deg = g.degrees
    best = 0.0
    for v in range(g.order):
        d = deg[v]
        if d == 0:
            continue
        val = d + sum(deg[w] for w in g.neighbors(v)) / d
        best = max(best, val)
    return best


@dataclass(frozen=True)
class BoundCertificate:
    """Nonnegative y with the claim Q y <= r y."""

    y: tuple
    r: float | Fraction

    @property
    def exact(self) -> bool:
        return isinstance(self.r, Rational) and all(isinstance(v, Rational) for v in self.y)


@dataclass
class CertificateVerdict:
    accepted: bool
    exact: bool
    worst_vertex: int
    worst_slack: float
    # one entry per component: does y have support there
    component_support: list[bool] = field(default_factory=list)

    @property
    def sound(self) -> bool:
        """True when ACCEPT licenses q(G) <= r (every component carries support)."""
        return self.accepted and all(self.component_support)


def certify_upper_bound(g: Graph, cert: BoundCertificate, tol: float = DEFAULT_TOL) -> CertificateVerdict:
    """Check (Qy)_v <= r y_v for every vertex.

    Rational certificates are checked exactly; otherwise each inequality
    may exceed by ``tol``. ``worst_slack`` is ``max_v (Qy)_v - r y_v``.
    """
    y = cert.y
    if len(y) != g.order:
        raise CertificateError(f"certificate length {len(y)} does not match order {g.order}")
    if any(v < 0 for v in y):
        raise CertificateError("certificate has a negative entry")
    if not any(v != 0 for v in y):
        raise CertificateError("certificate is the zero vector")
    exact = cert.exact
    deg = g.degrees
    worst_v, worst = -1, None
    for v in range(g.order):
        qy = deg[v] * y[v] + sum(y[w] for w in g.neighbors(v))
        slack = qy - cert.r * y[v]
        if worst is None or slack > worst:
            worst_v, worst = v, slack
    accepted = worst <= 0 if exact else worst <= tol
    support = [any(y[v] != 0 for v in comp) for comp in g.components()]
    return CertificateVerdict(accepted, exact, worst_v, float(worst), support)


def _check_pair(g: Graph, v1: int, v2: int) -> int:
    n = g.order
    if n <= 4:
        raise ParameterError(f"certificate vector needs n >= 5, got {n}")
    if v1 == v2:
        raise ParameterError("v1 and v2 must differ")
    for v in (v1, v2):
        if not 0 <= v < n:
            raise ParameterError(f"vertex {v} out of range")
    return n


def lemma42_vector(g: Graph, v1: int, v2: int) -> BoundCertificate:
    """Entries 1 on v1, v2 and 3/(n-2) elsewhere; claimed bound n + 2."""
    n = _check_pair(g, v1, v2)
    rest = Fraction(3, n - 2)
    y = tuple(Fraction(1) if v in (v1, v2) else rest for v in range(n))
    return BoundCertificate(y, Fraction(n + 2))


def lemma43_vector(g: Graph, v1: int, v2: int) -> BoundCertificate:
    """Entries 1 on v1, 3/4 on v2 and 2/(n-2) elsewhere; claimed bound n + 2."""
    n = _check_pair(g, v1, v2)
    rest = Fraction(2, n - 2)
    y = tuple(Fraction(1) if v == v1 else Fraction(3, 4) if v == v2 else rest for v in range(n))
    return BoundCertificate(y, Fraction(n + 2))


def perron_certificate(g: Graph, shift: float = 0.0, tol: float = DEFAULT_TOL) -> BoundCertificate:
    """Certificate from the Perron vector with claimed bound q(G) + shift."""
    res = q_radius(g, tol)
    y = tuple(float(max(v, 0.0)) for v in res.perron)
    return BoundCertificate(y, res.q + shift)
