"""First-order solver for standard-form cone programs.

Problem form:

    minimize    c'x
    subject to  Ax + s = b,   s in K,

with K a product of zero, nonnegative, second-order and PSD cones (in that
row order).  The dual is ``max -b'y  s.t.  A'y + c = 0, y in K*``.

The algorithm is operator splitting (ADMM with over-relaxation) on the
homogeneous self-dual embedding, following O'Donoghue et al.'s SCS: a single
sparse LU factorization of ``I + Q`` is reused across iterations, and primal
or dual infeasibility is reported through convergence of the corresponding
Farkas certificate.  Data is preconditioned with Ruiz equilibration using one
scale factor per cone block so cone membership is preserved.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .cones import (Cone, Nonneg, Psd, SecondOrder, Zero, cone_dim,
                    make_projector, project_cones_numpy)

OPTIMAL = "Optimal"
PRIMAL_INFEASIBLE = "PrimalInfeasible"
DUAL_INFEASIBLE = "DualInfeasible"
MAX_ITERATIONS = "MaxIterations"


@dataclass(frozen=True)
class ConicProblem:
    c: np.ndarray
    A: sp.csc_matrix
    b: np.ndarray
    cones: tuple[Cone, ...]

    def __post_init__(self):
        A = sp.csc_matrix(self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "c", np.asarray(self.c, dtype=float))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))
        object.__setattr__(self, "cones", tuple(self.cones))
        m, n = A.shape
        if len(self.c) != n:
            raise ValueError(f"c has length {len(self.c)}, A has {n} columns")
        if len(self.b) != m:
            raise ValueError(f"b has length {len(self.b)}, A has {m} rows")
        if cone_dim(self.cones) != m:
            raise ValueError(f"cones cover {cone_dim(self.cones)} rows, A has {m}")

    @property
    def num_vars(self) -> int:
        return self.A.shape[1]

    @property
    def num_rows(self) -> int:
        return self.A.shape[0]


@dataclass
class SolveResult:
    status: str
    x: np.ndarray
    y: np.ndarray
    s: np.ndarray
    primal_objective: float
    dual_objective: float
    res_primal: float
    res_dual: float
    res_gap: float
    iterations: int
    solve_time: float
    settings: dict = field(default_factory=dict)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


@dataclass
class Settings:
    eps: float = 1e-7
    eps_infeas: float = 1e-7
    max_iters: int = 200000
    seed: int = 0
    alpha: float = 1.5
    ruiz_passes: int = 10
    check_every: int = 25
    verbose: bool = False

    def as_dict(self) -> dict:
        return {"eps": self.eps, "eps_infeas": self.eps_infeas,
                "max_iters": self.max_iters, "seed": self.seed}


def _row_groups(cones) -> list[tuple[int, int, bool]]:
    """(start, end, elementwise) per cone; elementwise=False forces one scale."""
    groups = []
    k = 0
    for c in cones:
        d = c.dim
        groups.append((k, k + d, isinstance(c, (Zero, Nonneg))))
        k += d
    return groups


def _equilibrate(problem: ConicProblem, passes: int):
    """Ruiz equilibration; returns (Ahat, bhat, chat, d_row, e_col, sigma, rho)."""
    A = problem.A.tocsr().astype(float)
    m, n = A.shape
    d = np.ones(m)
    e = np.ones(n)
    groups = _row_groups(problem.cones)
    for _ in range(passes):
        absA = sp.csr_matrix((np.abs(A.data), A.indices, A.indptr), shape=A.shape)
        row_max = np.asarray(absA.max(axis=1).todense()).ravel()
        for lo, hi, elementwise in groups:
            if not elementwise and hi > lo:
                row_max[lo:hi] = row_max[lo:hi].max()
        col_max = np.asarray(absA.max(axis=0).todense()).ravel()
        dr = 1.0 / np.sqrt(np.maximum(row_max, 1e-12))
        dc = 1.0 / np.sqrt(np.maximum(col_max, 1e-12))
        A = sp.diags(dr) @ A @ sp.diags(dc)
        d *= dr
        e *= dc
    bhat = d * problem.b
    chat = e * problem.c
    nb = np.linalg.norm(bhat)
    nc = np.linalg.norm(chat)
    sigma = 1.0 / min(max(nb, 1e-6), 1e6) if nb > 0 else 1.0
    rho = 1.0 / min(max(nc, 1e-6), 1e6) if nc > 0 else 1.0
    return sp.csc_matrix(A), sigma * bhat, rho * chat, d, e, sigma, rho


def solve(problem: ConicProblem, settings: Settings | None = None,
          warm_start: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None,
          **overrides) -> SolveResult:
    """Solve a cone program; deterministic for fixed settings."""
    if settings is None:
        settings = Settings()
    if overrides:
        settings = Settings(**{**settings.__dict__, **overrides})
    t0 = time.perf_counter()

    m, n = problem.A.shape
    cones = problem.cones
    if m == 0:
        # No constraints: optimal at 0 unless the objective is an unbounded ray.
        status = OPTIMAL if np.linalg.norm(problem.c) == 0 else DUAL_INFEASIBLE
        return SolveResult(status, np.zeros(n), np.zeros(0), np.zeros(0),
                           0.0, 0.0, 0.0, 0.0, 0.0, 0, time.perf_counter() - t0,
                           settings.as_dict())
    if n == 0:
        # No variables: feasible iff b lies in the cone.
        s = problem.b.copy()
        dist = np.linalg.norm(s - project_cones_numpy(s, cones))
        ok = dist <= settings.eps * (1 + np.linalg.norm(s))
        return SolveResult(OPTIMAL if ok else PRIMAL_INFEASIBLE, np.zeros(0),
                           np.zeros(m), s, 0.0, 0.0, float(dist), 0.0, 0.0, 0,
                           time.perf_counter() - t0, settings.as_dict())

    Ah, bh, ch, d_row, e_col, sigma, rho = _equilibrate(problem, settings.ruiz_passes)

    Q = sp.bmat([
        [None, Ah.T, ch.reshape(-1, 1)],
        [-Ah, None, bh.reshape(-1, 1)],
        [-ch.reshape(1, -1), -bh.reshape(1, -1), None],
    ], format="csc")
    N = n + m + 1
    lu = spla.splu((sp.identity(N, format="csc") + Q).tocsc())

    proj = make_projector(cones)

    u = np.zeros(N)
    u[-1] = 1.0
    v = np.zeros(N)
    if warm_start is not None:
        x0, y0, s0 = warm_start
        u[:n] = sigma * x0 / e_col
        u[n:n + m] = rho * y0 / d_row
        u[-1] = 1.0
        v[n:n + m] = sigma * d_row * s0
        v[-1] = 0.0

    A_orig = problem.A.tocsr()
    AT_orig = problem.A.T.tocsr()
    b_orig, c_orig = problem.b, problem.c
    nb = np.linalg.norm(b_orig)
    nc = np.linalg.norm(c_orig)
    norm_b = 1.0 + nb
    norm_c = 1.0 + nc
    alpha = settings.alpha

    def recover(uu, vv):
        tau = uu[-1]
        if tau <= 0:
            return None
        x = e_col * uu[:n] / (tau * sigma)
        y = d_row * uu[n:n + m] / (tau * rho)
        s = vv[n:n + m] / (d_row * tau * sigma)
        return x, y, s

    best = None  # (score, result tuple) for MaxIterations reporting

    status = MAX_ITERATIONS
    it = 0
    x = np.zeros(n)
    y = np.zeros(m)
    s = np.zeros(m)
    rp = rd = gap = np.inf

    for it in range(1, settings.max_iters + 1):
        ut = lu.solve(u + v)
        t = alpha * ut + (1.0 - alpha) * u
        w = t - v
        un = w.copy()
        un[n:n + m] = proj(w[n:n + m], dual=True)
        un[-1] = max(w[-1], 0.0)
        v = v + un - t
        u = un

        if it > 10 and it % settings.check_every and it != settings.max_iters:
            continue

        cand = recover(u, v)
        if cand is not None:
            xc, yc, sc = cand
            rp_c = np.linalg.norm(A_orig @ xc + sc - b_orig) / norm_b
            rd_c = np.linalg.norm(AT_orig @ yc + c_orig) / norm_c
            pobj = float(c_orig @ xc)
            dobj = float(-b_orig @ yc)
            gap_c = abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj))
            score = max(rp_c, rd_c, gap_c)
            if best is None or score < best[0]:
                best = (score, (xc.copy(), yc.copy(), sc.copy(), rp_c, rd_c, gap_c))
            if rp_c <= settings.eps and rd_c <= settings.eps and gap_c <= settings.eps:
                status = OPTIMAL
                x, y, s, rp, rd, gap = xc, yc, sc, rp_c, rd_c, gap_c
                break

        # Farkas certificates from the (unnormalized) iterate, SCS-style ratio
        # tests: scale-invariant in the candidate ray.
        y_ray = project_cones_numpy(d_row * u[n:n + m] / rho, cones, dual=True)
        bty = float(b_orig @ y_ray)
        if bty < -1e-11 * (1 + np.linalg.norm(y_ray)) * nb:
            if np.linalg.norm(AT_orig @ y_ray) * nb <= settings.eps_infeas * (-bty):
                y_cert = y_ray / (-bty)
                status = PRIMAL_INFEASIBLE
                x, y, s = np.zeros(n), y_cert, np.zeros(m)
                rp, rd, gap = np.inf, float(np.linalg.norm(AT_orig @ y_cert)), np.inf
                break
        x_ray = e_col * u[:n] / sigma
        ctx = float(c_orig @ x_ray)
        if ctx < -1e-11 * (1 + np.linalg.norm(x_ray)) * nc:
            s_ray = project_cones_numpy(-(A_orig @ x_ray), cones)
            if np.linalg.norm(A_orig @ x_ray + s_ray) * nc <= settings.eps_infeas * (-ctx):
                x_cert = x_ray / (-ctx)
                status = DUAL_INFEASIBLE
                x, y, s = x_cert, np.zeros(m), s_ray / (-ctx)
                rp = float(np.linalg.norm(A_orig @ x + s))
                rd, gap = np.inf, np.inf
                break

    if status == MAX_ITERATIONS and best is not None:
        x, y, s, rp, rd, gap = best[1]

    pobj = float(problem.c @ x)
    dobj = float(-problem.b @ y)
    return SolveResult(status, x, y, s, pobj, dobj, float(rp), float(rd), float(gap),
                       it, time.perf_counter() - t0, settings.as_dict())


# ------------------------------------------------------------------ bisection

class BracketError(RuntimeError):
    """No point of the bracket yielded a feasible (Optimal) solve."""


@dataclass
class BisectLog:
    steps: list[tuple[float, str]] = field(default_factory=list)

    def record(self, gamma: float, status: str):
        self.steps.append((gamma, status))


def bisect(make_problem, lo: float, hi: float, tol: float,
           settings: Settings | None = None, find: str = "min_feasible",
           solve_fn=None) -> tuple[float, SolveResult, BisectLog]:
    """Bisection on a monotone feasibility family ``gamma -> ConicProblem``.

    ``find='min_feasible'`` assumes problems are feasible for large gamma and
    returns the smallest gamma (within ``tol``) whose solve is Optimal;
    ``find='max_feasible'`` is the mirrored case.  Statuses of every step are
    logged.  Non-Optimal statuses (including MaxIterations) count as
    infeasible, so the returned gamma always carries an Optimal witness.
    """
    if find not in ("min_feasible", "max_feasible"):
        raise ValueError("find must be 'min_feasible' or 'max_feasible'")
    if solve_fn is None:
        solve_fn = lambda p: solve(p, settings)
    log = BisectLog()

    def feasible(g):
        res = solve_fn(make_problem(g))
        log.record(g, res.status)
        return res.optimal, res

    anchor = hi if find == "min_feasible" else lo
    ok, res_anchor = feasible(anchor)
    if not ok:
        raise BracketError(f"bracket endpoint {anchor} is not feasible "
                           f"(status {res_anchor.status})")
    other = lo if find == "min_feasible" else hi
    ok_other, res_other = feasible(other)
    if ok_other:
        return other, res_other, log

    if find == "min_feasible":
        bad, good, res_good = lo, hi, res_anchor
        while good - bad > tol:
            mid = 0.5 * (bad + good)
            ok, res = feasible(mid)
            if ok:
                good, res_good = mid, res
            else:
                bad = mid
        return good, res_good, log
    else:
        good, bad, res_good = lo, hi, res_anchor
        while bad - good > tol:
            mid = 0.5 * (bad + good)
            ok, res = feasible(mid)
            if ok:
                good, res_good = mid, res
            else:
                bad = mid
        return good, res_good, log
