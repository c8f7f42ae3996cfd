"""Restricted Dirichlet realization of (-Delta)^a on the interval (-1, 1).

Galerkin discretization in the weighted basis

    psi_k(x) = (1 - x^2)_+^a  P_k^{(a,a)}(x),

whose members vanish outside the interval and carry the d^a boundary factor
of the solution class. Stiffness entries <r+(-Delta)^a psi_k, psi_j> are
assembled by the graded-panel PV quadrature (default) and can be
cross-assembled from the full-space singular bilinear form as a self-check;
the mass matrix is exact Gauss-Jacobi.

Also hosts the boundary-regularity probes (power-law fits, Holder-quotient
divergence detector), the integration-by-parts identity check, and the
reduced two-sided Green identity check for homogeneous-Dirichlet data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import cho_factor, cho_solve, eigh
from scipy.special import roots_jacobi

from .core import PowerFit, SampledFunction, UniformGrid1D, as_order, fit_power_law, gamma_fn
from .errors import PowerFitError
from .operators import pv_reference_quadrature
from .symbols import closed_form_normalization

_INTERVAL = (-1.0, 1.0)


def _jacobi_sym_matrix(N: int, alpha: float, x: np.ndarray) -> np.ndarray:
    """P_k^{(alpha,alpha)}(x) for k < N, by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    P = np.empty((N,) + x.shape)
    P[0] = 1.0
    if N > 1:
        P[1] = (alpha + 1.0) * x
    ab = 2.0 * alpha
    for n in range(2, N):
        c1 = 2.0 * n * (n + ab) * (2 * n + ab - 2)
        c3 = (2 * n + ab - 2) * (2 * n + ab - 1) * (2 * n + ab)
        c4 = 2.0 * (n + alpha - 1) ** 2 * (2 * n + ab)
        P[n] = (c3 * x * P[n - 1] - c4 * P[n - 2]) / c1
    return P


@dataclass(frozen=True)
class WeightedBasis:
    """The weighted Jacobi family psi_k = (1-x^2)^a P_k^{(a,a)}, k < size."""

    a: float
    size: int

    def __post_init__(self):
        as_order(self.a)
        if self.size < 1:
            raise ValueError("basis needs at least one element")

    def polys(self, x, deriv: int = 0) -> np.ndarray:
        """d^m/dx^m P_k^{(a,a)}(x) as a (size, len(x)) matrix."""
        a, N = self.a, self.size
        x = np.asarray(x, dtype=float)
        if deriv == 0:
            return _jacobi_sym_matrix(N, a, x)
        if N <= deriv:
            return np.zeros((N,) + x.shape)
        inner = _jacobi_sym_matrix(N - deriv, a + deriv, x)
        k = np.arange(deriv, N)
        fac = np.ones(len(k))
        for j in range(deriv):
            fac *= (k + 2 * a + 1 + j) / 2.0
        out = np.zeros((N,) + x.shape)
        out[deriv:] = fac[:, None] * inner
        return out

    def _weight_derivs(self, x):
        """(1-x^2)^a and its first four derivatives, inside the interval."""
        a = self.a
        u = 1.0 - x * x
        A1 = a
        A2 = a * (a - 1)
        A3 = A2 * (a - 2)
        A4 = A3 * (a - 3)
        w0 = u ** a
        w1 = A1 * u ** (a - 1) * (-2 * x)
        w2 = 4 * A2 * x * x * u ** (a - 2) - 2 * A1 * u ** (a - 1)
        w3 = -8 * A3 * x ** 3 * u ** (a - 3) + 12 * A2 * x * u ** (a - 2)
        w4 = (16 * A4 * x ** 4 * u ** (a - 4)
              - 48 * A3 * x * x * u ** (a - 3) + 12 * A2 * u ** (a - 2))
        return w0, w1, w2, w3, w4

    def eval_matrix(self, x, deriv: int = 0) -> np.ndarray:
        """psi_k^{(m)}(x), zero outside the open interval, m <= 4."""
        x = np.asarray(x, dtype=float)
        inside = np.abs(x) < 1.0
        out = np.zeros((self.size,) + x.shape)
        if not np.any(inside):
            return out
        xi = x[inside]
        w0, w1, w2, w3, w4 = self._weight_derivs(xi)
        P = [self.polys(xi, deriv=m) for m in range(deriv + 1)]
        if deriv == 0:
            val = w0 * P[0]
        elif deriv == 1:
            val = w1 * P[0] + w0 * P[1]
        elif deriv == 2:
            val = w2 * P[0] + 2 * w1 * P[1] + w0 * P[2]
        elif deriv == 3:
            val = w3 * P[0] + 3 * w2 * P[1] + 3 * w1 * P[2] + w0 * P[3]
        elif deriv == 4:
            val = (w4 * P[0] + 4 * w3 * P[1] + 6 * w2 * P[2]
                   + 4 * w1 * P[3] + w0 * P[4])
        else:
            raise ValueError("derivatives implemented up to order 4")
        out[:, inside] = val
        return out

    def deriv_quotient_matrix(self, x) -> np.ndarray:
        """q_k with psi_k' = (1-x^2)^{a-1} q_k; q_k is a polynomial."""
        x = np.asarray(x, dtype=float)
        P = self.polys(x, 0)
        P1 = self.polys(x, 1)
        return -2.0 * self.a * x * P + (1.0 - x * x) * P1

    def trace_quotient(self, coeffs, side: int) -> float:
        """gamma_0^a u at x=side: limit of u/d^a, for u = sum c_k psi_k.

        Near +1, u/d^a -> 2^a sum c_k P_k(1); P_k^{(a,a)}(1) = C(k+a, k).
        """
        a = self.a
        k = np.arange(self.size)
        pk1 = np.exp(np.cumsum(np.concatenate(([0.0], np.log((k[1:] + a) / k[1:])))))
        signs = np.where(k % 2 == 0, 1.0, -1.0) if side < 0 else np.ones(self.size)
        return float(2.0 ** a * np.dot(np.asarray(coeffs) * signs, pk1))


@dataclass(frozen=True)
class QuadConfig:
    """Knobs of the assembly quadratures."""

    gl_nodes: int = 18
    grade_levels: int = 48
    delta_frac: float = 0.02
    delta_cap: float = 1e-3
    outer_extra: int = 24


@dataclass
class DirichletSystem:
    """Galerkin matrices of the restricted realization in the weighted basis."""

    basis: WeightedBasis
    stiffness: np.ndarray
    mass: np.ndarray
    quad: QuadConfig
    kernel_constant: float
    route_agreement: float | None = None
    _eig: tuple | None = field(default=None, repr=False)

    @property
    def a(self) -> float:
        return self.basis.a

    @property
    def size(self) -> int:
        return self.basis.size

    def stiffness_sym(self) -> np.ndarray:
        return 0.5 * (self.stiffness + self.stiffness.T)

    def eigendecomposition(self):
        """Generalized eigenpairs (ascending), vectors M-orthonormal; cached."""
        if self._eig is None:
            lam, V = eigh(self.stiffness_sym(), self.mass)
            self._eig = (lam, V)
        return self._eig

    def mass_norm(self, coeffs) -> float:
        c = np.asarray(coeffs)
        return float(np.sqrt(np.abs(c @ self.mass @ c)))


def basis_image_multipliers(a: float, N: int) -> np.ndarray:
    """Factors mu_k with r+(-Delta)^a psi_k = mu_k P_k^{(a,a)} on (-1,1).

    Classical identity for the Gegenbauer-weighted family; used as the exact
    quadrature oracle in the test suite, never in assembly itself.
    """
    k = np.arange(N, dtype=float)
    logmu = np.cumsum(np.concatenate(([0.0], np.log((k[1:] + 2 * a) / k[1:]))))
    return gamma_fn(2 * a + 1) * np.exp(logmu)


def exact_diagonal_stiffness(a: float, N: int) -> np.ndarray:
    """Closed-form diagonal A_kk = mu_k ||P_k||^2_{(a,a)} (test oracle)."""
    from scipy.special import gammaln
    k = np.arange(N, dtype=float)
    loghk = ((2 * a + 1) * np.log(2.0) + 2 * gammaln(k + a + 1)
             - np.log(2 * k + 2 * a + 1) - gammaln(k + 1) - gammaln(k + 2 * a + 1))
    return basis_image_multipliers(a, N) * np.exp(loghk)


def mass_matrix(a: float, N: int) -> np.ndarray:
    """Gram matrix of the weighted basis, exact Gauss-Jacobi quadrature."""
    nq = N + 8
    xq, wq = roots_jacobi(nq, 2 * a, 2 * a)
    PJ = _jacobi_sym_matrix(N, a, xq)
    return (PJ * wq) @ PJ.T


def pv_image_matrix(a: float, N: int, xs, quad: QuadConfig = QuadConfig(),
                    constant: float | None = None) -> np.ndarray:
    """[(-Delta)^a psi_k](x) for all k < N at the points xs, by PV quadrature."""
    basis = WeightedBasis(a, N)
    c = closed_form_normalization(a) if constant is None else constant
    raw = pv_reference_quadrature(
        a, lambda p: basis.eval_matrix(p), np.asarray(xs),
        kinks=_INTERVAL, support=_INTERVAL,
        deriv2=lambda p: basis.eval_matrix(p, 2),
        deriv4=lambda p: basis.eval_matrix(p, 4),
        delta_frac=quad.delta_frac, delta_cap=quad.delta_cap,
        grade_levels=quad.grade_levels, gl_nodes=quad.gl_nodes)
    return c * raw


def assemble(a: float, N: int, quad: QuadConfig = QuadConfig(),
             self_check: bool = False, check_tol: float = 1e-6) -> DirichletSystem:
    """Assemble the Galerkin system by the PV-application route.

    With self_check=True the singular-bilinear-form route is also assembled
    and the maximal entry disagreement (relative to sqrt(A_jj A_kk)) is
    stored; disagreement beyond check_tol raises.
    """
    a = as_order(a)
    if N > 200:
        raise ValueError("basis size capped at 200")
    nq = N + quad.outer_extra
    xq, wq = roots_jacobi(nq, a, a)
    G = pv_image_matrix(a, N, xq, quad)           # (N, nq)
    PJ = _jacobi_sym_matrix(N, a, xq)             # (N, nq)
    A = (PJ * wq) @ G.T                           # A_jk = <psi_j, P psi_k>
    M = mass_matrix(a, N)
    sys = DirichletSystem(WeightedBasis(a, N), A, M, quad,
                          closed_form_normalization(a))
    if self_check:
        A2 = assemble_via_form(a, N, quad)
        scale = np.sqrt(np.outer(np.abs(np.diag(A)), np.abs(np.diag(A))))
        agreement = float(np.max(np.abs(A - A2) / scale))
        sys.route_agreement = agreement
        if agreement > check_tol:
            from .errors import QuadratureConvergenceError
            raise QuadratureConvergenceError(
                f"assembly routes disagree at {agreement:.2e}",
                best_estimate=A, mismatch=agreement)
    return sys


def assemble_via_form(a: float, N: int, quad: QuadConfig = QuadConfig()) -> np.ndarray:
    """Stiffness via the full-space singular bilinear form.

    Q(u,v) = (c/2) iint (u(x)-u(y))(v(x)-v(y)) |x-y|^{-1-2a} dx dy splits into
    the interval-square double integral plus the exact exterior term
    int u v kappa with kappa(x) = ((1-x)^{-2a} + (1+x)^{-2a}) / 2a, which is
    Gauss-Jacobi exact. The double integral runs nested graded panels with an
    analytic closure of the |y-x| < sigma core.
    """
    from scipy.special import roots_legendre
    a = as_order(a)
    basis = WeightedBasis(a, N)
    c = closed_form_normalization(a)
    zq, wq_gl = roots_legendre(14)

    def panels(lo, hi, sing, levels=30):
        edges = {lo, hi}
        span = hi - lo
        for s in sing:
            base = max(min(abs(s - lo), abs(hi - s)), span / 2)
            for j in range(1, levels + 1):
                step = base * 2.0 ** (-j)
                for p in (s - step, s + step):
                    if lo < p < hi:
                        edges.add(p)
        for p in np.linspace(lo, hi, 9)[1:-1]:
            edges.add(p)
        e = np.array(sorted(edges))
        mid = (e[:-1, None] + e[1:, None]) / 2 + (e[1:, None] - e[:-1, None]) / 2 * zq
        wts = ((e[1:, None] - e[:-1, None]) / 2 * wq_gl).ravel()
        return mid.ravel(), wts

    sigma_min = 1e-6
    # outer nodes over (-1,1), graded into both endpoints
    xo, wo = panels(-1.0, 1.0, (-1.0, 1.0), levels=36)
    S = np.zeros((N, N))
    Psi_o = basis.eval_matrix(xo)
    dPsi_o = basis.eval_matrix(xo, 1)
    for i, (xv, wv) in enumerate(zip(xo, wo)):
        lo, hi = -1.0, 1.0
        yq, wy = panels(lo, hi, (-1.0, 1.0, xv), levels=26)
        keep = np.abs(yq - xv) >= sigma_min
        yq, wy = yq[keep], wy[keep]
        D = Psi_o[:, i][:, None] - basis.eval_matrix(yq)
        kern = np.abs(xv - yq) ** (-1.0 - 2 * a)
        inner = (D * (wy * kern)) @ D.T
        # analytic |y-x| < sigma core: (u'(x) v'(x)) * 2 sigma^{2-2a} / (2-2a)
        core = 2.0 * sigma_min ** (2 - 2 * a) / (2 - 2 * a)
        inner += np.outer(dPsi_o[:, i], dPsi_o[:, i]) * core
        S += wv * inner
    # exterior term, exact in the polynomial factor
    nq = N + 6
    xj, wj = roots_jacobi(nq, 0.0, 2 * a)      # weight (1+x)^{2a}
    P = _jacobi_sym_matrix(N, a, xj)
    B = (P * wj) @ P.T
    xj2, wj2 = roots_jacobi(nq, 2 * a, 0.0)    # weight (1-x)^{2a}
    P2 = _jacobi_sym_matrix(N, a, xj2)
    B += (P2 * wj2) @ P2.T
    B /= (2 * a)
    return c * (0.5 * S + B)


# ---------------------------------------------------------------------------
# stationary solves

@dataclass
class StationarySolution:
    """Galerkin solution of r+(-Delta)^a u = f with homogeneous condition."""

    system: DirichletSystem
    coefficients: np.ndarray
    rhs: object                      # callable x -> f(x)
    residual: float | None = None

    def evaluate(self, x) -> np.ndarray:
        return self.coefficients @ self.system.basis.eval_matrix(x)

    def sample(self, n: int = 2001) -> SampledFunction:
        g = UniformGrid1D(-1.0, 1.0, n)
        return SampledFunction(g, self.evaluate(g.points()))

    def weight_quotient(self, x) -> np.ndarray:
        """u(x) / (1-x^2)^a, the regular polynomial factor."""
        return self.coefficients @ self.system.basis.polys(np.asarray(x))


def _rhs_callable(f):
    if callable(f):
        return f
    if isinstance(f, SampledFunction):
        xs, vs = f.x, np.asarray(f.values).real
        return lambda p: np.interp(p, xs, vs)
    raise TypeError("rhs must be callable or SampledFunction")


def solve_stationary(system: DirichletSystem, f,
                     residual_probes=None) -> StationarySolution:
    """Galerkin solve; the residual re-applies the PV operator to the solution.

    The residual is sup over interior probes of |(-Delta)^a u_N - f| divided
    by sup|f|, with the operator applied by the graded-panel PV quadrature to
    the reconstructed solution (independent of the assembled matrix entries'
    outer quadrature nodes).
    """
    fn = _rhs_callable(f)
    basis = system.basis
    nq = system.size + system.quad.outer_extra
    xq, wq = roots_jacobi(nq, basis.a, basis.a)
    F = (basis.polys(xq) * wq) @ fn(xq)
    cho = cho_factor(system.stiffness_sym())
    coeffs = cho_solve(cho, F)
    sol = StationarySolution(system, coeffs, fn)
    if residual_probes is None:
        residual_probes = np.linspace(-0.85, 0.85, 13)
    G = pv_image_matrix(basis.a, system.size, residual_probes, system.quad,
                        constant=system.kernel_constant)
    pu = coeffs @ G
    fv = fn(np.asarray(residual_probes))
    scale = max(np.max(np.abs(fv)), 1e-300)
    sol.residual = float(np.max(np.abs(pu - fv)) / scale)
    return sol


# ---------------------------------------------------------------------------
# eigenpairs

@dataclass(frozen=True)
class EigenPair:
    index: int
    value: float
    coefficients: np.ndarray
    refinement_drift: float
    parity: str

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("Dirichlet eigenvalues must be positive")


def _parity_of(coeffs) -> str:
    c = np.asarray(coeffs)
    even = np.sum(np.abs(c[0::2]) ** 2)
    odd = np.sum(np.abs(c[1::2]) ** 2)
    if even > 100 * odd:
        return "even"
    if odd > 100 * even:
        return "odd"
    return "mixed"


@lru_cache(maxsize=32)
def _cached_system(a: float, N: int) -> DirichletSystem:
    return assemble(a, N)


def eigen_solve(system: DirichletSystem, count: int,
                drift_tol: float = 1e-4) -> list[EigenPair]:
    """Lowest Ritz pairs of (A, M), ascending, with an N+20 refinement gate.

    Pairs whose eigenvalue moves by more than drift_tol relative under the
    refinement are dropped. Coefficients are mass-normalized with a positive
    central value (even modes) or positive slope at 0 (odd modes).
    """
    if count > system.size // 2:
        raise ValueError("requested count exceeds the resolved half-spectrum")
    lam, V = system.eigendecomposition()
    ref = _cached_system(system.a, system.size + 20)
    lam_ref, _ = ref.eigendecomposition()
    out = []
    for i in range(count):
        drift = abs(lam[i] - lam_ref[i]) / lam[i]
        if drift > drift_tol:
            continue
        c = V[:, i] / system.mass_norm(V[:, i])
        vals = c @ system.basis.eval_matrix(np.array([0.0, 0.25]))
        probe = vals[0] if abs(vals[0]) > 1e-8 else vals[1]
        if probe < 0:
            c = -c
        out.append(EigenPair(i, float(lam[i]), c, float(drift), _parity_of(c)))
    return out


# ---------------------------------------------------------------------------
# boundary regularity probes

@dataclass(frozen=True)
class HolderCapReport:
    """Dyadic-ladder behavior of Q(d) = |u(-1+d)| / d^exponent."""

    exponent: float
    slope: float
    growth: float
    fired: bool


def holder_cap_detector(evaluate, exponent: float, anchor: float = -1.0,
                        d0: float = 0.1, levels: int = 11,
                        slope_threshold: float = -0.03,
                        growth_threshold: float = 1.25) -> HolderCapReport:
    """Detect divergence of the Holder quotient at the boundary.

    Samples Q(d) = |u(anchor -/+ d)| / d^exponent on a halving ladder; the
    quotient diverging as d -> 0 (log-log slope below the threshold together
    with overall growth) certifies that u is not exponent-Holder at the
    anchor.
    """
    d = d0 * 2.0 ** (-np.arange(levels))
    x = anchor + d if anchor < 0 else anchor - d
    vals = np.abs(np.asarray(evaluate(x), dtype=float))
    if np.any(vals == 0):
        raise PowerFitError("zero samples on the detector ladder")
    Q = vals / d ** exponent
    slope = float(np.polyfit(np.log(d), np.log(Q), 1)[0])
    growth = float(Q[-1] / Q[0])
    fired = (slope <= slope_threshold) and (growth >= growth_threshold)
    return HolderCapReport(exponent, slope, growth, fired)


@dataclass(frozen=True)
class RegularityReport:
    fit: PowerFit
    cap: HolderCapReport
    below_cap: HolderCapReport

    @property
    def cap_fired(self) -> bool:
        return self.cap.fired


def boundary_regularity_probe(system: DirichletSystem, pair: EigenPair,
                              window=(3e-5, 3e-3), cap_delta: float = 0.1,
                              anchor: float = -1.0) -> RegularityReport:
    """Fit the eigenfunction's boundary exponent and run the cap detector.

    The exponent must come out a (to fit tolerance); the Holder quotient at
    a + cap_delta must diverge while the one at a - 0.05 must not.
    """
    a = system.a
    evaluate = lambda x: pair.coefficients @ system.basis.eval_matrix(x)
    side = 0.25
    n = 16001
    g = UniformGrid1D(anchor, anchor + side, n) if anchor < 0 else \
        UniformGrid1D(anchor - side, anchor, n)
    samples = SampledFunction(g, evaluate(g.points()))
    fit = fit_power_law(samples, anchor, window)
    cap = holder_cap_detector(evaluate, a + cap_delta, anchor)
    below = holder_cap_detector(evaluate, a - 0.05, anchor)
    return RegularityReport(fit, cap, below)


# ---------------------------------------------------------------------------
# integration-by-parts identity (interior x boundary)

@dataclass(frozen=True)
class IbpReport:
    """Signed ratios L/R over solution pairs and their relative spread."""

    ratios: np.ndarray
    spread: float
    gamma_square: float
    symmetric_pair_values: tuple | None = None


def _ibp_L(u: StationarySolution, v: StationarySolution) -> float:
    """int ( f du'/dx + du/dx f' ) dx with f = Pu, f' = Pv on the interval.

    Uses the solved equations r+P u = f, r+P v = f' to place the operator
    images; the weight (1-x^2)^{a-1} of the derivative factor is absorbed in
    the Gauss-Jacobi rule, so polynomial data integrate exactly.
    """
    sysA = u.system
    a = sysA.a
    nq = 2 * sysA.size + 16
    xq, wq = roots_jacobi(nq, a - 1.0, a - 1.0)
    qu = u.coefficients @ sysA.basis.deriv_quotient_matrix(xq)
    qv = v.coefficients @ sysA.basis.deriv_quotient_matrix(xq)
    fu = u.rhs(xq)
    fv = v.rhs(xq)
    return float(np.dot(wq, fu * qv + qu * fv))


def _ibp_R(u: StationarySolution, v: StationarySolution) -> float:
    """Sum over endpoints of nu * gamma^a_0 u * gamma^a_0 v, outward nu(+-1)=+-1."""
    b = u.system.basis
    return float(b.trace_quotient(u.coefficients, +1) * b.trace_quotient(v.coefficients, +1)
                 - b.trace_quotient(u.coefficients, -1) * b.trace_quotient(v.coefficients, -1))


def ibp_identity_check(a: float, pairs) -> IbpReport:
    """Ratio constancy of the interior/boundary identity across solution pairs.

    pairs: iterable of (StationarySolution, StationarySolution) with at least
    one pair of nonzero boundary product. Returns the signed ratios L/R;
    their spread tests the identity structure without fixing the paper-free
    constant, whose magnitude is compared against Gamma(1+a)^2 downstream.
    """
    a = as_order(a)
    ratios = []
    for (u, v) in pairs:
        R = _ibp_R(u, v)
        L = _ibp_L(u, v)
        if abs(R) < 1e-10 * max(1.0, abs(L)):
            continue
        ratios.append(L / R)
    if not ratios:
        raise ValueError("all pairs have vanishing boundary product")
    ratios = np.array(ratios)
    mean = np.mean(ratios)
    spread = float((np.max(ratios) - np.min(ratios)) / abs(mean))
    return IbpReport(ratios, spread, gamma_fn(1 + a) ** 2)


# ---------------------------------------------------------------------------
# reduced Green identity (homogeneous Dirichlet data)

@dataclass(frozen=True)
class GreensReport:
    values: np.ndarray
    scales: np.ndarray

    @property
    def max_relative(self) -> float:
        return float(np.max(self.values / self.scales))


def greens_reduced_check(system: DirichletSystem, n_pairs: int = 20,
                         seed: int = 2024) -> GreensReport:
    """Verify int (Pu v - u Pv) = 0 for random basis combinations.

    With both Dirichlet traces zero the two-sided Green identity collapses
    to plain symmetry of <P., .>; each side is an independently quadratured
    bilinear-form entry, so the check exercises the assembled quadratures,
    not an algebraic identity of one matrix.
    """
    rng = np.random.default_rng(seed)
    A = system.stiffness               # raw, unsymmetrized
    vals = np.empty(n_pairs)
    scales = np.empty(n_pairs)
    for i in range(n_pairs):
        cu = rng.standard_normal(system.size)
        cv = rng.standard_normal(system.size)
        cu /= system.mass_norm(cu)
        cv /= system.mass_norm(cv)
        t1 = cv @ A @ cu               # <P u, v>
        t2 = cu @ A @ cv               # <u, P v>
        vals[i] = abs(t1 - t2)
        scales[i] = 0.5 * (abs(t1) + abs(t2))
    return GreensReport(vals, scales)
