"""Weight functions resolving unity, their positivity certificates,
moment verification, uniqueness tests, and resolution-of-identity checks.

The completeness of a coherent-state family in sector F_mu is a Stieltjes
(y on (0, inf), r = lambda - 2 alpha > 0) or Hausdorff (y on (0, 1),
r = 0) power-moment problem

    int y^k h(y) dy = B(k) = A * Gamma-ratio(k),

solved by restricted Meijer G densities built through Mellin convolution.
Positivity holds when the upper parameter list can be matched injectively
below the lower list, which this module searches exhaustively.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import AlgebraParams
from .errors import PositivityUnavailable, QuadratureFailure
from .quadrature import FixedGrid, fixed_grid_unit, fixed_grid_zero_inf
from .specfun import (
    appell_f3,
    build_convolution_kernel,
    g_general_vec,
    gauss_2f1,
    lgamma_signed,
    m0_eval_vec,
)


# --------------------------------------------------------------------------
# moment problem data
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentProblem:
    """Moment targets B(k) for the family (mu, alpha) of one algebra."""

    params: AlgebraParams
    mu: int
    alpha: int

    def __post_init__(self):
        lam = self.params.lam
        if not 0 <= self.alpha <= lam // 2:
            raise ValueError(f"alpha out of range: {self.alpha}")
        if not 0 <= self.mu <= lam - self.alpha - 1:
            raise ValueError(f"mu out of range: {self.mu}")

    @property
    def r(self) -> int:
        return self.params.lam - 2 * self.alpha

    @property
    def y_max(self) -> float:
        return math.inf if self.r > 0 else 1.0

    @property
    def log_A(self) -> float:
        p, mu, alpha = self.params, self.mu, self.alpha
        lam = p.lam
        out = -math.log(math.pi) - (lam - 2 * alpha) * math.log(lam)
        for nu in range(mu + 1, mu + alpha + 1):
            out += math.lgamma(p.beta_bar_at(nu))
        for nu in range(1, mu + 1):
            out -= math.lgamma(p.beta_bar_at(nu) + 1.0)
        for nu in range(mu + alpha + 1, lam):
            out -= math.lgamma(p.beta_bar_at(nu))
        return out

    def log_B(self, k: float) -> float:
        p, mu, alpha = self.params, self.mu, self.alpha
        lam = p.lam
        out = self.log_A + math.lgamma(k + 1.0)
        for nu in range(1, mu + 1):
            out += math.lgamma(p.beta_bar_at(nu) + k + 1.0)
        for nu in range(mu + alpha + 1, lam):
            out += math.lgamma(p.beta_bar_at(nu) + k)
        for nu in range(mu + 1, mu + alpha + 1):
            out -= math.lgamma(p.beta_bar_at(nu) + k)
        return out


def moment_target(problem: MomentProblem, k: float) -> float:
    """B(k), positive for all k >= 0."""
    return math.exp(problem.log_B(k))


def mellin_lists(params: AlgebraParams, mu: int, alpha: int) -> tuple[list[float], list[float]]:
    """Upper/lower parameter lists (a, b) of the inverse Mellin transform."""
    lam = params.lam
    r = lam - 2 * alpha
    a = [params.beta_bar_at(mu + nu) - 1.0 for nu in range(1, alpha + 1)]
    b = [0.0]
    b += [params.beta_bar_at(nu - 1) for nu in range(2, mu + 2)]
    b += [params.beta_bar_at(nu + alpha - 1) - 1.0 for nu in range(mu + 2, r + alpha + 1)]
    return a, b


# --------------------------------------------------------------------------
# positivity certificates
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PositivityCertificate:
    """Injective assignment a_i > b_{pairing[i]} proving the weight positive."""

    pairing: tuple[int, ...]
    a: tuple[float, ...]
    b: tuple[float, ...]
    condition: str = ""


@dataclass(frozen=True)
class PositivityRefusal:
    reason: str
    a: tuple[float, ...]
    b: tuple[float, ...]


def positivity_condition(params: AlgebraParams, mu: int, alpha: int):
    """Search all injective a->b assignments; first witness wins.

    alpha = 0 needs no condition.  Returns a PositivityCertificate or a
    PositivityRefusal.
    """
    a, b = mellin_lists(params, mu, alpha)
    if alpha == 0:
        return PositivityCertificate((), tuple(a), tuple(b), "unconditional")
    for combo in itertools.permutations(range(len(b)), alpha):
        if all(a[i] > b[j] for i, j in zip(range(alpha), combo)):
            cond = ", ".join(
                f"a_{i + 1}={a[i]:.6g} > b_{j + 1}={b[j]:.6g}" for i, j in zip(range(alpha), combo)
            )
            return PositivityCertificate(tuple(combo), tuple(a), tuple(b), cond)
    return PositivityRefusal(
        "no injective assignment a_i > b_j exists", tuple(a), tuple(b)
    )


# --------------------------------------------------------------------------
# the weight functions themselves
# --------------------------------------------------------------------------

@dataclass
class WeightFunction:
    """Evaluable density on (0, y_max) with its positivity certificate.

    evaluate() is vectorized; moment(k) integrates y^k h(y) dy on a
    cached tanh-sinh grid (k may be fractional, as the eigenstate
    measures require).
    """

    problem: MomentProblem
    form: str
    certificate: PositivityCertificate | PositivityRefusal
    _eval: Callable[..., np.ndarray]
    k_budget: float = 10.0
    _grid: FixedGrid | None = field(default=None, repr=False)
    _vals: np.ndarray | None = field(default=None, repr=False)
    _vals_coarse: np.ndarray | None = field(default=None, repr=False)

    @property
    def y_max(self) -> float:
        return self.problem.y_max

    def evaluate(self, y, one_minus_y=None) -> np.ndarray:
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if one_minus_y is None:
            one_minus_y = 1.0 - y
        else:
            one_minus_y = np.atleast_1d(np.asarray(one_minus_y, dtype=float))
        return self._eval(y, one_minus_y)

    def _ensure_grid(self, k: float):
        if self._grid is not None and k <= self.k_budget:
            return
        self.k_budget = max(self.k_budget, k + 2.0)
        if math.isinf(self.y_max):
            y_cut = _decay_cutoff(max(self.problem.r, 1), self.k_budget)
            self._grid = fixed_grid_zero_inf(level=6, v_max=math.log(y_cut))
        else:
            self._grid = fixed_grid_unit(level=6)
        self._vals = self.evaluate(self._grid.y, self._grid.one_minus_y)
        self._vals_coarse = self.evaluate(self._grid.y_coarse, self._grid.one_minus_y_coarse)

    def moment(self, k: float) -> tuple[float, float]:
        """(integral of y^k h, error estimate)."""
        self._ensure_grid(k)
        g = self._grid
        fine = float(np.dot(g.w, g.y**k * self._vals))
        coarse = float(np.dot(g.w_coarse, g.y_coarse**k * self._vals_coarse))
        if not math.isfinite(fine):
            raise QuadratureFailure(f"moment k={k} integral is not finite", None)
        return fine, abs(fine - coarse)


def _decay_cutoff(r: int, k_max: float) -> float:
    """y beyond which y^k * exp(-r y^(1/r)) is negligible for k <= k_max."""
    y = 100.0
    for _ in range(4):
        y = ((70.0 + k_max * max(math.log(y), 1.0)) / r) ** r
    return y


def weight_function(
    params: AlgebraParams,
    mu: int,
    alpha: int,
    tol: float = 1e-10,
    require_positive: bool = True,
) -> WeightFunction:
    """Weight solving the (mu, alpha) moment problem.

    Dispatch: r > 0 goes through the Meijer machinery (direct
    Slater/contour for alpha = 0, Mellin-convolution quadrature
    otherwise); r = 0 uses the closed Hausdorff forms (Beta power,
    Gauss 2F1, Appell-equivalent series).

    Without a positivity certificate the default is to refuse; passing
    require_positive=False still returns the inverse Mellin transform
    (then possibly sign-indefinite, evaluated by Slater/contour), whose
    moments still reproduce B(k).
    """
    problem = MomentProblem(params, mu, alpha)
    cert = positivity_condition(params, mu, alpha)
    a, b = mellin_lists(params, mu, alpha)
    amp = math.exp(problem.log_A)
    r = problem.r
    if isinstance(cert, PositivityRefusal):
        if require_positive:
            raise PositivityUnavailable(cert.reason)
        if r == 0:
            raise PositivityUnavailable(
                f"{cert.reason}; no unsigned evaluation on (0, 1) is implemented"
            )

        def evaluator(y, one_minus_y=None, _a=tuple(a), _b=tuple(b), _amp=amp):
            return _amp * g_general_vec(_a, _b, y)

        return WeightFunction(problem, "meijer_unsigned", cert, evaluator)

    if alpha == 0:
        def evaluator(y, one_minus_y=None, _b=tuple(b), _amp=amp):
            return _amp * m0_eval_vec(_b, y)

        return WeightFunction(problem, "meijer_m0", cert, evaluator)

    if r > 0:
        kernel = build_convolution_kernel(a, b, cert.pairing, tol=tol)

        def evaluator(y, one_minus_y=None, _k=kernel, _amp=amp):
            return _amp * _k(y)

        return WeightFunction(problem, "kummer", cert, evaluator)

    # r = 0: Hausdorff problem on (0, 1)
    if alpha == 1:
        bb1 = params.beta_bar_at(mu + 1)

        def evaluator(y, one_minus_y=None, _bb1=bb1, _amp=amp):
            y = np.asarray(y, dtype=float)
            om = 1.0 - y if one_minus_y is None else np.asarray(one_minus_y, dtype=float)
            out = np.zeros_like(y)
            ins = (y > 0) & (om > 0)
            with np.errstate(over="ignore", under="ignore"):
                out[ins] = _amp / math.gamma(_bb1 - 1.0) * om[ins] ** (_bb1 - 2.0)
            return out

        return WeightFunction(problem, "beta_power", cert, evaluator)

    if alpha == 2:
        def evaluator(y, one_minus_y=None, _p=params, _mu=mu, _amp=amp):
            y = np.asarray(y, dtype=float)
            om = 1.0 - y if one_minus_y is None else np.asarray(one_minus_y, dtype=float)
            out = np.zeros_like(y)
            for i in np.nonzero(((y > 0) & (om > 0)).ravel())[0]:
                out.ravel()[i] = _amp * _h20_value(
                    _p, _mu, float(y.ravel()[i]), float(om.ravel()[i])
                )
            return out

        return WeightFunction(problem, "gauss2f1", cert, evaluator)

    if alpha == 3:
        def evaluator(y, one_minus_y=None, _p=params, _mu=mu, _amp=amp, _a=tuple(a), _b=tuple(b)):
            y = np.asarray(y, dtype=float)
            om = 1.0 - y if one_minus_y is None else np.asarray(one_minus_y, dtype=float)
            out = np.zeros_like(y)
            # small y: the p = q Slater expansion converges inside the unit
            # interval with separated power scales (the Appell outer series
            # stalls as its first argument approaches 1)
            small = (y > 0) & (y <= 0.45)
            if small.any():
                out[small] = _amp * g_general_vec(_a, _b, y[small])
            for i in np.nonzero(((y > 0.45) & (om > 0)).ravel())[0]:
                out.ravel()[i] = _amp * h30_appell_value(
                    _p, _mu, float(y.ravel()[i]), float(om.ravel()[i])
                )
            return out

        return WeightFunction(problem, "appell_f3", cert, evaluator)

    def evaluator(y, one_minus_y=None, _p=params, _mu=mu, _alpha=alpha, _amp=amp):
        y = np.asarray(y, dtype=float)
        om = 1.0 - y if one_minus_y is None else np.asarray(one_minus_y, dtype=float)
        out = np.zeros_like(y)
        for i in np.nonzero(((y > 0) & (om > 0)).ravel())[0]:
            out.ravel()[i] = _amp * halpha0_series(
                _p, _mu, _alpha, float(y.ravel()[i]), one_minus_y=float(om.ravel()[i])
            )
        return out

    return WeightFunction(problem, "multiple_series", cert, evaluator)


def _h20_value(params: AlgebraParams, mu: int, y: float, one_minus_y: float | None = None) -> float:
    """Closed 2F1 form of the alpha = 2 Hausdorff weight (without A).

    Written with the index-shifted parameters bb(j) = beta_bar(mu + j):
    (1-y)^(bb1+bb2-bb3-2)/Gamma(bb1+bb2-bb3-1)
        * 2F1(bb1-bb3, bb2-bb3; bb1+bb2-bb3-1; 1-y).
    """
    om = 1.0 - y if one_minus_y is None else one_minus_y
    bb = lambda j: params.beta_bar_at(mu + j)
    s = bb(1) + bb(2) - bb(3) - 1.0
    lg, sg = lgamma_signed(s)
    f = gauss_2f1(bb(1) - bb(3), bb(2) - bb(3), s, om, one_minus_x=y).value
    return sg * math.exp((s - 1.0) * math.log(om) - lg) * f


def h30_appell_value(
    params: AlgebraParams, mu: int, y: float, one_minus_y: float | None = None
) -> float:
    """Closed Appell form of the alpha = 3 Hausdorff weight (without A):

    y^(bb5-bb3) (1-y)^(Z-1)/Gamma(Z)
      * F3(bb1-bb4, bb3-bb5; bb2-bb4, bb3-1; Z; 1-y, 1-1/y),
    Z = bb1+bb2+bb3-bb4-bb5-1, with bb(j) = beta_bar(mu + j).
    """
    om = 1.0 - y if one_minus_y is None else one_minus_y
    bb = lambda j: params.beta_bar_at(mu + j)
    z_par = bb(1) + bb(2) + bb(3) - bb(4) - bb(5) - 1.0
    lg, sg = lgamma_signed(z_par)
    f3 = appell_f3(
        bb(1) - bb(4), bb(3) - bb(5), bb(2) - bb(4), bb(3) - 1.0,
        z_par, om, -om / y,
    ).value
    return sg * math.exp(
        (bb(5) - bb(3)) * math.log(y) + (z_par - 1.0) * math.log(om) - lg
    ) * f3


def h20_value_swapped(params: AlgebraParams, mu: int, y: float) -> float:
    """The alpha = 2 weight from the other positivity branch.

    Same density with the roles of the two lower Mellin parameters
    exchanged; equals _h20_value by the 2F1 linear transformation.
    """
    bb = lambda j: params.beta_bar_at(mu + j)
    a1, a2 = bb(1) - 1.0, bb(2) - 1.0
    b_in, b_pow = 0.0, bb(3) - 1.0
    s = a1 + a2 - b_in - b_pow
    lg, sg = lgamma_signed(s)
    f = gauss_2f1(a1 - b_in, a2 - b_in, s, 1.0 - y).value
    amp = math.exp(MomentProblem(params, mu, 2).log_A)
    return amp * sg * math.exp(b_pow * math.log(y) + (s - 1.0) * math.log1p(-y) - lg) * f


def halpha0_series(
    params: AlgebraParams,
    mu: int,
    alpha: int,
    y: float,
    n_cap: int = 160,
    tol: float = 1e-12,
    one_minus_y: float | None = None,
) -> float:
    """Hausdorff weight (without A) as the nested hypergeometric series.

    alpha = 2 collapses to the closed 2F1 form; alpha >= 3 sums alpha-2
    nested indices with geometric (1-y)^n decay.
    """
    om = 1.0 - y if one_minus_y is None else one_minus_y
    if y <= 0.0 or om <= 0.0:
        return 0.0
    if alpha == 2:
        return _h20_value(params, mu, y, om)
    bb = lambda j: params.beta_bar_at(mu + j)
    d = [bb(q) - bb(alpha + q) for q in range(1, alpha)]  # a_q - b_q gaps, q = 1..alpha-1
    zeta0 = sum(bb(p) for p in range(1, alpha + 1)) - sum(
        bb(alpha + p) for p in range(1, alpha)
    ) - 1.0
    lg_pref = 0.0
    sg_pref = 1
    l, s = lgamma_signed(d[0])
    lg_pref += l
    sg_pref *= s
    for p in range(1, alpha - 1):
        l, s = lgamma_signed(bb(p + 1) - bb(alpha + p))
        lg_pref += l
        sg_pref *= s
    f_a = bb(alpha) - bb(2 * alpha - 1)

    total = 0.0

    def recurse(p: int, ns: list[int], log_mag: float, sign: int, weight_scale: float):
        nonlocal total
        # p-th summation index (1-based over 1..alpha-2)
        if p > alpha - 2:
            nsum = sum(ns)
            zeta = zeta0 + nsum
            eta_last = sum(d) + sum(ns[: alpha - 2])
            lg_z, sg_z = lgamma_signed(zeta)
            f = gauss_2f1(f_a, eta_last, zeta, om, one_minus_x=y).value
            mag = log_mag - lg_z + (zeta - 1.0) * math.log(om)
            total += sign * sg_z * math.exp(mag) * f
            return abs(math.exp(mag) * f)
        best = 0.0
        small = 0
        for n in range(n_cap):
            lg_n = 0.0
            sg_n = 1
            l, s = lgamma_signed(bb(p + 1) - bb(alpha + p) + n)
            lg_n += l
            sg_n *= s
            xi = sum(d[:p]) + sum(ns) + n
            l, s = lgamma_signed(xi)
            lg_n += l
            sg_n *= s
            if p <= alpha - 3:
                eta = sum(d[: p + 1]) + sum(ns) + n
                l, s = lgamma_signed(eta)
                lg_n -= l
                sg_n *= s
            lg_n -= math.lgamma(n + 1.0)
            contrib = recurse(p + 1, ns + [n], log_mag + lg_n, sign * sg_n, weight_scale)
            best = max(best, contrib)
            if contrib < tol * max(weight_scale, best):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        return best

    recurse(1, [], -lg_pref, sg_pref, 1.0)
    return total


def conjecture_weight_value(
    params: AlgebraParams, mu: int, alpha: int, y, tol: float = 1e-9
) -> np.ndarray:
    """Candidate closed form: A * G^{alpha,0}_{alpha,alpha} via convolution.

    Independent of the series forms above (live quadrature); used as a
    cross-check, never asserted correct for alpha >= 4.
    """
    problem = MomentProblem(params, mu, alpha)
    cert = positivity_condition(params, mu, alpha)
    if isinstance(cert, PositivityRefusal):
        raise PositivityUnavailable(cert.reason)
    a, b = mellin_lists(params, mu, alpha)
    kernel = build_convolution_kernel(a, b, cert.pairing, tol=min(tol, 1e-10), force_convolution=True)
    yv = np.atleast_1d(np.asarray(y, dtype=float))
    return math.exp(problem.log_A) * kernel(yv)


# --------------------------------------------------------------------------
# verification: moments, Hankel-Hadamard, Carleman
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentRow:
    k: int
    target: float
    integral: float
    rel_error: float


@dataclass(frozen=True)
class MomentReport:
    rows: tuple[MomentRow, ...]
    max_rel_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_rel_error < self.tol


def verify_moments(
    weight: WeightFunction, problem: MomentProblem, k_max: int = 8, tol: float = 1e-6
) -> MomentReport:
    """Compare quadrature moments of the weight against the B(k) targets."""
    rows = []
    worst = 0.0
    for k in range(k_max + 1):
        target = moment_target(problem, k)
        integral, quad_err = weight.moment(float(k))
        rel = abs(integral - target) / abs(target)
        worst = max(worst, rel)
        rows.append(MomentRow(k, target, integral, rel))
    return MomentReport(tuple(rows), worst, tol)


def hankel_hadamard(problem: MomentProblem, order: int) -> tuple[float, float]:
    """Minimal eigenvalues of the two Hankel-Hadamard moment matrices."""
    if order > 10:
        raise ValueError("order above 10 is numerically meaningless here")
    h0 = np.empty((order, order))
    h1 = np.empty((order, order))
    for i in range(order):
        for j in range(order):
            h0[i, j] = moment_target(problem, i + j)
            h1[i, j] = moment_target(problem, i + j + 1)
    return float(np.linalg.eigvalsh(h0).min()), float(np.linalg.eigvalsh(h1).min())


@dataclass(frozen=True)
class CarlemanResult:
    exponent: float
    verdict: str  # unique | possibly_nonunique | inconclusive
    partial_sum: float
    partial_sum_half: float


def carleman_test(params: AlgebraParams, alpha: int, k_sum: int = 200) -> CarlemanResult:
    """Uniqueness classification of the moment problem.

    The log-test exponent of B(k)^(-1/2k) is -(lambda/2 - alpha); the
    series sum(B(k)^(-1/2k)) diverges (unique solution) for exponent
    > -1, converges (other solutions possible) for < -1, and the test is
    silent exactly at -1.  Partial sums over k <= k_sum corroborate.
    """
    lam = params.lam
    exponent = -(lam / 2.0 - alpha)
    if exponent > -1.0 + 1e-12:
        verdict = "unique"
    elif exponent < -1.0 - 1e-12:
        verdict = "possibly_nonunique"
    else:
        verdict = "inconclusive"
    if abs(exponent + 1.0) <= 1e-12:
        verdict = "inconclusive"
    problem = MomentProblem(params, 0, alpha)
    s_full = 0.0
    s_half = 0.0
    for k in range(1, k_sum + 1):
        term = math.exp(-problem.log_B(k) / (2.0 * k))
        s_full += term
        if k <= k_sum // 2:
            s_half += term
    return CarlemanResult(exponent, verdict, s_full, s_half)


# --------------------------------------------------------------------------
# eigenstate measures and identity resolutions
# --------------------------------------------------------------------------

@dataclass
class EigenstateMeasures:
    """h_mu(t) and the complex g_mu(t) mixing them by discrete Fourier sums."""

    params: AlgebraParams
    weights: list[WeightFunction]

    def h(self, mu: int, t) -> np.ndarray:
        p = self.params
        lam = p.lam
        t = np.atleast_1d(np.asarray(t, dtype=float))
        pref = lam**lam
        for nu in range(1, mu + 1):
            pref *= p.beta_bar_at(nu)
        return pref * t ** (lam - mu - 1) * self.weights[mu].evaluate(t**lam)

    def g(self, mu: int, t) -> np.ndarray:
        lam = self.params.lam
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.zeros(t.shape, dtype=complex)
        for nu in range(lam):
            out += cmath.exp(2j * math.pi * mu * nu / lam) * self.h(nu, t)
        return out / lam

    def h_moment(self, mu: int, n: float) -> float:
        """int t^n h_mu(t) dt = lam^(lam-1) prod(beta_bar) * M_mu((n - mu)/lam)."""
        p = self.params
        lam = p.lam
        pref = float(lam) ** (lam - 1)
        for nu in range(1, mu + 1):
            pref *= p.beta_bar_at(nu)
        val, _ = self.weights[mu].moment((n - mu) / lam)
        return pref * val

    def g_moment(self, mu: int, n: float) -> complex:
        lam = self.params.lam
        out = 0.0 + 0.0j
        for nu in range(lam):
            out += cmath.exp(2j * math.pi * mu * nu / lam) * self.h_moment(nu, n)
        return out / lam


def eigenstate_measures(params: AlgebraParams, tol: float = 1e-10) -> EigenstateMeasures:
    """Build h_mu / g_mu from the alpha = 0 sector weights (always certified)."""
    weights = [weight_function(params, mu, 0, tol=tol) for mu in range(params.lam)]
    return EigenstateMeasures(params, weights)


@dataclass(frozen=True)
class ResolutionReport:
    mode: str
    diagonal: tuple[float, ...]
    max_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_error < self.tol


def _log_d(params: AlgebraParams, n: int) -> float:
    """log of D_n = k! prod_(nu<=mu) (bb_nu)_(k+1) prod_(nu>mu) (bb_nu)_k."""
    lam = params.lam
    k, mu = divmod(n, lam)
    out = math.lgamma(k + 1.0)
    for nu in range(1, lam):
        bbv = params.beta_bar_at(nu)
        reps = k + 1 if nu <= mu else k
        out += math.lgamma(bbv + reps) - math.lgamma(bbv)
    return out


def verify_identity_resolution(
    params: AlgebraParams,
    mode: str,
    n_max: int = 6,
    tol: float = 1e-6,
    measures: EigenstateMeasures | None = None,
) -> ResolutionReport:
    """Check <n| integral |n'> = delta_{nn'} for the requested resolution.

    Angular integrals are exact Kronecker deltas, so only the diagonal
    radial moments are computed; modes: diagonal_alpha0 (sector family),
    eigenstate_diag (the |z_mu> form), eigenstate_offdiag (the complex
    g_mu mixture of |z><z e^{2 pi i mu / lambda}|).
    """
    if n_max > 8:
        raise ValueError("n_max above 8 exceeds the supported range")
    lam = params.lam
    diag = []
    if mode == "diagonal_alpha0":
        weights = (
            measures.weights
            if measures is not None
            else [weight_function(params, mu, 0) for mu in range(lam)]
        )
        for n in range(n_max + 1):
            k, mu = divmod(n, lam)
            m_k, _ = weights[mu].moment(float(k))
            # squared unnormalized coefficient w_k of |k lam + mu>, via
            # D_n = k! prod_(nu<=mu) bb_nu (bb_nu+1)_k prod_(nu>mu) (bb_nu)_k
            log_w = -_log_d(params, n)
            for nu in range(1, mu + 1):
                log_w += math.log(params.beta_bar_at(nu))
            val = math.pi * lam**lam * math.exp(log_w) * m_k
            diag.append(val)
    elif mode in ("eigenstate_diag", "eigenstate_offdiag"):
        meas = measures if measures is not None else eigenstate_measures(params)
        for n in range(n_max + 1):
            if mode == "eigenstate_diag":
                mn = meas.h_moment(n % lam, float(n))
            else:
                acc = 0.0 + 0.0j
                for mu in range(lam):
                    acc += cmath.exp(-2j * math.pi * mu * n / lam) * meas.g_moment(mu, float(n))
                if abs(acc.imag) > 1e-8 * max(1.0, abs(acc.real)):
                    raise QuadratureFailure(
                        f"off-diagonal resolution produced imaginary part {acc.imag:.3e}", None
                    )
                mn = acc.real
            val = math.pi * lam * math.exp(-_log_d(params, n)) * mn
            diag.append(val)
    else:
        raise ValueError(f"unknown resolution mode {mode!r}")
    errs = [abs(v - 1.0) for v in diag]
    return ResolutionReport(mode, tuple(diag), max(errs), tol)
