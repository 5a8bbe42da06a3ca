"""Coherent-state families as truncated coefficient vectors.

Two families:

* |z; mu; alpha>, the normalizable solutions of
  (a^(lambda-alpha) - z adag^alpha) |psi> = 0 living in a single Fock
  sector F_mu, defined for 0 <= alpha <= lambda/2 and
  0 <= mu <= lambda - alpha - 1 (unit disc in y when alpha = lambda/2);

* |z>, the eigenstates of the annihilation operator itself, supported on
  the whole Fock space and reducing to paraboson coherent states at
  lambda = 2.

Coefficients are built by multiplicative recursion (no independent Gamma
evaluations); analytic norms come from the hypergeometric closed forms
and are cross-checkable against sum(|c_n|^2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraParams, structure_function
from .errors import DomainError, SectorError, TruncationTooSmall
from .specfun import pfq

TAIL_THRESHOLD = 1e-10
MAX_AUTO_DIM = 1024


@dataclass(frozen=True)
class CsAlphaSpec:
    """Label (z, mu, alpha) of one member of the sector family."""

    params: AlgebraParams
    mu: int
    alpha: int
    z: complex

    def __post_init__(self):
        lam = self.params.lam
        if not 0 <= self.alpha <= lam // 2:
            raise SectorError(f"alpha must lie in [0, {lam // 2}], got {self.alpha}")
        if not 0 <= self.mu <= lam - self.alpha - 1:
            raise SectorError(
                f"only the trivial solution exists for mu = {self.mu}, alpha = {self.alpha}"
            )
        if 2 * self.alpha == lam and self.y >= 1.0:
            raise DomainError(
                f"alpha = lambda/2 states live on the unit disc; y = {self.y:.6g} >= 1"
            )

    @property
    def y(self) -> float:
        lam = self.params.lam
        return abs(self.z) ** 2 / lam ** (lam - 2 * self.alpha)


@dataclass(frozen=True)
class StateVector:
    """Complex coefficients over |0>..|dim-1> plus norm metadata.

    For normalized=True, coeffs are the physical amplitudes and
    norm_sq_analytic holds the closed-form normalization series N (so the
    unnormalized "round bracket" state is sqrt(N) times this one).
    tail_bound estimates the probability mass lost to truncation.
    """

    dim: int
    coeffs: np.ndarray = field(repr=False)
    norm_sq_analytic: float
    tail_bound: float
    normalized: bool = True

    def __post_init__(self):
        self.coeffs.setflags(write=False)

    def braket(self, other: "StateVector") -> complex:
        n = min(self.dim, other.dim)
        return complex(np.vdot(self.coeffs[:n], other.coeffs[:n]))

    def norm_sq(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)


def _cs_alpha_lists(params: AlgebraParams, mu: int, alpha: int, shift: int | None = None):
    """Numerator/denominator parameter lists of the normalization pFq.

    Every beta_bar with index <= shift gains +1.  shift = mu (the
    default) reproduces the plain normalization series, whose denominator
    carries +1 exactly on indices 1..mu; other shifts build the
    parameter-shifted series entering the photon-moment ratios.
    """
    lam = params.lam
    if shift is None:
        shift = mu

    def bb(j: int) -> float:
        v = params.beta_bar_at(j)
        return v + 1.0 if j <= shift else v

    num = [bb(j) for j in range(mu + 1, mu + alpha + 1)]
    den = [bb(j) for j in range(1, mu + 1)]
    den += [bb(j) for j in range(mu + alpha + 1, lam)]
    return num, den


def norm_series_cs_alpha(params: AlgebraParams, mu: int, alpha: int, y: float):
    """N^(alpha)_mu as a pFq value at argument y."""
    num, den = _cs_alpha_lists(params, mu, alpha)
    return pfq(num, den, y)


def cs_alpha_state(
    spec: CsAlphaSpec, dim: int = 64, normalized: bool = True
) -> StateVector:
    """Coefficient vector of |z; mu; alpha| on |0>..|dim-1>.

    dim doubles automatically (up to 1024) while the truncated norm mass
    exceeds the tail threshold.
    """
    params = spec.params
    lam = params.lam
    if dim < lam:
        raise TruncationTooSmall(f"need dim >= lambda = {lam}")
    x = spec.z / lam ** ((lam - 2 * spec.alpha) / 2.0)
    y = spec.y
    norm = norm_series_cs_alpha(params, spec.mu, spec.alpha, y).value.real

    while True:
        k_max = (dim - 1 - spec.mu) // lam
        coeffs = np.zeros(dim, dtype=complex)
        w = 1.0
        xk = 1.0 + 0.0j
        for k in range(k_max + 1):
            coeffs[k * lam + spec.mu] = math.sqrt(w) * xk
            ratio = 1.0
            for nu in range(spec.mu + 1, spec.mu + spec.alpha + 1):
                ratio *= params.beta_bar_at(nu) + k
            den = k + 1.0
            for nu in range(1, spec.mu + 1):
                den *= params.beta_bar_at(nu) + 1.0 + k
            for nu in range(spec.mu + spec.alpha + 1, lam):
                den *= params.beta_bar_at(nu) + k
            w *= ratio / den
            xk *= x
        # first omitted norm-series term over the total norm, with a
        # geometric cushion; on the unit disc the term ratio tends to y
        # itself instead of y/k
        if 2 * spec.alpha == lam:
            ratio = min(0.95, y)
        else:
            ratio = min(0.9, y / (k_max + 2.0))
        tail = w * y ** (k_max + 1) / norm / (1.0 - ratio)
        if tail <= TAIL_THRESHOLD or dim >= MAX_AUTO_DIM:
            break
        dim = min(2 * dim, MAX_AUTO_DIM)
    if tail > TAIL_THRESHOLD:
        raise TruncationTooSmall(
            f"tail bound {tail:.3e} above {TAIL_THRESHOLD} at dim = {dim}"
        )
    if normalized:
        coeffs /= math.sqrt(norm)
    return StateVector(dim, coeffs, norm, tail, normalized)


def eigenstate_norm_components(params: AlgebraParams, t: float) -> list[float]:
    """N^(0)_mu(|omega|) for mu = 0..lambda-1, as functions of t = |z|^2/lambda."""
    lam = params.lam
    out = []
    for mu in range(lam):
        num, den = _cs_alpha_lists(params, mu, 0)
        out.append(pfq(num, den, t**lam).value.real)
    return out


def eigenstate_norm(params: AlgebraParams, t: float) -> float:
    """Normalization N(|z|) = sum_mu N^(0)_mu(t^lam) t^mu / prod beta_bar."""
    lam = params.lam
    comps = eigenstate_norm_components(params, t)
    total = 0.0
    pref = 1.0
    for mu in range(lam):
        if mu > 0:
            pref *= t / params.beta_bar_at(mu)
        total += comps[mu] * pref
    return total


def eigenstate(params: AlgebraParams, z: complex, dim: int = 64) -> StateVector:
    """Eigenstate a|z> = z|z> as a normalized coefficient vector."""
    lam = params.lam
    if dim < lam:
        raise TruncationTooSmall(f"need dim >= lambda = {lam}")
    t = abs(z) ** 2 / lam
    norm = eigenstate_norm(params, t)
    while True:
        coeffs = np.zeros(dim, dtype=complex)
        c = 1.0 + 0.0j
        coeffs[0] = c
        for n in range(1, dim):
            c = c * z / math.sqrt(structure_function(params, n))
            coeffs[n] = c
        r = abs(z) ** 2 / structure_function(params, dim)
        tail = abs(c) ** 2 * min(10.0, 1.0 / max(1e-3, 1.0 - r)) / norm
        if tail <= TAIL_THRESHOLD or dim >= MAX_AUTO_DIM:
            break
        dim = min(2 * dim, MAX_AUTO_DIM)
    if tail > TAIL_THRESHOLD:
        raise TruncationTooSmall(
            f"tail bound {tail:.3e} above {TAIL_THRESHOLD} at dim = {dim}"
        )
    coeffs /= math.sqrt(norm)
    return StateVector(dim, coeffs, norm, tail, True)


def component_zmu(params: AlgebraParams, z: complex, mu: int, dim: int = 64) -> StateVector:
    """Sector component |z_mu> = P_mu |z> (not renormalized).

    The components sum to the eigenstate and are mutually orthogonal;
    their squared norms are N^(0)_mu(t^lam) t^mu / (prod beta_bar * N).
    """
    lam = params.lam
    if not 0 <= mu < lam:
        raise SectorError(f"mu must lie in [0, {lam})")
    full = eigenstate(params, z, dim)
    coeffs = np.array(full.coeffs)
    for n in range(full.dim):
        if n % lam != mu:
            coeffs[n] = 0.0
    t = abs(z) ** 2 / lam
    comp = eigenstate_norm_components(params, t)[mu]
    pref = t**mu
    for nu in range(1, mu + 1):
        pref /= params.beta_bar_at(nu)
    norm_sq = comp * pref / full.norm_sq_analytic
    return StateVector(full.dim, coeffs, norm_sq, full.tail_bound, False)


def overlap_cs_alpha(s1: CsAlphaSpec, s2: CsAlphaSpec) -> complex:
    """<s1|s2> from the closed hypergeometric form."""
    if s1.params is not s2.params and s1.params != s2.params:
        raise DomainError("overlap requires identical algebra parameters")
    if s1.mu != s2.mu:
        return 0.0
    params = s1.params
    lam = params.lam
    mu = s1.mu
    a_min = min(s1.alpha, s2.alpha)
    a_max = max(s1.alpha, s2.alpha)
    num = [params.beta_bar_at(j) for j in range(mu + 1, mu + a_min + 1)]
    den = [params.beta_bar_at(j) + 1.0 for j in range(1, mu + 1)]
    den += [params.beta_bar_at(j) for j in range(mu + a_max + 1, lam)]
    w = s1.z.conjugate() * s2.z / lam ** (lam - s1.alpha - s2.alpha)
    n1 = norm_series_cs_alpha(params, mu, s1.alpha, s1.y).value.real
    n2 = norm_series_cs_alpha(params, mu, s2.alpha, s2.y).value.real
    return complex(pfq(num, den, w).value) / math.sqrt(n1 * n2)


def overlap_eigenstate(params: AlgebraParams, z1: complex, z2: complex) -> complex:
    """<z1|z2> from the closed form (complex pFq argument)."""
    lam = params.lam
    w = z1.conjugate() * z2 / lam
    total = 0.0 + 0.0j
    pref = 1.0 + 0.0j
    for mu in range(lam):
        if mu > 0:
            pref *= w / params.beta_bar_at(mu)
        num, den = _cs_alpha_lists(params, mu, 0)
        total += complex(pfq(num, den, w**lam).value) * pref
    n1 = eigenstate_norm(params, abs(z1) ** 2 / lam)
    n2 = eigenstate_norm(params, abs(z2) ** 2 / lam)
    return total / math.sqrt(n1 * n2)


def omega_power(z: complex, lam: int) -> complex:
    """z^lambda from (|z|, arg z) as a single complex power."""
    return cmath.rect(abs(z) ** lam, lam * cmath.phase(z))
