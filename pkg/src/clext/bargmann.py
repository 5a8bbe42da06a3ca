"""Bargmann-space realizations as exact maps on polynomial coefficients.

Fock vectors become polynomials (sector basis: |k lam + mu> ~ z^k inside
one sector; vector and eigenstate bases: lambda-component polynomial
columns), and every generator becomes a product of first-order atoms
{multiply by z, d/dz, z d/dz + c, d/dz + c/z} applied right to left.
Atom application is exact on coefficients, so commutation and
intertwining identities hold to rounding; Hermiticity with respect to
the weighted inner products is checked by quadrature moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraParams, build_operator
from .errors import NonPolynomialResult, SectorError, UnsupportedOp
from .measures import EigenstateMeasures, WeightFunction
from .states import StateVector

SECTOR_OPS = ("N", "Jplus", "Jminus", "J0")
VECTOR_OPS = ("N", "Jplus", "Jminus", "J0", "a", "adag", "P")


@dataclass(frozen=True)
class PolyFunction:
    """Polynomial coefficients; mu labels a sector function, mu=None a
    lambda-component column (coeffs shape (lambda, deg + 1))."""

    coeffs: np.ndarray = field(repr=False)
    mu: int | None = None

    def __post_init__(self):
        self.coeffs.setflags(write=False)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[-1] - 1

    def component(self, mu: int) -> np.ndarray:
        if self.mu is not None:
            raise SectorError("sector polynomial has no components")
        return self.coeffs[mu]


def sector_poly(coeffs, mu: int) -> PolyFunction:
    return PolyFunction(np.asarray(coeffs, dtype=complex), mu)


def vector_poly(coeffs) -> PolyFunction:
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 2:
        raise SectorError("vector polynomial needs a (lambda, deg+1) array")
    return PolyFunction(c, None)


# ---- atoms -----------------------------------------------------------------

def _atom_mul_z(c: np.ndarray) -> np.ndarray:
    out = np.zeros(len(c) + 1, dtype=complex)
    out[1:] = c
    return out


def _atom_ddz(c: np.ndarray) -> np.ndarray:
    if len(c) == 1:
        return np.zeros(1, dtype=complex)
    return c[1:] * np.arange(1, len(c))


def _atom_theta_plus(c: np.ndarray, const: float) -> np.ndarray:
    return c * (np.arange(len(c)) + const)


def _atom_ddz_plus_over_z(c: np.ndarray, const: float) -> np.ndarray:
    # (d/dz + const/z) z^k = (k + const) z^{k-1}; the z^{-1} term must
    # cancel, i.e. const * c_0 = 0
    if abs(const) > 0 and abs(c[0]) > 1e-13 * (np.abs(c).max() + 1e-300):
        raise NonPolynomialResult(
            f"pole residue {const * c[0]:.3e} does not cancel; wrong sector routing"
        )
    if len(c) == 1:
        return np.zeros(1, dtype=complex)
    return c[1:] * (np.arange(1, len(c)) + const)


# ---- sector realization ----------------------------------------------------

def _apply_sector(params: AlgebraParams, mu: int, alpha: int, op: str, c: np.ndarray):
    lam = params.lam
    bb = params.beta_bar_at
    if op == "N":
        return _atom_theta_plus(c, mu / lam) * lam
    if op == "J0":
        return _atom_theta_plus(c, 0.5 * (bb(mu) + bb(mu + 1)))
    if op == "Jplus":
        out = c
        for nu in range(mu + 1, mu + alpha + 1):
            out = _atom_theta_plus(out, bb(nu))
        return lam ** (alpha - 1) * _atom_mul_z(out)
    if op == "Jminus":
        out = _atom_ddz(c)
        for nu in range(mu + alpha + 1, lam):
            out = _atom_theta_plus(out, bb(nu))
        for nu in range(1, mu + 1):
            out = _atom_theta_plus(out, bb(nu) + 1.0)
        return lam ** (lam - alpha - 1) * out
    raise UnsupportedOp(f"op {op!r} is not defined on a single sector")


# ---- vector (alpha = 0) realization ---------------------------------------

def _apply_vector_alpha0(params: AlgebraParams, op: str, c: np.ndarray, mu_op):
    lam = params.lam
    bb = params.beta_bar_at
    deg = c.shape[1]
    if op in ("N", "Jplus", "Jminus", "J0"):
        rows = []
        for mu in range(lam):
            rows.append(_apply_sector(params, mu, 0, op, c[mu]))
        width = max(len(r) for r in rows)
        out = np.zeros((lam, width), dtype=complex)
        for mu, r in enumerate(rows):
            out[mu, : len(r)] = r
        return out
    if op == "P":
        out = np.zeros_like(c)
        out[mu_op % lam] = c[mu_op % lam]
        return out
    if op == "adag":
        prod = 1.0
        for nu in range(1, lam):
            prod *= bb(nu)
        out = np.zeros((lam, deg + 1), dtype=complex)
        top = _atom_mul_z(c[lam - 1]) / math.sqrt(lam ** (lam - 1) * prod)
        out[0, : len(top)] = top
        for mu in range(1, lam):
            out[mu, :deg] = math.sqrt(lam * bb(mu)) * c[mu - 1]
        return out
    if op == "a":
        prod = 1.0
        for nu in range(1, lam):
            prod *= bb(nu)
        out = np.zeros((lam, deg), dtype=complex) if deg > 1 else np.zeros((lam, 1), complex)
        width = out.shape[1]
        for mu in range(lam - 1):
            row = math.sqrt(lam / bb(mu + 1)) * _atom_theta_plus(c[mu + 1], bb(mu + 1))
            out[mu, : min(len(row), width)] = row[:width]
        bot = math.sqrt(lam ** (lam + 1) * prod) * _atom_ddz(c[0])
        out[lam - 1, : len(bot)] = bot
        return out
    raise UnsupportedOp(f"op {op!r} unsupported in the vector basis")


# ---- eigenstate-basis realization ------------------------------------------

def _apply_eigenstate(params: AlgebraParams, op: str, c: np.ndarray, mu_op):
    lam = params.lam
    beta = params.beta_at
    deg = c.shape[1]
    if op == "N":
        return np.vstack([_atom_theta_plus(c[mu], 0.0) for mu in range(lam)])
    if op == "J0":
        return np.vstack(
            [
                (_atom_theta_plus(c[mu], 0.5 * (beta(mu) + beta(mu + 1) + 1.0))) / lam
                for mu in range(lam)
            ]
        )
    if op == "P":
        out = np.zeros_like(c)
        out[mu_op % lam] = c[mu_op % lam]
        return out
    if op == "Jplus":
        out = np.zeros((lam, deg + lam), dtype=complex)
        out[:, lam:] = c / lam
        return out
    if op == "Jminus":
        rows = []
        for mu in range(lam):
            row = c[mu]
            for nu in range(mu, 0, -1):
                row = _atom_ddz_plus_over_z(row, beta(nu))
            row = _atom_ddz(row)
            for nu in range(lam - 1, mu, -1):
                row = _atom_ddz_plus_over_z(row, beta(nu))
            rows.append(row / lam)
        width = max(len(r) for r in rows)
        out = np.zeros((lam, width), dtype=complex)
        for mu, r in enumerate(rows):
            out[mu, : len(r)] = r
        return out
    if op == "adag":
        out = np.zeros((lam, deg + 1), dtype=complex)
        out[0, 1:] = c[lam - 1]
        for mu in range(1, lam):
            out[mu, 1:] = c[mu - 1]
        return out
    if op == "a":
        width = max(deg - 1, 1)
        out = np.zeros((lam, width), dtype=complex)
        for mu in range(lam - 1):
            row = _atom_ddz_plus_over_z(c[mu + 1], beta(mu + 1))
            out[mu, : len(row)] = row
        bot = _atom_ddz(c[0])
        out[lam - 1, : len(bot)] = bot
        return out
    raise UnsupportedOp(f"op {op!r} unsupported in the eigenstate basis")


def apply_realization(
    params: AlgebraParams,
    basis: str,
    op: str,
    f: PolyFunction,
    alpha: int = 0,
    mu_op: int | None = None,
) -> PolyFunction:
    """Apply one generator in the chosen basis to a polynomial.

    basis: "sector" (f carries its mu; N, J+, J-, J0), "vector_alpha0" or
    "eigenstate" (f is a lambda-component column; additionally a, adag
    and P(mu_op)).
    """
    if basis == "sector":
        if f.mu is None:
            raise SectorError("sector basis requires a sector polynomial")
        out = _apply_sector(params, f.mu, alpha, op, np.asarray(f.coeffs))
        return PolyFunction(np.asarray(out, dtype=complex), f.mu)
    if f.mu is not None:
        raise SectorError("vector bases require a lambda-component polynomial")
    if basis == "vector_alpha0":
        return PolyFunction(_apply_vector_alpha0(params, op, f.coeffs, mu_op), None)
    if basis == "eigenstate":
        return PolyFunction(_apply_eigenstate(params, op, f.coeffs, mu_op), None)
    raise UnsupportedOp(f"unknown basis {basis!r}")


# ---- basis functions and transforms ----------------------------------------

def _log_w_sector(params: AlgebraParams, mu: int, alpha: int, k: int) -> float:
    """log of the squared coefficient weight entering phi_{mu,k}."""
    lam = params.lam
    out = -math.lgamma(k + 1.0)
    for nu in range(mu + 1, mu + alpha + 1):
        bbv = params.beta_bar_at(nu)
        out += math.lgamma(bbv + k) - math.lgamma(bbv)
    for nu in range(1, mu + 1):
        bbv = params.beta_bar_at(nu) + 1.0
        out -= math.lgamma(bbv + k) - math.lgamma(bbv)
    for nu in range(mu + alpha + 1, lam):
        bbv = params.beta_bar_at(nu)
        out -= math.lgamma(bbv + k) - math.lgamma(bbv)
    return out


def basis_function(params: AlgebraParams, mu: int, alpha: int, k: int) -> PolyFunction:
    """Orthonormal basis monomial phi_{mu,k}(z) = w_k^(1/2) (scale z)^k."""
    lam = params.lam
    scale = lam ** (-(lam - 2 * alpha) / 2.0)
    coeffs = np.zeros(k + 1, dtype=complex)
    coeffs[k] = math.exp(0.5 * _log_w_sector(params, mu, alpha, k)) * scale**k
    return PolyFunction(coeffs, mu)


def bargmann_transform(
    params: AlgebraParams,
    psi: StateVector,
    basis: str,
    mu: int | None = None,
    alpha: int = 0,
) -> PolyFunction:
    """Map Fock coefficients to Bargmann polynomial coefficients."""
    lam = params.lam
    if basis == "sector":
        if mu is None:
            raise SectorError("sector transform needs mu")
        k_max = (psi.dim - 1 - mu) // lam
        out = np.zeros(k_max + 1, dtype=complex)
        scale = lam ** (-(lam - 2 * alpha) / 2.0)
        for k in range(k_max + 1):
            amp = psi.coeffs[k * lam + mu]
            if amp != 0:
                out[k] = amp * math.exp(0.5 * _log_w_sector(params, mu, alpha, k)) * scale**k
        return PolyFunction(out, mu)
    if basis == "vector_alpha0":
        k_max = (psi.dim - 1) // lam
        out = np.zeros((lam, k_max + 1), dtype=complex)
        for m in range(lam):
            sec = bargmann_transform(params, psi, "sector", mu=m, alpha=0)
            out[m, : len(sec.coeffs)] = sec.coeffs
        return PolyFunction(out, None)
    if basis == "eigenstate":
        out = np.zeros((lam, psi.dim), dtype=complex)
        for n in range(psi.dim):
            amp = psi.coeffs[n]
            if amp != 0:
                from .measures import _log_d

                out[n % lam, n] = amp * math.exp(
                    -0.5 * (_log_d(params, n) + n * math.log(lam))
                )
        return PolyFunction(out, None)
    raise UnsupportedOp(f"unknown basis {basis!r}")


# ---- inner products and Hermiticity ----------------------------------------

def bargmann_inner_product(
    weight: WeightFunction, f: PolyFunction, g: PolyFunction
) -> complex:
    """<f, g> = int d2z h(y) conj(f) g over the sector space.

    Monomial phases integrate to Kronecker deltas, leaving radial
    moments: <z^j, z^k> = delta_jk pi lam^((lam-2alpha)(k+1)) M_k.
    """
    prob = weight.problem
    lam = prob.params.lam
    scale = lam ** (lam - 2 * prob.alpha)
    n = min(f.coeffs.shape[-1], g.coeffs.shape[-1])
    total = 0.0 + 0.0j
    for k in range(n):
        fk = f.coeffs[k]
        gk = g.coeffs[k]
        if fk == 0 or gk == 0:
            continue
        m_k, _ = weight.moment(float(k))
        total += np.conj(fk) * gk * math.pi * scale ** (k + 1) * m_k
    return complex(total)


def vector_inner_product(
    weights: list[WeightFunction], f: PolyFunction, g: PolyFunction
) -> complex:
    total = 0.0 + 0.0j
    lam = len(weights)
    for m in range(lam):
        total += bargmann_inner_product(
            weights[m],
            PolyFunction(f.component(m), m),
            PolyFunction(g.component(m), m),
        )
    return total


def eigenstate_inner_product(
    measures: EigenstateMeasures, f: PolyFunction, g: PolyFunction
) -> complex:
    """<f, g> = sum_mu int d2z h_mu(t) conj(f_mu) g_mu, t = |z|^2/lam."""
    lam = measures.params.lam
    total = 0.0 + 0.0j
    for m in range(lam):
        fc = f.component(m)
        gc = g.component(m)
        n = min(len(fc), len(gc))
        for k in range(n):
            if fc[k] == 0 or gc[k] == 0:
                continue
            mom = measures.h_moment(m, float(k))
            total += np.conj(fc[k]) * gc[k] * math.pi * lam ** (k + 1) * mom
    return complex(total)


@dataclass(frozen=True)
class HermiticityRow:
    pair: str
    lhs: complex
    rhs: complex

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def check_hermiticity(
    params: AlgebraParams,
    mu: int,
    alpha: int,
    weight: WeightFunction,
    sample_polys: list[PolyFunction] | None = None,
) -> list[HermiticityRow]:
    """<J+ f, g> = <f, J- g> and <J0 f, g> = <f, J0 g> by moment quadrature."""
    if sample_polys is None:
        sample_polys = [
            PolyFunction(np.eye(1, d + 1, d, dtype=complex)[0], mu) for d in range(3)
        ]
    rows = []
    for f in sample_polys:
        for g in sample_polys:
            jp_f = apply_realization(params, "sector", "Jplus", f, alpha=alpha)
            jm_g = apply_realization(params, "sector", "Jminus", g, alpha=alpha)
            rows.append(
                HermiticityRow(
                    "J+/J-",
                    bargmann_inner_product(weight, jp_f, g),
                    bargmann_inner_product(weight, f, jm_g),
                )
            )
            j0_f = apply_realization(params, "sector", "J0", f, alpha=alpha)
            j0_g = apply_realization(params, "sector", "J0", g, alpha=alpha)
            rows.append(
                HermiticityRow(
                    "J0/J0",
                    bargmann_inner_product(weight, j0_f, g),
                    bargmann_inner_product(weight, f, j0_g),
                )
            )
    return rows


def check_hermiticity_vector(
    params: AlgebraParams,
    weights: list[WeightFunction],
    degree: int = 2,
) -> list[HermiticityRow]:
    """<adag f, g> = <f, a g> on the vector Bargmann space."""
    lam = params.lam
    samples = []
    for m in range(lam):
        for d in range(degree + 1):
            c = np.zeros((lam, d + 1), dtype=complex)
            c[m, d] = 1.0
            samples.append(PolyFunction(c, None))
    rows = []
    for f in samples:
        for g in samples:
            ad_f = apply_realization(params, "vector_alpha0", "adag", f)
            a_g = apply_realization(params, "vector_alpha0", "a", g)
            rows.append(
                HermiticityRow(
                    "adag/a",
                    vector_inner_product(weights, ad_f, g),
                    vector_inner_product(weights, f, a_g),
                )
            )
    return rows


@dataclass(frozen=True)
class CommutatorRow:
    basis: str
    pair: str
    k: int
    residual: float


def check_commutators(params: AlgebraParams, basis: str, k_max: int = 10) -> list[CommutatorRow]:
    """Commutation relations as exact coefficient identities on monomials."""
    from .algebra import sga_structure_poly

    lam = params.lam
    rows = []
    if basis == "sector":
        for alpha in range(lam // 2 + 1):
            for mu in range(lam - alpha):
                for k in range(k_max + 1):
                    zk = PolyFunction(np.eye(1, k + 1, k, dtype=complex)[0], mu)

                    def ap(op, f):
                        return apply_realization(params, "sector", op, f, alpha=alpha)

                    for sgn, qop in ((1.0, "Jplus"), (-1.0, "Jminus")):
                        lhs = ap("J0", ap(qop, zk)).coeffs
                        rhs = ap(qop, ap("J0", zk)).coeffs
                        n = max(len(lhs), len(rhs))
                        lhs = np.pad(lhs, (0, n - len(lhs)))
                        rhs = np.pad(rhs, (0, n - len(rhs)))
                        expect = sgn * ap(qop, zk).coeffs
                        expect = np.pad(expect, (0, n - len(expect)))
                        scale = max(1.0, float(np.abs(lhs).max()), float(np.abs(rhs).max()))
                        rows.append(
                            CommutatorRow(
                                f"sector(mu={mu},alpha={alpha})",
                                f"[J0,{qop}]",
                                k,
                                float(np.abs(lhs - rhs - expect).max()) / scale,
                            )
                        )
                    comm = ap("Jplus", ap("Jminus", zk)).coeffs[k] - ap(
                        "Jminus", ap("Jplus", zk)
                    ).coeffs[k]
                    j0_eig = k + 0.5 * (params.beta_bar_at(mu) + params.beta_bar_at(mu + 1))
                    f_val = sga_structure_poly(params, j0_eig, mu)
                    rows.append(
                        CommutatorRow(
                            f"sector(mu={mu},alpha={alpha})",
                            "[J+,J-]",
                            k,
                            float(abs(comm - f_val) / max(1.0, abs(f_val))),
                        )
                    )
    elif basis in ("vector_alpha0", "eigenstate"):
        for m in range(lam):
            for k in range(k_max + 1):
                n = k * lam + m if basis == "eigenstate" else k
                c = np.zeros((lam, n + 1), dtype=complex)
                c[m, n] = 1.0
                f = PolyFunction(c, None)

                def ap(op, g):
                    return apply_realization(params, basis, op, g)

                lhs = ap("a", ap("adag", f)).coeffs
                rhs_p = ap("adag", ap("a", f)).coeffs
                w = max(lhs.shape[1], rhs_p.shape[1], f.coeffs.shape[1])
                comm = np.zeros((lam, w), dtype=complex)
                comm[:, : lhs.shape[1]] += lhs
                comm[:, : rhs_p.shape[1]] -= rhs_p
                expect = np.zeros((lam, w), dtype=complex)
                expect[:, : f.coeffs.shape[1]] = f.coeffs * (1.0 + params.alpha_at(m))
                rows.append(
                    CommutatorRow(
                        basis, "[a,adag]", k, float(np.abs(comm - expect).max())
                    )
                )
    else:
        raise UnsupportedOp(f"unknown basis {basis!r}")
    return rows


def intertwining_residual(
    params: AlgebraParams,
    basis: str,
    op: str,
    psi: StateVector,
    mu: int | None = None,
    alpha: int = 0,
    mu_op: int | None = None,
) -> float:
    """max |transform(op_matrix psi) - op_B transform(psi)| on coefficients."""
    lam = params.lam
    kind = {"Jplus": "Jplus", "Jminus": "Jminus", "J0": "J0", "N": "N", "a": "a", "adag": "adag", "P": "P"}[op]
    mat = build_operator(params, kind, psi.dim, mu=mu_op)
    mapped = StateVector(
        psi.dim, mat.entries @ psi.coeffs, psi.norm_sq_analytic, psi.tail_bound, False
    )
    lhs = bargmann_transform(params, mapped, basis, mu=mu, alpha=alpha)
    rhs = apply_realization(params, basis, op, bargmann_transform(params, psi, basis, mu=mu, alpha=alpha), alpha=alpha, mu_op=mu_op)
    if basis == "sector":
        n = min(len(lhs.coeffs), len(rhs.coeffs))
        a_c, b_c = lhs.coeffs, rhs.coeffs
        diff = max(
            float(np.abs(a_c[:n] - b_c[:n]).max()),
            float(np.abs(a_c[n:]).max()) if len(a_c) > n else 0.0,
        )
        return diff
    wa = lhs.coeffs.shape[1]
    wb = rhs.coeffs.shape[1]
    w = min(wa, wb)
    diff = float(np.abs(lhs.coeffs[:, :w] - rhs.coeffs[:, :w]).max())
    if wa > w:
        diff = max(diff, float(np.abs(lhs.coeffs[:, w:]).max()))
    if wb > w:
        diff = max(diff, float(np.abs(rhs.coeffs[:, w:]).max()))
    return diff
