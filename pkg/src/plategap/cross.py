"""Closed-form solution for cross reinforcements under exponential forces.

For ``D^N`` and ``f = K_alpha e^{alpha y} g(x)`` weakened by ``1 + d chi_D``
the solution is ``w = sum_m Y_m(y) sin(mx)`` with ``Y_m`` piecewise on the
three regions ``y > eps`` (1), ``|y| < eps`` (2) and ``y < -eps`` (3)::

    Y_m^i = (A_i + C_i y) cosh(my) + (B_i + D_i y) sinh(my)
            + K_alpha e^{alpha y} gamma^i_m / (m^2 - alpha^2)^2,

with ``gamma^1 = gamma^3 = gamma_m`` (arms only) and ``gamma^2 = gamma_hat_m``
(strip). The junction amplitude is ``a = K e^{alpha eps} (gamma_hat - gamma)
/ (m^2 - alpha^2)^2``; region-1 and region-3 constants are shifted from the
region-2 ones by ``a F(eps)`` and ``a e^{-2 alpha eps} F(-eps)``.

Everything carrying ``e^{alpha ell}`` is handled through the shifted constant
``K e^{alpha ell} = alpha / (C_g (1 - e^{-2 alpha ell}))``, and ``cosh(m ell)``
is divided out of numerators and denominators, so the stack stays finite for
``alpha`` up to ``1e6`` and ``m`` up to ``1e4``.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .config import PRESET, PlateConfig
from .errors import DomainError, NearResonanceError
from .forces import GSpec, IndicatorG, SineModes
from .geometry import Empty, Reinforcement, SymmetricCrossN
from .series import CROSS_TERMS, GapSeries, upsilon

RESONANCE_GUARD = 1e-8


def _check_cross(D: Reinforcement, cfg: PlateConfig) -> None:
    if not isinstance(D, (Empty, SymmetricCrossN)):
        raise DomainError("closed forms need an Empty or SymmetricCrossN reinforcement")
    D.validate(cfg)


def gamma_tilde(g: GSpec, m) -> np.ndarray:
    """Sine coefficients ``(2/pi) int_0^pi g sin(mx)``."""
    return g.sine_coefficients(m)


def gamma_m(g: GSpec, m, D: Reinforcement, cfg: PlateConfig = PRESET):
    """Sine coefficients of ``g / (1 + d chi_I)`` with ``I`` the arm intervals.

    Exact for every g-spec because the arm integrals are closed form.
    """
    _check_cross(D, cfg)
    ms = np.atleast_1d(np.asarray(m, dtype=float))
    out = gamma_tilde(g, ms)
    if isinstance(D, SymmetricCrossN) and D.mu > 0 and cfg.d > 0:
        arms = g.sine_coefficients(ms, D.arm_intervals())
        out = out - cfg.d / (1 + cfg.d) * arms
    return float(out[0]) if np.ndim(m) == 0 else out


def _gamma_hat(gt, D, cfg):
    if isinstance(D, SymmetricCrossN) and D.eps > 0:
        return gt / (1 + cfg.d)
    return None


@dataclasses.dataclass(frozen=True)
class ModeConstants:
    """Constant stack for one mode ``m`` and exponent ``alpha``.

    ``K_alpha`` and ``R_alpha`` may underflow to zero for very large
    ``alpha``; ``K_shifted = K_alpha e^{alpha ell}`` never does. ``F_eps`` and
    ``F_meps`` hold ``F_1..F_4`` at ``+eps`` and ``-eps``; ``F_plus`` and
    ``F_minus`` are ``F(eps) +- e^{-2 alpha eps} F(-eps)``. Region
    coefficients are ``(A, B, C, D)``.
    """

    m: float
    alpha: float
    eps: float
    ell: float
    C_g: float
    K_alpha: float
    K_shifted: float
    R_alpha: float
    R_over_K: float
    gamma_tilde: float
    gamma: float
    gamma_hat: float
    zeta1: float
    zeta2: float
    F_eps: tuple
    F_meps: tuple
    F_plus: tuple
    F_minus: tuple
    a: float
    G: tuple
    coef1: tuple
    coef2: tuple
    coef3: tuple

    def region(self, y: float) -> int:
        if y > self.eps:
            return 1
        if y < -self.eps:
            return 3
        return 2

    def profile(self, y, k: int = 0, region: int | None = None):
        """k-th y-derivative (0..4) of ``Y_m`` on a region, default by ``y``."""
        y = float(y)
        i = self.region(y) if region is None else region
        coef = (self.coef1, self.coef2, self.coef3)[i - 1]
        gam = self.gamma_hat if i == 2 else self.gamma
        part = (self.alpha**k * self.K_shifted * math.exp(self.alpha * (y - self.ell))
                * gam / (self.m**2 - self.alpha**2) ** 2)
        return _hom(coef, y, self.m, k) + part

    def rhs(self, y) -> float:
        """Mode right-hand side ``K e^{alpha y} gamma^i``."""
        gam = self.gamma_hat if self.region(y) == 2 else self.gamma
        return self.K_shifted * math.exp(self.alpha * (y - self.ell)) * gam

    @property
    def xi(self) -> float:
        return _xi(self)


def _hom(coef, y, m, k):
    """k-th derivative of ``(A + C y) cosh(my) + (B + D y) sinh(my)``."""
    A, B, C, D = coef
    ch, sh = math.cosh(m * y), math.sinh(m * y)
    # d^k/dy^k [y cosh] = m^k y (cosh|sinh) + k m^(k-1) (sinh|cosh)
    even = k % 2 == 0
    c0, s0 = (ch, sh) if even else (sh, ch)
    c1, s1 = (sh, ch) if even else (ch, sh)
    mk, mk1 = m**k, k * m ** (k - 1) if k else 0.0
    return A * mk * c0 + B * mk * s0 + C * (mk * y * c0 + mk1 * c1) + D * (mk * y * s0 + mk1 * s1)


def _F(m, al, e):
    ce, se = np.cosh(m * e), np.sinh(m * e)
    d2 = al**2 - m**2
    F1 = (al * (al**2 - 3 * m**2) * se + 2 * m**3 * ce) / (2 * m**3) + d2 * (m * se - al * ce) / (2 * m**2) * e
    F2 = -(al * (al**2 - 3 * m**2) * ce + 2 * m**3 * se) / (2 * m**3) - d2 * (m * ce - al * se) / (2 * m**2) * e
    F3 = d2 * (al * ce - m * se) / (2 * m**2)
    F4 = -d2 * (al * se - m * ce) / (2 * m**2)
    return np.array([F1, F2, F3, F4])


def _stack(m, al, gt, gam, gamh, Cg, eps, cfg):
    """Vectorized constant stack in shifted form. Returns a dict of arrays."""
    s, ell = cfg.sigma, cfg.ell
    m = np.asarray(m, dtype=float)
    diff = m * m - al * al
    if np.any(np.abs(diff) < RESONANCE_GUARD):
        raise NearResonanceError(f"alpha={al!r} is within the resonance guard of a mode")
    x = m * ell
    t = np.tanh(x)
    c = 2 * np.exp(-x) / (1 + np.exp(-2 * x))    # sech(m ell)
    E = math.exp(-al * ell)
    Kt = al / (Cg * -math.expm1(-2 * al * ell))
    ks = al / (2 * Cg)                      # K sinh(alpha ell)
    kc = Kt * (1 + E * E) / 2               # K cosh(alpha ell)
    z1 = gam * (s * m * m - al * al) / diff**2
    z2 = gam * ((2 - s) * m * m - al * al) / diff**2
    Fe, Fm = _F(m, al, eps), _F(m, al, -eps)
    q = math.exp(-2 * al * eps)
    Fp, Fmn = Fe + q * Fm, Fe - q * Fm
    a = Kt * math.exp(-al * (ell - eps)) * (gamh - gam) / diff**2
    mlt = (1 - s) * x * t
    # G_i / cosh(m ell)
    G1 = -a / 2 * ((1 - s) * m**2 * Fp[0] + m * (2 + mlt) * Fp[3]
                   + (1 - s) * m**2 * t * Fmn[1] + m * (2 * t + (1 - s) * x) * Fmn[2])
    G2 = a / 2 * ((1 - s) * m**3 * Fmn[1] - m**2 * ((1 + s) - mlt) * Fmn[2]
                  + (1 - s) * m**3 * t * Fp[0] - m**2 * ((1 + s) * t - (1 - s) * x) * Fp[3])
    G3 = -a / 2 * ((1 - s) * m**2 * Fmn[0] + m * (2 + mlt) * Fmn[3]
                   + (1 - s) * m**2 * t * Fp[1] + m * (2 * t + (1 - s) * x) * Fp[2])
    G4 = a / 2 * ((1 - s) * m**3 * Fp[1] - m**2 * ((1 + s) - mlt) * Fp[2]
                  + (1 - s) * m**3 * t * Fmn[0] - m**2 * ((1 + s) * t - (1 - s) * x) * Fmn[3])
    P1, P3 = kc * z1, ks * z1
    Q2, Q4 = al * ks * z2, al * kc * z2
    C2 = (c * (m * P3 + t * Q4) + m * G3 + t * G4) / (m**2 * ((3 + s) * t + (1 - s) * x * c * c))
    D2 = (c * (m * t * P1 + Q2) + m * t * G1 + G2) / (m**2 * ((3 + s) * t - (1 - s) * x * c * c))
    A2 = (D2 * m**2 * ((1 + s) * t - (1 - s) * x) - c * Q2 - G2) / ((1 - s) * m**3 * t)
    B2 = (C2 * m**2 * ((1 + s) - mlt) - c * Q4 - G4) / ((1 - s) * m**3)
    coef2 = np.array([A2, B2, C2, D2])
    ch = np.cosh(x)
    return dict(m=m, Kt=Kt, K=Kt * E, ks=ks, kc=kc, RK=(1 + E) / (1 - E), z1=z1, z2=z2,
                Fe=Fe, Fm=Fm, Fp=Fp, Fmn=Fmn, a=a, q=q,
                G=np.array([G1, G2, G3, G4]) * ch, coef2=coef2,
                coef1=coef2 + a * Fe, coef3=coef2 + a * q * Fm, t=t, x=x,
                gt=gt, gam=gam, gamh=gamh)


def _xi_from(st, al, Cg, ell):
    """Gap of ``w`` per mode from a stack dict."""
    a, Fp, Fmn, t = st["a"], st["Fp"], st["Fmn"], st["t"]
    A2, B2, C2, D2 = st["coef2"]
    m, x = st["m"], st["x"]
    inner = a * (Fmn[0] + Fp[1] * t + ell * Fp[2] + ell * t * Fmn[3]) + 2 * B2 * t + 2 * C2 * ell
    return np.cosh(x) * inner + al * st["gam"] / (Cg * (m * m - al * al) ** 2)


def _xi(mc: ModeConstants) -> float:
    A1, B1, C1, D1 = mc.coef1
    A3, B3, C3, D3 = mc.coef3
    ch, sh, ell = math.cosh(mc.m * mc.ell), math.sinh(mc.m * mc.ell), mc.ell
    return ((A1 - A3) * ch + (B1 + B3) * sh + (C1 + C3) * ell * ch + (D1 - D3) * ell * sh
            + mc.alpha * mc.gamma / (mc.C_g * (mc.m**2 - mc.alpha**2) ** 2))


def _inputs(m, alpha, g, D, cfg):
    _check_cross(D, cfg)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError("alpha must be positive")
    ms = np.atleast_1d(np.asarray(m, dtype=float))
    Cg = g.c_g()
    if not Cg > 0:
        raise DomainError("g must not vanish identically")
    gt = gamma_tilde(g, ms)
    gam = gamma_m(g, ms, D, cfg)
    gh = _gamma_hat(gt, D, cfg)
    eps = D.eps if isinstance(D, SymmetricCrossN) and gh is not None else 0.0
    gamh = gam if gh is None else gh
    return ms, Cg, gt, gam, gamh, eps


def mode_constants(m: int, alpha: float, g: GSpec, D: Reinforcement,
                   cfg: PlateConfig = PRESET) -> ModeConstants:
    """Full constant stack for one mode.

    For ``Empty`` (or a cross without strip) region 2 is absent, so
    ``gamma_hat = gamma`` and the junction amplitude ``a`` vanishes.

    Raises:
        NearResonanceError: ``|m^2 - alpha^2| < 1e-8``.
        DomainError: Invalid inputs.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    ms, Cg, gt, gam, gamh, eps = _inputs(m, alpha, g, D, cfg)
    st = _stack(ms, alpha, gt, gam, gamh, Cg, eps, cfg)

    def one(v):
        return tuple(float(u) for u in np.asarray(v)[..., 0]) if np.ndim(v) > 1 else float(np.asarray(v)[0])

    return ModeConstants(
        m=float(m), alpha=float(alpha), eps=float(eps), ell=cfg.ell, C_g=Cg,
        K_alpha=float(st["K"]), K_shifted=float(st["Kt"]),
        R_alpha=float(st["RK"] * st["K"]), R_over_K=float(st["RK"]),
        gamma_tilde=one(gt), gamma=one(gam), gamma_hat=one(gamh),
        zeta1=one(st["z1"]), zeta2=one(st["z2"]),
        F_eps=one(st["Fe"]), F_meps=one(st["Fm"]), F_plus=one(st["Fp"]), F_minus=one(st["Fmn"]),
        a=one(st["a"]), G=one(st["G"]),
        coef1=one(st["coef1"]), coef2=one(st["coef2"]), coef3=one(st["coef3"]),
    )


def mode_constants_naive(m: int, alpha: float, g: GSpec, D: Reinforcement,
                         cfg: PlateConfig = PRESET) -> dict:
    """Unshifted transcription of the stack; overflows for large arguments.

    Returns a dict with ``a``, ``G`` and the region coefficients.
    """
    ms, Cg, gt, gam, gamh, eps = _inputs(m, alpha, g, D, cfg)
    gam, gamh = float(gam[0]), float(gamh[0])
    s, ell, al = cfg.sigma, cfg.ell, alpha
    m = float(m)
    ch, sh = math.cosh(m * ell), math.sinh(m * ell)
    K = al / (2 * Cg * math.sinh(al * ell))
    Fe, Fm = _F(m, al, eps), _F(m, al, -eps)
    q = math.exp(-2 * al * eps)
    Fp, Fmn = Fe + q * Fm, Fe - q * Fm
    a = K * math.exp(al * eps) * (gamh - gam) / (m * m - al * al) ** 2
    G1 = -a / 2 * ((1 - s) * m**2 * ch * Fp[0] + m * (2 * ch + (1 - s) * m * ell * sh) * Fp[3]
                   + (1 - s) * m**2 * sh * Fmn[1] + m * (2 * sh + (1 - s) * m * ell * ch) * Fmn[2])
    G2 = a / 2 * ((1 - s) * m**3 * ch * Fmn[1] - m**2 * ((1 + s) * ch - (1 - s) * m * ell * sh) * Fmn[2]
                  + (1 - s) * m**3 * sh * Fp[0] - m**2 * ((1 + s) * sh - (1 - s) * m * ell * ch) * Fp[3])
    G3 = -a / 2 * ((1 - s) * m**2 * ch * Fmn[0] + m * (2 * ch + (1 - s) * m * ell * sh) * Fmn[3]
                   + (1 - s) * m**2 * sh * Fp[1] + m * (2 * sh + (1 - s) * m * ell * ch) * Fp[2])
    G4 = a / 2 * ((1 - s) * m**3 * ch * Fp[1] - m**2 * ((1 + s) * ch - (1 - s) * m * ell * sh) * Fp[2]
                  + (1 - s) * m**3 * sh * Fmn[0] - m**2 * ((1 + s) * sh - (1 - s) * m * ell * ch) * Fmn[3])
    z1 = gam * (s * m * m - al * al) / (m * m - al * al) ** 2
    z2 = gam * ((2 - s) * m * m - al * al) / (m * m - al * al) ** 2
    sa, ca = math.sinh(al * ell), math.cosh(al * ell)
    C2 = (m * ch * (K * z1 * sa + G3) + sh * (al * K * z2 * ca + G4)) / (m**2 * ((3 + s) * sh * ch + (1 - s) * m * ell))
    D2 = (m * sh * (K * z1 * ca + G1) + ch * (al * K * z2 * sa + G2)) / (m**2 * ((3 + s) * sh * ch - (1 - s) * m * ell))
    A2 = (D2 * m**2 * ((1 + s) * sh - (1 - s) * m * ell * ch) - al * K * z2 * sa - G2) / ((1 - s) * m**3 * sh)
    B2 = (C2 * m**2 * ((1 + s) * ch - (1 - s) * m * ell * sh) - al * K * z2 * ca - G4) / ((1 - s) * m**3 * ch)
    c2 = np.array([A2, B2, C2, D2])
    c1, c3 = c2 + a * Fe, c2 + a * q * Fm
    xi = ((c1[0] - c3[0]) * ch + (c1[1] + c3[1]) * sh + (c1[2] + c3[2]) * ell * ch
          + (c1[3] - c3[3]) * ell * sh + al * gam / (Cg * (m * m - al * al) ** 2))
    return dict(K=K, a=a, G=np.array([G1, G2, G3, G4]), coef1=c1, coef2=c2, coef3=c3,
                xi=xi, R_over_K=sa / (ca - 1))


def xi_m(m, alpha: float, g: GSpec, D: Reinforcement, cfg: PlateConfig = PRESET):
    """Gap coefficients ``w_m(ell) - w_m(-ell)`` of the exponential problem."""
    ms, Cg, gt, gam, gamh, eps = _inputs(m, alpha, g, D, cfg)
    out = _xi_from(_stack(ms, alpha, gt, gam, gamh, Cg, eps, cfg), alpha, Cg, cfg.ell)
    return float(out[0]) if np.ndim(m) == 0 else out


def beta_m(m, alpha: float, g: GSpec, D: Reinforcement, cfg: PlateConfig = PRESET):
    """Gap coefficients of the odd force ``R_alpha sinh(alpha y) g(x)``."""
    E = math.exp(-alpha * cfg.ell)
    return (1 + E) / (1 - E) * xi_m(m, alpha, g, D, cfg)


def beta_bar(m, g: GSpec, D: Reinforcement, cfg: PlateConfig = PRESET):
    """Limit coefficients ``2 gamma_m Upsilon_m / (C_g (1 - sigma))``."""
    gam = gamma_m(g, m, D, cfg)
    return 2 * gam * upsilon(m, cfg) / (g.c_g() * (1 - cfg.sigma))


def omega_bar(m, g: GSpec, D: Reinforcement, cfg: PlateConfig = PRESET):
    """First-order coefficients: ``beta_m(alpha) = beta_bar_m - omega_bar_m/alpha + o(1/alpha)``."""
    s, ell = cfg.sigma, cfg.ell
    ms = np.asarray(m, dtype=float)
    x = ms * ell
    t = np.tanh(x)
    c2 = (2 * np.exp(-x) / (1 + np.exp(-2 * x))) ** 2
    gam = gamma_m(g, m, D, cfg)
    num = (1 + s) * t + (1 - s) * x * c2
    den = (1 - s) * ms**2 * ((3 + s) * t + (1 - s) * x * c2)
    return gam / g.c_g() * num / den


def _cross_tail(M, cfg):
    return cfg.ell / (math.pi * M * (1 - cfg.sigma))


def limit_gap(g: GSpec, D: Reinforcement, cfg: PlateConfig = PRESET, M: int = CROSS_TERMS) -> GapSeries:
    """Gap series of the ``alpha -> inf`` limit force."""
    m = np.arange(1, M + 1)
    return GapSeries(beta_bar(m, g, D, cfg), _cross_tail(M, cfg), f"limit {D.label}")


def finite_alpha_gap(g: GSpec, D: Reinforcement, alpha: float, cfg: PlateConfig = PRESET,
                     M: int = CROSS_TERMS) -> GapSeries:
    """Gap series of ``R_alpha sinh(alpha y) g(x)`` for finite ``alpha``."""
    m = np.arange(1, M + 1)
    return GapSeries(beta_m(m, alpha, g, D, cfg), _cross_tail(M, cfg), f"alpha={alpha!r} {D.label}")


def w_eval(x, y, alpha: float, g: GSpec, D: Reinforcement, cfg: PlateConfig = PRESET,
           M: int = CROSS_TERMS) -> float:
    """Solution of the exponential problem at ``(x, y)``, summed over ``M`` modes."""
    if not (0 <= x <= math.pi and abs(y) <= cfg.ell):
        raise DomainError("point outside the plate")
    ms, Cg, gt, gam, gamh, eps = _inputs(np.arange(1, M + 1), alpha, g, D, cfg)
    st = _stack(ms, alpha, gt, gam, gamh, Cg, eps, cfg)
    if y > eps:
        coef, gi = st["coef1"], gam
    elif y < -eps:
        coef, gi = st["coef3"], gam
    else:
        coef, gi = st["coef2"], gamh
    A, B, C, Dc = coef
    vals = ((A + C * y) * np.cosh(ms * y) + (B + Dc * y) * np.sinh(ms * y)
            + st["Kt"] * math.exp(alpha * (y - cfg.ell)) * gi / (ms * ms - alpha * alpha) ** 2)
    return math.fsum(vals * np.sin(ms * x))


@dataclasses.dataclass(frozen=True)
class BoundaryTrace:
    """Limit force as line loads on the free edges.

    The load on ``y = +ell`` is ``top * w(x)`` and on ``y = -ell`` is
    ``bottom * w(x)``, where ``w = g / (C_g (1 + d chi_I))``. The odd part
    has ``top = -bottom = 1/2``.

    Attributes:
        x: Sample abscissae.
        weights: ``w`` at ``x``.
        top: Multiplier on the upper edge.
        bottom: Multiplier on the lower edge.
        coefficients: Exact sine coefficients of ``w`` (``gamma_m / C_g``).
    """

    x: np.ndarray
    weights: np.ndarray
    top: float
    bottom: float
    coefficients: np.ndarray

    def odd(self) -> "BoundaryTrace":
        half = 0.5 * (self.top - self.bottom)
        return dataclasses.replace(self, top=half, bottom=-half)


def limit_force_trace(g: GSpec, D: Reinforcement, cfg: PlateConfig = PRESET,
                      M: int = CROSS_TERMS, n: int = 2001) -> BoundaryTrace:
    """Top-edge trace of the limit of the exponential force on ``D``."""
    _check_cross(D, cfg)
    x = np.linspace(0.0, math.pi, n)
    w = g(x) / g.c_g()
    if isinstance(D, SymmetricCrossN) and D.mu > 0:
        iv = D.arm_intervals()
        inside = np.any((x[:, None] > iv[:, 0]) & (x[:, None] < iv[:, 1]), axis=1)
        w = np.where(inside, w / (1 + cfg.d), w)
    coef = gamma_m(g, np.arange(1, M + 1), D, cfg) / g.c_g()
    return BoundaryTrace(x, w, 1.0, 0.0, coef)


def smeared_delta_gap(z: float, eta: float, alpha: float, cfg: PlateConfig = PRESET,
                      M: int = 10_000) -> GapSeries:
    """Gap series of ``R_alpha sinh(alpha y)`` times the indicator of ``[z-eta, z+eta]``."""
    g = IndicatorG(z, eta)
    m = np.arange(1, M + 1)
    return GapSeries(beta_m(m, alpha, g, Empty(), cfg), _cross_tail(M, cfg),
                     f"smeared z={z!r} eta={eta!r} alpha={alpha!r}")


def sin_g(n: int) -> SineModes:
    """``g(x) = sin(n x)``."""
    return SineModes.single(n)
