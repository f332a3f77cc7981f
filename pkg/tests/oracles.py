"""High-precision reference implementations (mpmath) used only by the tests.

These evaluate the eigenfunctions directly from their hyperbolic-trig form,
with none of the overflow-avoiding rewrites used in the package.
"""
import mpmath as mp

mp.mp.dps = 50
S3 = mp.sqrt(3)


def even_relation(l):
    return mp.cos(2 * l) + 2 * mp.cos(l) * mp.cosh(S3 * l) - 3


def even_root(m):
    with mp.workdps(mp.mp.dps + int(m)):
        return +mp.findroot(lambda l: even_relation(l) / mp.cosh(S3 * l), (m + mp.mpf(1) / 2) * mp.pi)


def psi_c(l, x):
    a = S3 * l / 2
    K = mp.cos(l / 2) * mp.cosh(a) / (S3 * mp.sin(l) - mp.sinh(S3 * l))
    A = -2 * S3 * mp.cos(l) * mp.tan(l / 2) - 2 * (mp.cos(l) - 2) * mp.tanh(a)
    B = (-3 * mp.tan(l / 2) + mp.sin(l / 2) ** 2 * mp.tan(l / 2) - mp.mpf(3) / 2 * mp.sin(l)
         + 2 * S3 * mp.cos(l) * mp.tanh(a))
    return mp.cos(l * x) + K * (A * mp.cos(l * x / 2) * mp.cosh(a * x) + B * mp.sin(l * x / 2) * mp.sinh(a * x))


def psi_s(l, x):
    a = S3 * l / 2
    return mp.sin(l * x) - 4 / mp.sinh(S3 * l) * (
        mp.cos(l / 2) ** 3 * mp.sinh(a) * mp.sin(l * x / 2) * mp.cosh(a * x)
        + mp.sin(l / 2) ** 3 * mp.cosh(a) * mp.cos(l * x / 2) * mp.sinh(a * x))


def phi_c(l, x):
    a = S3 * l / 2
    P = 2 * mp.sin(l) * (mp.cos(l / 2) * mp.sinh(a) - S3 * mp.sin(l / 2) * mp.cosh(a)) / (mp.cos(l) - mp.cosh(S3 * l))
    Q = (mp.csc(l / 2) * mp.sech(a) * mp.sin(l) * (S3 * mp.cot(l / 2) * mp.tanh(a) + 1)
         / (1 + mp.cot(l / 2) ** 2 * mp.tanh(a) ** 2))
    return mp.cos(l * x) + P * mp.sin(l * x / 2) * mp.sinh(a * x) + Q * mp.cos(l * x / 2) * mp.cosh(a * x)


def phi_s(l, x):
    a = S3 * l / 2
    R = 2 * mp.cos(l) * (mp.cos(l / 2) * mp.cosh(a) - S3 * mp.sin(l / 2) * mp.sinh(a)) / (mp.cos(l) + mp.cosh(S3 * l))
    S = (mp.cos(l) * mp.csch(a) * (mp.sin(l / 2) + S3 * mp.cos(l / 2) * mp.coth(a))
         / (mp.sin(l / 2) ** 2 + mp.cos(l / 2) ** 2 * mp.coth(a) ** 2))
    return mp.sin(l * x) + R * mp.sin(l * x / 2) * mp.cosh(a * x) - S * mp.cos(l * x / 2) * mp.sinh(a * x)


FUNCS = {("trial", "even"): psi_c, ("trial", "odd"): psi_s,
         ("test", "even"): phi_c, ("test", "odd"): phi_s}


def value(kind, parity, lam, x):
    return FUNCS[(kind, parity)](mp.mpf(lam), mp.mpf(x))


def integral(f, g, lam_max):
    """``int_{-1}^{1} f g`` with one breakpoint per half-wavelength."""
    n = max(8, int(2 * float(lam_max) / float(mp.pi)) + 1)
    pts = mp.linspace(-1, 1, n + 1)
    return mp.quad(lambda x: f(x) * g(x), pts)


def constant(parity, lam):
    l = mp.mpf(lam)
    tr, te = (psi_c, phi_c) if parity == "even" else (psi_s, phi_s)
    return integral(lambda x: tr(l, x), lambda x: te(l, x), l)


def beta(parity, lam_n, lam_m):
    """``<psi_n'', phi_m>`` by numerical differentiation and quadrature."""
    ln, lm = mp.mpf(lam_n), mp.mpf(lam_m)
    tr, te = (psi_c, phi_c) if parity == "even" else (psi_s, phi_s)
    return integral(lambda x: mp.diff(lambda y: tr(ln, y), x, 2), lambda x: te(lm, x), max(ln, lm))
