"""Regenerate crates/core/tests/fixtures/reference.json with mpmath.

Every value here is computed independently of the Rust code, by direct
high-precision summation or quadrature, and frozen into the fixture file.
"""
import json
from mpmath import mp, mpf, exp, sqrt, pi, sinh, cosh, tanh, quad, cos, log, atan, nstr

mp.dps = 60


def f(x):
    return float(x)


def dd(x):
    hi = float(x)
    return [hi, float(x - hi)]


def theta(kind, t, q, terms=400):
    t, q = mpf(t), mpf(q)
    if kind == 3:
        return 1 + 2 * sum(q ** (k * k) * cos(2 * k * t) for k in range(1, terms))
    if kind == 4:
        return 1 + 2 * sum((-1) ** k * q ** (k * k) * cos(2 * k * t) for k in range(1, terms))
    if kind == 2:
        return 2 * sum(q ** ((k + mpf(1) / 2) ** 2) * cos((2 * k + 1) * t) for k in range(0, terms))
    if kind == 1:
        from mpmath import sin
        return 2 * sum((-1) ** k * q ** ((k + mpf(1) / 2) ** 2) * sin((2 * k + 1) * t) for k in range(0, terms))


def theta_modular(kind, t, q, terms=60):
    # Poisson-transformed lattice sums; positive-term for theta3/theta4.
    t, L = mpf(t), -log(mpf(q))
    pre = sqrt(pi / L)
    if kind == 3:
        return pre * sum(exp(-(t - n * pi) ** 2 / L) for n in range(-terms, terms + 1))
    if kind == 4:
        return pre * sum(exp(-(t + pi / 2 - n * pi) ** 2 / L) for n in range(-terms, terms + 1))
    if kind == 2:
        return pre * sum((-1) ** n * exp(-(t - n * pi) ** 2 / L) for n in range(-terms, terms + 1))
    if kind == 1:
        return -pre * sum((-1) ** n * exp(-(t + pi / 2 - n * pi) ** 2 / L) for n in range(-terms, terms + 1))


out = {}

thetas = []
for kind in (1, 2, 3, 4):
    for t in (0.0, 0.3, 1.1, f(pi / 2), 2.5, f(pi)):
        for q in (0.05, 0.2, 0.3, 0.5, 0.8):
            thetas.append({"kind": kind, "t": t, "q": q, "value": f(theta(kind, t, q))})
        for q in (0.9, 0.99, f(exp(mpf(-1) / 100))):
            thetas.append({"kind": kind, "t": t, "q": q, "value": f(theta_modular(kind, t, q))})
out["theta"] = thetas

table = []
for s in (0.2, 0.4, 0.6, 1.0, 2.0, 3.0, 4.0, 5.0):
    s_ = mpf(s)
    q = exp(-1 / (4 * s_ * s_))
    a_g = s_ * sqrt(pi) * theta_modular(3, pi / 2, q, 200)
    b_g = s_ * sqrt(pi) * theta_modular(3, 0, q, 200)
    a_l = s_ ** 2 * pi ** 2 / sinh(2 * s_ * pi)
    b_l = a_l * cosh(2 * s_ * pi)
    p = q * q
    na_g = s_ * sqrt(pi) * theta_modular(3, pi / 2, q, 200) / theta_modular(3, pi / 2, p, 200) ** 2
    nb_g = s_ * sqrt(pi) * theta_modular(3, 0, q, 200) / theta_modular(3, 0, p, 200) ** 2
    na_l = sinh(s_ * pi) ** 2 / sinh(2 * s_ * pi)
    nb_l = na_l * (2 - 1 / cosh(s_ * pi) ** 2)
    table.append({
        "sigma": s,
        "a_g": f(a_g), "b_g": f(b_g), "ratio_g": f(b_g / a_g),
        "a_l": f(a_l), "b_l": f(b_l), "ratio_l": f(b_l / a_l),
        "nod_a_g": f(na_g), "nod_b_g": f(nb_g), "nod_a_l": f(na_l), "nod_b_l": f(nb_l),
        "nod_a_g_minus_half": f(na_g - mpf(1) / 2), "nod_b_g_minus_one": f(nb_g - 1),
    })
out["riesz"] = table


def c_sigma(s):
    return sum((4 * r + 1) * exp(-(2 * r + mpf(1) / 2) ** 2 / (2 * s * s)) for r in range(-400, 400))


def d_gauss(s, k):
    k = abs(k)
    return sum((-1) ** r * exp((k * k - (r + mpf(1) / 2) ** 2) / (2 * s * s)) for r in range(k, k + 800)) / c_sigma(s)


def d_lorentz(s, k):
    return (-1) ** k * sinh(s * pi) / (s * pi ** 2) * quad(lambda t: cos(k * t) / cosh(s * t), [0, pi])


gauss = []
for s in (0.5, 1.0, 2.0, 3.0):
    s_ = mpf(s)
    ks = [0, 1, 2, 3, 5, 10, 20, 40]
    gauss.append({"sigma": s, "c": dd(c_sigma(s_)), "k": ks, "d": [dd(d_gauss(s_, k)) for k in ks]})
out["gauss_nod"] = gauss

lor = []
for s in (0.5, 1.0, 2.0, 3.0):
    s_ = mpf(s)
    ks = [0, 1, 2, 3, 5, 10, 20, 30, 40]
    lor.append({"sigma": s, "k": ks, "d": [f(d_lorentz(s_, k)) for k in ks]})
out["lorentz_nod"] = lor


def nod_residuals(fam, s, kmax, ms):
    s_ = mpf(s)
    if fam == "gauss":
        d = {k: d_gauss(s_, k) for k in range(0, kmax + 1)}
        phi = lambda x: exp(-x * x / (2 * s_ * s_))
    else:
        d = {k: d_lorentz(s_, k) for k in range(0, kmax + 1)}
        phi = lambda x: s_ * s_ / (s_ * s_ + x * x)
    res = []
    for m in ms:
        v = sum(d[abs(k)] * phi(mpf(m - k)) for k in range(-kmax, kmax + 1))
        res.append(f(v - (1 if m == 0 else 0)))
    return res


resid = []
for fam in ("gauss", "lorentz"):
    for s in (0.5, 1.0, 2.0, 3.0):
        ms = list(range(0, 11))
        r = nod_residuals(fam, s, 40, ms)
        resid.append({"family": fam, "sigma": s, "kmax": 40, "m": ms, "residual": r})
out["nod_residual_exact"] = resid


def phi_l(s, w):
    w = w % (2 * pi)
    return s * pi * cosh(s * (w - pi)) / sinh(s * pi)


def phi_g(s, t):
    return sum(exp(-k * k / (2 * s * s)) * cos(k * t) for k in range(-200, 201))


mask = []
for fam in ("gauss", "lorentz"):
    s = mpf(1)
    kmax = 30
    d = {k: (d_gauss(s, k) if fam == "gauss" else d_lorentz(s, k)) for k in range(0, kmax + 1)}
    ts = [0.5, 1.5, 2.5] + [f(2 * pi * (j + mpf(1) / 2) / 50) for j in range(50)]
    vals = []
    for t in ts:
        D = d[0] + 2 * sum(d[k] * cos(k * t) for k in range(1, kmax + 1))
        P = phi_g(s, t) if fam == "gauss" else phi_l(s, mpf(t))
        vals.append(f(D * P - 1))
    mask.append({"family": fam, "sigma": 1.0, "kmax": kmax, "t": ts, "residual": vals})
out["mask_duality_exact"] = mask


def sinc_distance(s):
    x = s * pi
    i1 = (1 - tanh(x) / (2 * x)) * tanh(x)
    e = exp(-2 * x)
    i2 = (1 - e) * (1 + log((1 + e) / 2) / (2 * x))
    return i1 - 2 * i2 + 1


def sinc_distance_quad(s):
    g = lambda w: (s * sqrt(pi / 2) * exp(-s * abs(w)) / phi_l(s, w) - (1 / sqrt(2 * pi) if abs(w) <= pi else 0)) ** 2
    return quad(g, [pi * j for j in range(-40, 41)])


out["sinc_distance"] = [
    {"sigma": s, "closed_form": f(sinc_distance(mpf(s))), "quadrature": f(sinc_distance_quad(mpf(s)))}
    for s in (0.5, 1.0, 2.0, 5.0)
]

# Lorentz nod function at t=0.5, sigma=2 by frequency-domain inversion.
s = mpf(2)
nod_freq = s * quad(lambda w: exp(-s * w) * cos(w / 2) / phi_l(s, w), [pi * j for j in range(0, 41)])
out["lorentz_nod_freq"] = {"sigma": 2.0, "t": 0.5, "value": f(nod_freq)}

out["misc"] = {
    "int_sech_0_pi": f(2 * atan(tanh(pi / 2))),
    "nod_l1_pi": f(sinh(pi) ** 2 / sinh(2 * pi)),
    "nod_b_l1": f(sinh(pi) ** 2 / sinh(2 * pi) * (2 - 1 / cosh(pi) ** 2)),
    "exp_dd": [[x, dd(exp(mpf(x)))] for x in (-80.25, -3.5, -0.1, 0.0, 0.7, 12.3, 41.0)],
    "pi_dd": dd(pi),
}

with open("crates/core/tests/fixtures/reference.json", "w") as fh:
    json.dump(out, fh, indent=1)
print("ok")
