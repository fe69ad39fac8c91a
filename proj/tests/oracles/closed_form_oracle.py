"""High-precision reference values for the unit and acceptance tests.

Evaluates the optimal-velocity function, its derivatives (by Richardson-
extrapolated central differences, not the closed forms used in the library),
the long-wave/MKdV coefficients and kink amplitude with mpmath at 50 digits.
Run with `python3 tests/oracles/closed_form_oracle.py`; the printed values are
frozen into the C++ tests.
"""
import mpmath as mp

mp.mp.dps = 50


def ov(h, v_max=4, h_c=7):
    return mp.mpf(v_max) / 2 * (mp.tanh(h - h_c) + mp.tanh(h_c))


def fd_derivative(f, x, order, step=mp.mpf("1e-3")):
    def central(hh):
        if order == 1:
            return (f(x + hh) - f(x - hh)) / (2 * hh)
        if order == 2:
            return (f(x + hh) - 2 * f(x) + f(x - hh)) / hh**2
        return (f(x + 2 * hh) - 2 * f(x + hh) + 2 * f(x - hh) - f(x - 2 * hh)) / (2 * hh**3)

    # two Richardson levels for an O(h^2) stencil
    d1, d2, d3 = central(step), central(step / 2), central(step / 4)
    r1 = (4 * d2 - d1) / 3
    r2 = (4 * d3 - d2) / 3
    return (16 * r2 - r1) / 15


def mkdv(p, q, lam1, lam2, a, gate_open=True, v_max=4, h_c=7, eval_at_critical=True):
    v1 = fd_derivative(lambda h: ov(h, v_max, h_c), mp.mpf(h_c), 1)
    v3 = fd_derivative(lambda h: ov(h, v_max, h_c), mp.mpf(h_c), 3)
    qq = q if gate_open else 0
    slope = p * v1 + qq * v1
    slope3 = p * v3 + qq * v3
    lam = mp.mpf(lam1) + lam2
    a_c = 2 * slope - 2 * lam
    A = a_c if eval_at_critical else mp.mpf(a)
    m1 = (A + 3 * lam) * slope / (6 * A)
    m2 = -slope3 / 6
    m3 = slope / 2
    m4 = 4 * (2 * slope - lam) * (A + 3 * lam) / (24 * A**2) * slope - (A + 4 * lam) / (24 * A) * slope
    m5 = (2 * (2 * slope - lam) - A) / (12 * A) * slope3
    den = 2 * m2 * m4 - 3 * m1 * m5
    B = 5 * m2 * m3 / den
    eps2 = a_c / a - 1
    amp = mp.sqrt(eps2 * 5 * m1 * m3 / den) if eps2 > 0 else mp.mpf(0)
    return dict(v1=v1, v3=v3, a_c=a_c, m1=m1, m2=m2, m3=m3, m4=m4, m5=m5, B=B, eps2=eps2, A=amp)


def show(label, value):
    print(f"{label:40s} {mp.nstr(value, 17)}")


if __name__ == "__main__":
    show("V(7)", ov(7))
    show("V(6.9)", ov(mp.mpf("6.9")))
    show("accel(h=6.9, v=2tanh7, a=2.85)", mp.mpf("2.85") * (ov(mp.mpf("6.9")) - 2 * mp.tanh(7)))
    show("V'(7) fd", fd_derivative(ov, mp.mpf(7), 1))
    show("V''(7) fd", fd_derivative(ov, mp.mpf(7), 2))
    show("V'''(7) fd", fd_derivative(ov, mp.mpf(7), 3))
    for h in ("5.5", "8.25"):
        for k in (1, 2, 3):
            show(f"V^({k})({h}) fd", fd_derivative(ov, mp.mpf(h), k))

    print("-- uncoupled context: p=1 q=0 lambda1=0.2 lambda2=0 a=2.85")
    r = mkdv(1, 0, mp.mpf("0.2"), 0, mp.mpf("2.85"))
    for k, v in r.items():
        show(k, v)
    show("2A", 2 * r["A"])

    print("-- uncoupled context, coefficients at raw a=2.85")
    r = mkdv(1, 0, mp.mpf("0.2"), 0, mp.mpf("2.85"), eval_at_critical=False)
    for k in ("m1", "m4", "m5", "B", "A"):
        show(k, r[k])

    print("-- coupled context: p=0.8 q=0.2 lambda1=0.16 lambda2=0.04 a=2.2 gate open")
    r = mkdv(mp.mpf("0.8"), mp.mpf("0.2"), mp.mpf("0.16"), mp.mpf("0.04"), mp.mpf("2.2"))
    for k, v in r.items():
        show(k, v)
    print("-- same, gate closed")
    r = mkdv(mp.mpf("0.8"), mp.mpf("0.2"), mp.mpf("0.16"), mp.mpf("0.04"), mp.mpf("2.2"), gate_open=False)
    for k, v in r.items():
        show(k, v)
