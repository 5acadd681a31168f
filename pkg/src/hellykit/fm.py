"""Fourier-Motzkin elimination over exact rationals.

A row ``(coeffs, const, strict)`` stands for ``coeffs . t + const > 0`` when
``strict`` and ``>= 0`` otherwise.
"""

from fractions import Fraction


def _normalize(coeffs, const, strict):
    scale = next((abs(c) for c in coeffs if c != 0), None)
    if scale is None:
        scale = abs(const) if const != 0 else Fraction(1)
    return tuple(Fraction(c) / scale for c in coeffs), Fraction(const) / scale, strict


def fm_feasible(rows, nvars):
    """Decide whether the system of (strict) linear inequalities has a solution."""
    system = {}
    for coeffs, const, strict in rows:
        if len(coeffs) != nvars:
            raise ValueError("row length does not match variable count")
        c, k, s = _normalize(coeffs, const, strict)
        system[(c, k)] = system.get((c, k), False) or s
    for j in range(nvars):
        pos, neg, rest = [], [], {}
        for (c, k), s in system.items():
            if c[j] > 0:
                pos.append((c, k, s))
            elif c[j] < 0:
                neg.append((c, k, s))
            else:
                rest[(c, k)] = s
        for cp, kp, sp in pos:
            for cn, kn, sn in neg:
                ap, an = cp[j], -cn[j]
                c = tuple(a / ap + b / an for a, b in zip(cp, cn))
                k = kp / ap + kn / an
                c, k, s = _normalize(c, k, sp or sn)
                rest[(c, k)] = rest.get((c, k), False) or s
        system = rest
    for (c, k), s in system.items():
        if s and not k > 0:
            return False
        if not s and k < 0:
            return False
    return True
