#!/usr/bin/env python3
"""Regenerate the bundled newform fixtures with PARI/GP (via cypari2).

    pip install cypari2
    python3 tools/gen_fixtures.py crates/core/fixtures

Each fixture holds a_f(1..n) of one Hecke eigenform in S_{2k+1}(Gamma_0(D), (-D/.)).
Quadratic coefficient fields are written exactly as u + v*sqrt(-d0); larger fields are
written as one complex embedding, selected by matching the leading coefficients below.
"""
import json
import os
import sys

import cypari2
import mpmath

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)
pari("default(realprecision, 60)")
mpmath.mp.dps = 60

DIGITS = 40


def dec(x, scale):
    v = mpmath.mpf(str(x).replace(" ", ""))
    if abs(v) < mpmath.mpf(10) ** (-DIGITS) * scale:
        return "0"
    return mpmath.nstr(v, DIGITS, min_fixed=-5, max_fixed=25)


def frac(q):
    q = pari(q)
    return [str(pari.numerator(q)), str(pari.denominator(q))]


def exact_fixture(D, kappa, char, nmax, label, d0):
    pari(f"mf=mfinit([{D},{2*kappa+1},{char}],0); L=mfeigenbasis(mf)")
    fields = pari("mffields(mf)")
    idx = [i for i, P in enumerate(fields) if pari.poldegree(P) == 2]
    assert len(idx) == 1, fields
    P = fields[idx[0]]
    assert str(P) == f"y^2 + {d0}", P
    pari(f"F=L[{idx[0]+1}]; V=mfcoefs(F,{nmax})")
    coeffs = []
    for n in range(1, nmax + 1):
        c = pari(f"lift(V[{n+1}])")
        u = pari.polcoef(c, 0, "y")
        v = pari.polcoef(c, 1, "y")
        coeffs.append({"u": frac(u), "v": frac(v)})
    return {
        "label": label,
        "D": D,
        "weight": 2 * kappa + 1,
        "kappa": kappa,
        "character": f"kronecker(-{D})",
        "embedding": None,
        "exact_generator": d0,
        "coefficients": coeffs,
        "n_start": 1,
    }


def embedded_fixture(D, kappa, char, nmax, label, degree, pick):
    pari(f"mf=mfinit([{D},{2*kappa+1},{char}],0); L=mfeigenbasis(mf)")
    fields = pari("mffields(mf)")
    idx = [i for i, P in enumerate(fields) if pari.poldegree(P) == degree]
    assert len(idx) == 1, fields
    pari(f"F=L[{idx[0]+1}]; E=mfembed(mf,F); W=mfembed(E, mfcoefs(F,{nmax}))")
    count = int(pari("#W"))
    chosen = None
    for j in range(1, count + 1):
        lead = [complex(float(pari(f"real(W[{j}][{n+1}])")), float(pari(f"imag(W[{j}][{n+1}])")))
                for n in (2, 3, 5)]
        if pick(lead):
            assert chosen is None, "embedding choice is ambiguous"
            chosen = j
    assert chosen is not None
    coeffs = []
    for n in range(1, nmax + 1):
        scale = mpmath.mpf(n) ** kappa
        re = dec(pari(f"real(W[{chosen}][{n+1}])"), scale)
        im = dec(pari(f"imag(W[{chosen}][{n+1}])"), scale)
        coeffs.append([re, im])
    a2 = coeffs[1][0]
    return {
        "label": label,
        "D": D,
        "weight": 2 * kappa + 1,
        "kappa": kappa,
        "character": f"kronecker(-{D})",
        "embedding": f"complex embedding {chosen} of {count} (PARI mfembed order), a(2) = {a2[:12]}...",
        "exact_generator": None,
        "coefficients": coeffs,
        "n_start": 1,
    }


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "crates/core/fixtures"
    os.makedirs(out, exist_ok=True)
    jobs = [
        ("d3_k5.json", lambda: exact_fixture(3, 5, "Mod(2,3)", 400, "3.11.quadratic.a", 5)),
        ("d15_k5.json", lambda: embedded_fixture(
            15, 5, -15, 1000, "15.11.quadratic.deg16", 16,
            lambda a: abs(a[0] - 50.905) < 1e-3 and abs(a[1] - complex(190.983, 150.247)) < 1e-3)),
        ("d23_k5.json", lambda: embedded_fixture(
            23, 5, -23, 1200, "23.11.quadratic.deg16", 16,
            lambda a: abs(a[0].real - 58.1024) < 1e-3 and a[2].imag > 0)),
    ]
    for name, job in jobs:
        data = job()
        coeffs = data.pop("coefficients")
        head = json.dumps(data, indent=2)[:-2]
        body = ",\n".join("    " + json.dumps(c, separators=(",", ":")) for c in coeffs)
        with open(os.path.join(out, name), "w") as fh:
            fh.write(head + ',\n  "coefficients": [\n' + body + "\n  ]\n}\n")
        print(name, data["embedding"])


if __name__ == "__main__":
    main()
