#!/usr/bin/env python3
"""Regenerate tests/fixtures/*.json with PARI/GP (via cypari2).

Run once by hand; the test suite only reads the committed JSON.
    python3 tools/fixtures/gen_fixtures.py [outdir]
"""
import itertools
import json
import os
import sys

import cypari2

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = sys.argv[1] if len(sys.argv) > 1 else os.path.join(HERE, "..", "..", "tests", "fixtures")

gp = cypari2.Pari()
gp.allocatemem(2 * 10**9)
gp('read("%s")' % os.path.join(HERE, "oracle.gp"))

PROVENANCE = {
    "tool": "PARI/GP " + str(gp.version()),
    "generator": "tools/fixtures/gen_fixtures.py",
}


def ints(v):
    return [int(x) for x in v]


def rat(z):
    return str(gp.denominator(z) == 1 and gp.numerator(z) or z)


def powcoeffs(pol, n):
    pol = gp.Pol(pol)
    return [str(gp.polcoef(pol, i)) for i in range(n)]


def ell_exponents(cyc, ell):
    out = []
    for c in cyc:
        c = int(c)
        e = 0
        while c % ell == 0 and c > 1:
            c //= ell
            e += 1
        if e:
            out.append(e)
    return sorted(out)


def dump(name, data):
    os.makedirs(OUT, exist_ok=True)
    with open(os.path.join(OUT, name), "w") as fh:
        json.dump({"provenance": PROVENANCE, **data}, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print("wrote", name)


def logclass_entry(pol, ell):
    gp("bb = bnfinit(%s, 1)" % pol)
    ct = ints(gp("bnflog(bb, %d)[1]" % ell))
    cl = ints(gp("bb.cyc"))
    ex = ell_exponents(ct, ell)
    return {
        "field": pol,
        "ell": ell,
        "ctilde": sorted(ct),
        "ctilde_exponents": ex,
        "epsilon_tilde": max(ex) if ex else 0,
        "class_group": cl,
        "h": int(gp("bb.no")),
    }


def gen_logclass():
    entries = []
    for d in range(-200, 101):
        if d in (0, 1) or not gp.issquarefree(d):
            continue
        pol = "x^2%+d" % (-d)
        for ell in (2, 3, 5):
            entries.append(logclass_entry(pol, ell))
    others = ["x", "x^3-2", "x^3-x-1", "x^3-3*x+1", "x^4+1", "x^3+x^2-2*x+8",
              "x^4-x^3+x^2-x+1", "x^3-x^2-9*x+1", "x^4+5*x^2+5"]
    for pol in others:
        for ell in (2, 3, 5):
            entries.append(logclass_entry(pol, ell))
    dump("logclass.json", {"entries": entries})


def gen_fields():
    pols = ["x", "x^2+1", "x^2-5", "x^2+23", "x^2-2", "x^2+3", "x^3-2", "x^3-x-1",
            "x^3+x^2-2*x+8", "x^4+1", "x^3-3*x+1", "x^4-10*x^2+1", "x^3-19",
            "x^6-3*x^5+7*x^4-9*x^3+7*x^2-3*x+1",
            "x^6-2*x^5+4*x^4-18*x^3+70*x^2-128*x+109",
            "x^6+x^3+1", "x^5-2", "x^4+5*x^2+5", "x^6-3*x^4-24*x^3+97*x^2+36*x+144"]
    entries = []
    for pol in pols:
        gp("nf = nfinit(%s)" % pol)
        n = int(gp("poldegree(nf.pol)"))
        basis = [powcoeffs(b, n) for b in gp("nf.zk")]
        decs = {}
        for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 211]:
            dec = gp("idealprimedec(nf, %d)" % p)
            decs[str(p)] = sorted([[int(P.pr_get_e()), int(P.pr_get_f())] for P in dec])
        entries.append({
            "field": pol,
            "degree": n,
            "disc": str(gp("nf.disc")),
            "index": str(gp("nf.index")),
            "signature": ints(gp("nf.sign")),
            "basis": basis,
            "decomposition": decs,
        })
    dump("fields.json", {"entries": entries})


def gen_places():
    cases = [("x^2+1", [2, 3, 5]), ("x^2+23", [2, 3, 5]), ("x^2-3", [2, 3]), ("x^2+2", [2, 3]),
             ("x^3-2", [2, 3]), ("x^4+1", [2, 3, 5]), ("x^2-6", [2, 3]), ("x^3-3*x+1", [3]),
             ("x^6-3*x^5+7*x^4-9*x^3+7*x^2-3*x+1", [3]),
             ("x^6-2*x^5+4*x^4-18*x^3+70*x^2-128*x+109", [3]),
             ("x^6+x^3+1", [2, 3]), ("x^4+5*x^2+5", [5])]
    entries = []
    for pol, ells in cases:
        gp("nf = nfinit(%s)" % pol)
        for ell in ells:
            dec = gp("idealprimedec(nf, %d)" % ell)
            pl = []
            for i in range(len(dec)):
                ef = gp("bnflogef(nf, idealprimedec(nf, %d)[%d])" % (ell, i + 1))
                pl.append({"e": int(dec[i].pr_get_e()), "f": int(dec[i].pr_get_f()),
                           "e_tilde": int(ef[0]), "f_tilde": int(ef[1])})
            pl.sort(key=lambda r: (r["f"], r["e"], r["e_tilde"], r["f_tilde"]))
            entries.append({"field": pol, "ell": ell, "places": pl})
    dump("places.json", {"entries": entries})


EXTENSIONS = [
    ("x", "x^2+1", [2, 3, 5]),
    ("x", "x^2+23", [3]),
    ("x", "x^3-3*x+1", [3]),
    ("x^2+1", "x^4+1", [2, 3]),
    ("x^2-2", "x^4+1", [3]),
    ("x^2+23", "x^6-3*x^5+5*x^4-5*x^3+5*x^2-3*x+1", [3]),
    ("x^2+31", "x^6-3*x^5+7*x^4-9*x^3+7*x^2-3*x+1", [3]),
    ("x^2+211", "x^6-2*x^5+4*x^4-18*x^3+70*x^2-128*x+109", [3]),
    ("x^2+3", "x^6+x^3+1", [2, 3]),
]


def gen_extensions():
    entries = []
    for fK, fL, ells in EXTENSIONS:
        emb = gp("nfisincl(%s, %s)" % (fK, fL))
        if emb == 0:
            continue
        nL = int(gp("poldegree(%s)" % fL))
        nK = int(gp("poldegree(%s)" % fK))
        e = {"base": fK, "ext": fL, "degree": nL // nK, "ells": ells,
             "embedding": powcoeffs(emb[0], nL)}
        # logarithmic ramification over the primes above ell (PARI normalisation)
        et = {}
        gp("nK = nfinit(%s); nL = nfinit(%s); em = %s" % (fK, fL, str(emb[0])))
        for ell in ells:
            rows = []
            decK = gp("idealprimedec(nK, %d)" % ell)
            for i in range(len(decK)):
                gp("P = idealprimedec(nK, %d)[%d]" % (ell, i + 1))
                eP = int(gp("bnflogef(nK, P)[1]"))
                over = []
                for j in range(int(gp("#idealprimedec(nL, %d)" % ell))):
                    gp("Q = idealprimedec(nL, %d)[%d]" % (ell, j + 1))
                    if int(gp("orc_over(nK, nL, em, P, Q)")):
                        eQ = int(gp("bnflogef(nL, Q)[1]"))
                        over.append(str(gp("%d / %d" % (eQ, eP))))
                rows.append({"e": int(decK[i].pr_get_e()), "f": int(decK[i].pr_get_f()),
                             "e_tilde_over": sorted(over)})
            et[str(ell)] = rows
        e["e_tilde"] = et
        entries.append(e)
    dump("extensions.json", {"entries": entries})


def kernel_invariants(orders, images, dl, ell):
    """Invariants of ker(G -> H) for G = prod Z/orders (generators as given)."""
    mods = [int(d) for d in dl]
    kern = []
    for a in itertools.product(*[range(o) for o in orders]):
        img = [sum(a[k] * images[k][i] for k in range(len(orders))) % mods[i] if mods[i] else 0
               for i in range(len(mods))]
        if all(x == 0 for x in img):
            kern.append(a)
    # |K[ell^j]| determines the invariants
    def order_of(a):
        m = 1
        while any((m * a[k]) % orders[k] for k in range(len(orders))):
            m *= ell
        return m
    ords = [order_of(a) for a in kern]
    counts = []
    j = 0
    while True:
        c = sum(1 for o in ords if o <= ell ** j)
        counts.append(c)
        if c == len(kern):
            break
        j += 1
    # number of cyclic factors of exponent >= j is log_ell(counts[j]/counts[j-1])
    inv = []
    import math
    rk = [round(math.log(counts[j] // counts[j - 1], ell)) for j in range(1, len(counts))]
    for j in range(len(rk)):
        ge = rk[j] - (rk[j + 1] if j + 1 < len(rk) else 0)
        inv += [ell ** (j + 1)] * ge
    return sorted(inv)


CAPITULATION = [
    ("x^2+31", "x^6-3*x^5+7*x^4-9*x^3+7*x^2-3*x+1", 3),
    ("x^2+211", "x^6-2*x^5+4*x^4-18*x^3+70*x^2-128*x+109", 3),
    ("x^2+379", "x^6-3*x^4-24*x^3+97*x^2+36*x+144", 3),
    ("x^2+31", "x^6-3*x^5+21*x^4-35*x^3+213*x^2-249*x+971", 3),
    ("x^2+23", "x^6-3*x^5+5*x^4-5*x^3+5*x^2-3*x+1", 3),
    ("x^2+31", "x^2+31", 3),
]


def gen_capitulation():
    entries = []
    for fK, fL, ell in CAPITULATION:
        r = gp("orc_capitulate(%s, %s, %d, 80, 40)" % (fK, fL, ell))
        cycK, cycL, orders, imgs, DL, logunr, emb = r
        nL = int(gp("poldegree(%s)" % fL))
        dl = [int(gp("gcd(%s, %d^40)" % (DL[i, i], ell))) for i in range(int(gp("matsize(%s)[1]" % DL)))]
        orders = ints(orders)
        images = [ints(v) for v in imgs]
        verdicts = ["capitulates" if all(x == 0 for x in im) else "survives" for im in images]
        # log-unramified over all places: ẽ ratio 1 at ell, e ratio 1 elsewhere
        gp("nK = nfinit(%s); nL = nfinit(%s); em = %s" % (fK, fL, str(emb)))
        bad = int(gp("""my(c = 0, ps = factor(abs(nL.disc) * %d)[,1]);
          for (i = 1, #ps, my(p = ps[i]);
            foreach(idealprimedec(nK, p), P,
              foreach(idealprimedec(nL, p), Q,
                if (orc_over(nK, nL, em, P, Q),
                  my(r = if (p == %d, bnflogef(nL, Q)[1] / bnflogef(nK, P)[1], Q.e / P.e));
                  if (r != 1, c++))))); c""" % (ell, ell)))
        entries.append({
            "base": fK, "ext": fL, "ell": ell,
            "embedding": powcoeffs(emb, nL),
            "ctilde_base": ints(cycK), "ctilde_ext": ints(cycL),
            "torsion_orders": orders,
            "verdicts": verdicts,
            "kernel": kernel_invariants(orders, images, dl, ell) if orders else [],
            "log_unramified": bad == 0,
        })
    dump("capitulation.json", {"entries": entries})


if __name__ == "__main__":
    gen_fields()
    gen_places()
    gen_extensions()
    gen_capitulation()
    gen_logclass()
