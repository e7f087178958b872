"""Regenerate fields.json with PARI/GP (via cypari2).

For each field a generator w is chosen by the Chinese remainder theorem so
that every prime above the residue characteristic is (p, w - i) for a
distinct shift i and w - i is a uniformizer there. Class numbers and unit
groups come from bnfinit and are GRH-conditional. Units and embedding data
are written as power-basis coordinates in w.

    pip install cypari2 cysignals
    python3 generate_fields.py
"""
import json
import pathlib
import re
import sys

import cypari2

gp = cypari2.Pari()
gp.allocatemem(4 * 10**9)


def find_generator(p):
    gp(f"pd = idealprimedec(bnf, {p}); np = #pd;")
    gp(f"unif = vector(np, i, my(u = pd[i].gen[2]); if(nfeltval(bnf, u, pd[i]) == 1, u, nfeltadd(bnf, u, {p})));")
    gp("fa = matrix(np, 2, i, j, if(j == 1, pd[i], 2));")
    for trial in range(200):
        gp(f"targ = vector(np, i, nfeltadd(bnf, i - 1, nfeltmul(bnf, unif[i], {1 + trial % 7})));")
        gp("w0 = idealchinese(bnf, fa, targ);")
        if trial == 0:
            gp("w0 = nfeltreduce(bnf, w0, idealfactorback(bnf, fa));")
        else:
            gp(f"w0 = nfeltadd(bnf, w0, nfeltmul(bnf, {trial}, idealhnf(bnf, idealfactorback(bnf, fa))[, {1 + trial % 20}]));")
        gp("wpol = nfbasistoalg(bnf, w0); f = charpoly(wpol);")
        if int(gp("issquarefree(f)")) and all(
            int(gp(f"nfeltval(bnf, nfeltadd(bnf, w0, -{i}), pd[{i + 1}])")) == 1
            for i in range(int(gp("np")))
        ):
            return
    sys.exit("no generator found")


def coords(elem, n):
    return [str(c) for c in gp(f"Vecrev(lift(subst(lift({elem}), x, rev)), {n})")]


def build(label, setup, p, embeds):
    gp(setup)
    gp("bnf = bnfinit(P, 1);")
    find_generator(p)
    gp("rev = modreverse(wpol);")
    n = int(gp("poldegree(f)"))
    units = [coords("bnf.tu[2]", n)] + [coords(f"bnf.fu[{i + 1}]", n) for i in range(int(gp("#bnf.fu")))]
    primes = [{"p": p, "shift": str(i), "e": int(gp(f"pd[{i + 1}].e"))} for i in range(int(gp("np")))]
    return {
        "label": label,
        "poly": [str(c) for c in gp("Vecrev(f)")],
        "disc": str(gp("nfdisc([f, [2, 3, 5]])")),
        "h": int(gp("bnf.no")),
        "h_source": "PARI/GP 2.x bnfinit (GRH-conditional class group and units)",
        "roots_of_unity": int(gp("bnf.tu[1]")),
        "units": units,
        "units_complete": True,
        "embeddings": {k: coords(v, n) for k, v in embeds.items()},
        "primes": primes,
        "conductor": {"prime_indices": list(range(len(primes))), "exponent": 2},
    }


def sextic():
    gp("f = y^6 + y^4 + 7*y^2 + 3; nf = nfinit(f);")
    for r in gp("nfroots(nf, x^2 + 3)"):
        s = gp(f"Mod(lift({r}), f)")
        c = gp(f"Mod(y, f) * {s} + 1")
        if gp(f"{c}^3") == gp("Mod(10, f)"):
            break
    vec = lambda e: [str(t) for t in gp(f"Vecrev(lift({e}), 6)")]
    return {
        "label": "Q(sqrt(-3), 10^(1/3))",
        "poly": ["3", "0", "7", "0", "1", "0", "1"],
        "disc": str(gp("nfdisc(f)")),
        "h": int(gp("bnfinit(f).no")),
        "h_source": "PARI/GP bnfinit; class number 1 (GRH-conditional)",
        "roots_of_unity": 6,
        "units": [
            ["-1", "0", "0", "0", "0", "0"],
            vec("Mod(1/4*y^4 - 1/2*y^2 + 3/2*y - 1/4, f)"),
            vec("Mod(1/4*y^4 - 1/2*y^3 + y^2 + 1/4, f)"),
        ],
        "units_complete": False,
        "embeddings": {"sqrt(-3)": vec(s), "10^(1/3)": vec(c)},
        "primes": [{"p": 3, "shift": "1", "e": 2}, {"p": 3, "shift": "2", "e": 2}, {"p": 3, "shift": "0", "e": 2}],
        "conductor": {"prime_indices": [0, 1, 2], "exponent": 1},
    }


fields = []
for m in [2, 3, 6, 12, 24, 48]:
    setup = (f"T = rnfequation(nfinit(y^4 + y^3 + y^2 + y + 1), x^5 - {m}, 1);"
             "P = T[1]; zz = T[2]; aa = Mod(x, P) - T[3] * zz;")
    fields.append(build(f"Q(zeta5, {m}^(1/5))", setup, 5, {"zeta5": "zz", f"{m}^(1/5)": "aa"}))
setup = ("T1 = rnfequation(nfinit(y^2 + 3), x^3 - 2, 1); Q1 = T1[1];"
         "T = rnfequation(nfinit(subst(Q1, x, y)), x^3 - 5, 1); P = T[1];"
         "r1 = Mod(subst(lift(T[2]), y, x), P); s3 = subst(lift(T1[2]), x, r1);"
         "c2 = r1 - T1[3] * s3; c5 = Mod(x, P) - T[3] * r1; s3 = Mod(lift(s3), P);")
fields.append(build("Q(zeta3, 2^(1/3), 5^(1/3))", setup, 3, {"sqrt(-3)": "s3", "2^(1/3)": "c2", "5^(1/3)": "c5"}))
fields.append(sextic())

text = json.dumps({"fields": fields}, indent=2)
text = re.sub(r'\[\s*((?:"[^"]*"|-?\d+)(?:,\s*(?:"[^"]*"|-?\d+))*)\s*\]',
              lambda m: "[" + re.sub(r",\s*", ", ", m.group(1)) + "]", text)
(pathlib.Path(__file__).parent / "fields.json").write_text(text + "\n")
