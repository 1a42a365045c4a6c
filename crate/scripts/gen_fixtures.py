#!/usr/bin/env python3
"""Write the built-in fixture documents to crates/core/fixtures/."""

import itertools
import json
import os
from fractions import Fraction as F

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "fixtures")


def num(q):
    q = F(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dump(name, doc):
    with open(os.path.join(OUT, f"{name}.json"), "w") as f:
        json.dump(doc, f, indent=2, ensure_ascii=False)
        f.write("\n")


def gens(*pairs):
    return [{"name": n, "degree": d} for n, d in pairs]


REG2 = {"gldim": 2, "as_regular": True, "domain": True, "noetherian": True}


def veronese(m, q=2):
    if m == 2:
        field, z = None, -1
    else:
        field, z = {"cyclotomic": m}, [0, 1]
    doc = {
        "name": f"ex1.2.1-m{m}",
        "description": f"Veronese action: a root of unity of order {m} scaling both generators of k_q[x,y], q = {q}",
        "algebra": {
            "generators": gens(("x", 1), ("y", 1)),
            "relations": [f"yx - {q}xy"],
            "assert": dict(REG2, koszul=True, smash_product_prime=True, invariant_ring_finite_gldim=False),
        },
        "action": {"group": {"generators": [[[z, 0], [0, z]]]}},
        "second_algebra": {
            "generators": gens(("a", m), ("b", m)),
            "relations": [f"ba - {q ** (m * m)}ab"],
            "assert": REG2,
        },
        "map": {
            "images": [f"x^{m}", f"y^{m}"],
            "assert": {"finite_both_sides": True, "cohen_macaulay_s": 2},
        },
        "parameters": {"max_degree": 2 * m + 3, "max_homological": 3, "invariant_denominator_hint": [m, m]},
        "commands": ["invariants", "tau", "hilbert-ideal", "series", "check-bounds"],
        "expect": {
            "beta": m,
            "tau": m,
            "tau_op": m,
            "certified": True,
            "quotient_dims": [d + 1 for d in range(m)] + [0] * (m + 4),
            "quotient_dims_op": [d + 1 for d in range(m)] + [0] * (m + 4),
            "hilbert_ratio": m,
            "rows_hold": ["beta_le_tau", "beta_le_tau_op", "hilbert_ratio_eq_dim_h"],
        },
    }
    if field:
        doc["field"] = field
    return doc


def ex123():
    return {
        "name": "ex1.2.3",
        "description": "swap of the generators of k_{-1}[x,y]",
        "algebra": {
            "generators": gens(("x", 1), ("y", 1)),
            "relations": ["xy + yx"],
            "assert": dict(REG2, koszul=True, smash_product_prime=True, invariant_ring_finite_gldim=False),
        },
        "action": {"group": {"generators": [[[0, 1], [1, 0]]]}},
        "second_algebra": {
            "generators": gens(("a", 2), ("b", 4)),
            "relations": ["ba - ab"],
            "assert": REG2,
        },
        "map": {
            "images": ["x^2 + y^2", "x^2y^2"],
            "assert": {"finite_both_sides": True, "cohen_macaulay_s": 2},
        },
        "parameters": {"max_degree": 8, "max_homological": 3},
        "commands": ["invariants", "tau", "hilbert-ideal", "series", "check-bounds"],
        "expect": {
            "invariant_dims": [1, 1, 1, 2, 3, 3, 3, 4, 5],
            "generator_degrees": [1, 3],
            "beta": 3,
            "tau": 3,
            "certified": True,
            "hilbert_ratio": 2,
            "rows_hold": ["beta_le_tau", "beta_le_skew_bound", "tau_le_central_bound"],
        },
    }


def ex13():
    n = 7
    return {
        "name": "ex1.3",
        "description": "sign on x acting on the free algebra k<x,y>",
        "algebra": {"generators": gens(("x", 1), ("y", 1)), "assert": {"gldim": 1, "domain": True}},
        "action": {"group": {"generators": [[[-1, 0], [0, 1]]]}},
        "parameters": {"max_degree": n, "max_homological": 2},
        "commands": ["invariants", "tau", "hilbert-ideal"],
        "expect": {
            "generators": ["y", "x^2"] + ["xyx"] + [f"xy^{k}x" for k in range(2, n - 1)],
            "module_generators": ["1", "x", "yx"] + [f"y^{k}x" for k in range(2, n)],
            "quotient_dims": [1] * (n + 1),
            "certified": False,
        },
    }


def ex34():
    return {
        "name": "ex3.4",
        "description": "sign on x acting on the down-up algebra A(0,1)",
        "algebra": {
            "generators": gens(("x", 1), ("y", 1)),
            "relations": ["x^2y - yx^2", "xy^2 - y^2x"],
            "assert": {"gldim": 3, "as_regular": True, "domain": True, "noetherian": True, "koszul": False},
        },
        "action": {"group": {"generators": [[[-1, 0], [0, 1]]]}},
        "parameters": {"max_degree": 6, "max_homological": 4},
        "commands": ["basis", "invariants", "tau", "hilbert-ideal", "resolve", "cmreg", "check-bounds"],
        "expect": {
            "algebra_dims": [1, 2, 4, 6, 9, 12, 16],
            "invariant_dims": [1, 1, 2, 3],
            "generator_degrees": [1, 2, 3],
            "beta": 3,
            "tau": 3,
            "tau_op": 3,
            "certified": True,
            "quotient_dims": [1, 1, 1, 0, 0, 0, 0],
            "tor_degrees": [0, 1, 3, 4, None],
            "cmreg": -1,
            "phi": [[2, 3], [3, None]],
            "rows_hold": ["beta_le_tau", "beta_le_tau_op"],
        },
    }


def bracket(word):
    """Right-normed bracket [a1,[a2,...,[a_{m-1},a_m]]] expanded as {word: coeff}."""
    if len(word) == 1:
        return {word: 1}
    inner = bracket(word[1:])
    out = {}
    for w, c in inner.items():
        for v, s in ((word[0] + w, c), (w + word[0], -c)):
            out[v] = out.get(v, 0) + s
    return {w: c for w, c in out.items() if c}


def poly(terms):
    parts = []
    for w, c in sorted(terms.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign} {'' if mag == 1 else mag}{w}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else s


def ex36(m):
    rels = []
    for word in itertools.product("xy", repeat=m):
        b = bracket("".join(word))
        if b and b[min(b)] < 0:
            b = {w: -c for w, c in b.items()}
        if b:
            p = poly(b)
            if p not in rels:
                rels.append(p)
    dims = [0, 2, 1, 2, 3, 6, 9]
    return {
        "name": f"ex3.6-m{m}",
        "description": f"sign on x acting on U(g/g_{{>={m}}}), g the free Lie algebra on x, y",
        "algebra": {
            "generators": gens(("x", 1), ("y", 1)),
            "relations": rels,
            "assert": {"gldim": sum(dims[1:m]), "as_regular": True, "domain": True, "noetherian": True},
        },
        "action": {"group": {"generators": [[[-1, 0], [0, 1]]]}},
        "parameters": {"max_degree": m, "max_homological": 2, "truncate_at": m},
        "commands": ["invariants"],
        "expect": {"truncated_beta": m - 1},
    }


# H8: basis x^a y^b z^c, a, b, c in {0, 1}
H8 = [(a, b, c) for c in (0, 1) for b in (0, 1) for a in (0, 1)]
LABELS = ["1" if e == (0, 0, 0) else "".join(n for n, k in zip("xyz", e) if k) for e in H8]


def h_mul(e1, e2):
    a, b, c = e1
    a2, b2, c2 = e2
    if c:
        a2, b2 = b2, a2
    g = ((a + a2) % 2, (b + b2) % 2)
    if c + c2 < 2:
        return {(g[0], g[1], c + c2): F(1)}
    out = {}
    for (da, db), s in (((0, 0), F(1, 2)), ((1, 0), F(1, 2)), ((0, 1), F(1, 2)), ((1, 1), F(-1, 2))):
        k = ((g[0] + da) % 2, (g[1] + db) % 2, 0)
        out[k] = out.get(k, 0) + s
    return out


def v_mul(u, v):
    out = {}
    for e1, c1 in u.items():
        for e2, c2 in v.items():
            for e, c in h_mul(e1, e2).items():
                out[e] = out.get(e, 0) + c1 * c2 * c
    return {e: c for e, c in out.items() if c}


def t_mul(s, t):
    out = {}
    for (l1, r1), c1 in s.items():
        for (l2, r2), c2 in t.items():
            for el, cl in h_mul(l1, l2).items():
                for er, cr in h_mul(r1, r2).items():
                    k = (el, er)
                    out[k] = out.get(k, 0) + c1 * c2 * cl * cr
    return {k: c for k, c in out.items() if c}


ONE, X, Y, Z = (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)
XY = (1, 1, 0)
DELTA = {
    X: {(X, X): F(1)},
    Y: {(Y, Y): F(1)},
    Z: t_mul(
        {(ONE, ONE): F(1, 2), (ONE, X): F(1, 2), (Y, ONE): F(1, 2), (Y, X): F(-1, 2)},
        {(Z, Z): F(1)},
    ),
}


def coproduct(e):
    acc = {(ONE, ONE): F(1)}
    for gen, k in zip((X, Y, Z), e):
        if k:
            acc = t_mul(acc, DELTA[gen])
    return acc


def antipode(e):
    # S(x^a y^b z^c) = S(z)^c S(y)^b S(x)^a with S(x) = x, S(y) = y, S(z) = z
    a, b, c = e
    acc = {ONE: F(1)}
    for gen, k in ((Z, c), (Y, b), (X, a)):
        if k:
            acc = v_mul(acc, {gen: F(1)})
    return acc


def vec(d):
    return {LABELS[H8.index(e)]: num(c) for e, c in sorted(d.items(), key=lambda t: H8.index(t[0]))}


def check_antipode():
    for e in H8:
        acc = {}
        for (l, r), c in coproduct(e).items():
            for k, s in v_mul(antipode(l), {r: F(1)}).items():
                acc[k] = acc.get(k, 0) + c * s
        acc = {k: c for k, c in acc.items() if c}
        assert acc == {ONE: F(1)}, (e, acc)


def integral():
    lam = v_mul({e: F(1, 4) for e in H8 if e[2] == 0}, {ONE: F(1, 2), Z: F(1, 2)})
    for e in H8:
        eps = F(1)
        assert v_mul({e: F(1)}, lam) == {k: eps * c for k, c in lam.items()}
        assert v_mul(lam, {e: F(1)}) == {k: eps * c for k, c in lam.items()}
    return lam


def gen_matrix(e):
    # column-vector maps on span(u, v)
    mats = {X: [[-1, 0], [0, 1]], Y: [[1, 0], [0, -1]], Z: [[0, 1], [1, 0]]}
    acc = [[1, 0], [0, 1]]
    for gen, k in zip((X, Y, Z), e):
        if k:
            m = mats[gen]
            acc = [[sum(acc[i][t] * m[t][j] for t in range(2)) for j in range(2)] for i in range(2)]
    # row convention: row g = image of generator g
    return [[acc[j][i] for j in range(2)] for i in range(2)]


def ex37(bad_integral=False):
    check_antipode()
    lam = integral()
    if bad_integral:
        lam = {e: 2 * c for e, c in lam.items()}
    hopf = {
        "basis": LABELS,
        "mult": [[vec(h_mul(e1, e2)) for e2 in H8] for e1 in H8],
        "coproduct": [
            [[LABELS[H8.index(l)], LABELS[H8.index(r)], num(c)] for (l, r), c in sorted(coproduct(e).items(), key=lambda t: (H8.index(t[0][0]), H8.index(t[0][1])))]
            for e in H8
        ],
        "counit": [1] * 8,
        "antipode": [vec(antipode(e)) for e in H8],
        "unit": {"1": 1},
        "integral": vec(lam),
        "generator_action": [gen_matrix(e) for e in H8],
    }
    return {
        "name": "ex3.7" + ("-bad-integral" if bad_integral else ""),
        "description": "Kac-Palyutkin H8 acting on k<u,v>/(u^2 - v^2)"
        + (", with the integral scaled so that its counit is 2" if bad_integral else ""),
        "algebra": {
            "generators": gens(("u", 1), ("v", 1)),
            "relations": ["u^2 - v^2"],
            "assert": dict(REG2, koszul=True),
        },
        "action": {"hopf": hopf},
        "parameters": {"max_degree": 6, "max_homological": 3},
        "commands": ["validate", "invariants", "tau"],
        "expect": {
            "hopf_valid": True,
            "action_valid": True,
            "element_actions": [
                {"by": "z", "element": "uv", "image": "-vu"},
                {"by": "z", "element": "vu", "image": "uv"},
                {"by": "x", "element": "uv", "image": "-uv"},
                {"by": "y", "element": "vu", "image": "-vu"},
                {"by": "z", "element": "uv + vu", "image": "uv - vu"},
            ],
        },
    }


def quasi_reflection():
    return {
        "name": "quasi-reflection",
        "description": "sign on x acting on k_{-1}[x,y]; the invariants are the polynomial ring k[x^2, y]",
        "algebra": {
            "generators": gens(("x", 1), ("y", 1)),
            "relations": ["xy + yx"],
            "assert": dict(REG2, koszul=True, smash_product_prime=True, invariant_ring_finite_gldim=True),
        },
        "action": {"group": {"generators": [[[-1, 0], [0, 1]]]}},
        "second_algebra": {"generators": gens(("a", 2), ("b", 1)), "relations": ["ba - ab"], "assert": REG2},
        "map": {
            "images": ["x^2", "y"],
            "assert": {"finite_both_sides": True, "cohen_macaulay_s": 2, "tor1_condition": True},
        },
        "parameters": {"max_degree": 8, "max_homological": 3},
        "commands": ["invariants", "tau", "series", "resolve", "annihilators", "check-bounds"],
        "expect": {
            "generator_degrees": [1, 2],
            "beta": 2,
            "tau": 2,
            "tau_op": 2,
            "certified": True,
            "hilbert_ratio": 2,
            "rows_hold": ["beta_le_tau", "beta_le_dim_h", "tau_le_dim_h", "hilbert_ratio_eq_dim_h"],
        },
    }


def sign_kx():
    return {
        "name": "sign-kx",
        "description": "sign acting on k[x]; the invariants are k[x^2]",
        "algebra": {
            "generators": gens(("x", 1)),
            "assert": {"gldim": 1, "as_regular": True, "domain": True, "noetherian": True, "koszul": True,
                       "smash_product_prime": True, "invariant_ring_finite_gldim": True},
        },
        "action": {"group": {"generators": [[[-1]]]}},
        "second_algebra": {"generators": gens(("a", 2)), "assert": {"gldim": 1, "as_regular": True, "domain": True, "noetherian": True}},
        "map": {"images": ["x^2"], "assert": {"finite_both_sides": True, "cohen_macaulay_s": 1, "tor1_condition": True}},
        "parameters": {"max_degree": 8, "max_homological": 3},
        "commands": ["invariants", "tau", "series", "annihilators", "check-bounds"],
        "expect": {
            "invariant_dims": [1, 0, 1, 0, 1, 0, 1, 0, 1],
            "beta": 2,
            "tau": 2,
            "certified": True,
            "hilbert_ratio": 2,
            "rows_hold": ["beta_le_tau", "beta_le_dim_h", "hilbert_ratio_eq_dim_h"],
        },
    }


def main():
    os.makedirs(OUT, exist_ok=True)
    for m in range(2, 6):
        dump(f"ex1.2.1-m{m}", veronese(m))
    dump("ex1.2.3", ex123())
    dump("ex1.3", ex13())
    dump("ex3.4", ex34())
    for m in (4, 5):
        dump(f"ex3.6-m{m}", ex36(m))
    dump("ex3.7", ex37())
    dump("ex3.7-bad-integral", ex37(bad_integral=True))
    dump("quasi-reflection", quasi_reflection())
    dump("sign-kx", sign_kx())


if __name__ == "__main__":
    main()


def schema():
    rational = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
    scalar = {"oneOf": [rational, {"type": "array", "items": rational}]}
    matrix = {"type": "array", "items": {"type": "array", "items": scalar}}
    vector = {"type": "object", "additionalProperties": scalar}
    flag = {"type": "boolean"}
    nat = {"type": "integer", "minimum": 0}

    def obj(props, required=()):
        return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False}

    assertions = obj({k: flag for k in ("as_regular", "domain", "noetherian", "koszul", "smash_product_prime",
                                        "invariant_ring_finite_gldim")} | {"gldim": nat})
    algebra = obj({
        "generators": {"type": "array", "items": obj({"name": {"type": "string", "pattern": "^[a-z]$"}, "degree": nat}, ("name", "degree"))},
        "relations": {"type": "array", "items": {"type": "string"}},
        "assert": assertions,
    }, ("generators",))
    hopf = obj({
        "basis": {"type": "array", "items": {"type": "string"}},
        "mult": {"type": "array", "items": {"type": "array", "items": vector}},
        "coproduct": {"type": "array", "items": {"type": "array", "items": {
            "type": "array", "prefixItems": [{"type": "string"}, {"type": "string"}, scalar], "minItems": 3, "maxItems": 3}}},
        "counit": {"type": "array", "items": scalar},
        "antipode": {"type": "array", "items": vector},
        "unit": vector,
        "integral": vector,
        "generator_action": {"type": "array", "items": matrix},
    }, ("basis", "mult", "coproduct", "counit", "antipode", "unit", "integral", "generator_action"))
    action = {"oneOf": [
        obj({"group": obj({"generators": {"type": "array", "items": matrix}}, ("generators",))}, ("group",)),
        obj({"hopf": hopf}, ("hopf",)),
    ]}
    commands = ["validate", "basis", "invariants", "beta", "tau", "hilbert-ideal", "annihilators", "resolve",
                "betti", "torreg", "cmreg", "series", "check-bounds"]
    opt_nat = {"oneOf": [nat, {"type": "null"}]}
    expect = obj({
        "algebra_dims": {"type": "array", "items": nat},
        "invariant_dims": {"type": "array", "items": nat},
        "generators": {"type": "array", "items": {"type": "string"}},
        "generator_degrees": {"type": "array", "items": nat},
        "beta": nat, "tau": nat, "tau_op": nat, "certified": flag,
        "module_generators": {"type": "array", "items": {"type": "string"}},
        "quotient_dims": {"type": "array", "items": nat},
        "quotient_dims_op": {"type": "array", "items": nat},
        "tor_degrees": {"type": "array", "items": opt_nat},
        "torreg": {"type": "integer"}, "cmreg": {"type": "integer"},
        "hilbert_ratio": rational, "truncated_beta": nat,
        "hopf_valid": flag, "action_valid": flag,
        "element_actions": {"type": "array", "items": obj(
            {"by": {"type": "string"}, "element": {"type": "string"}, "image": {"type": "string"}}, ("by", "element", "image"))},
        "phi": {"type": "array", "items": {"type": "array", "prefixItems": [nat, opt_nat], "minItems": 2, "maxItems": 2}},
        "rows_hold": {"type": "array", "items": {"type": "string"}},
    })
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "ncinv input document",
        **obj({
            "name": {"type": "string"},
            "description": {"type": "string"},
            "field": obj({"cyclotomic": {"type": "integer", "minimum": 1},
                          "minpoly": {"type": "array", "items": {"type": "integer"}},
                          "label": {"type": "string"}}),
            "algebra": algebra,
            "action": action,
            "second_algebra": algebra,
            "map": obj({"images": {"type": "array", "items": {"type": "string"}},
                        "assert": obj({"finite_both_sides": flag, "cohen_macaulay_s": nat, "tor1_condition": flag})}, ("images",)),
            "central_subalgebra": obj({"generator_degree": nat, "module_generator_degree": nat},
                                      ("generator_degree", "module_generator_degree")),
            "parameters": obj({k: nat for k in ("max_degree", "max_homological", "word_cap", "group_cap",
                                                "guard", "truncate_at")}
                              | {"denominator_hint": {"type": "array", "items": nat},
                                 "invariant_denominator_hint": {"type": "array", "items": nat}}),
            "commands": {"type": "array", "items": {"enum": commands}},
            "expect": expect,
        }, ("name", "algebra", "action")),
    }


with open(os.path.join(OUT, "schema.json"), "w") as f:
    json.dump(schema(), f, indent=2)
    f.write("\n")
