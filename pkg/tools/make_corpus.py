"""Regenerate the shipped corpus files under src/frobmult/corpus/."""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "frobmult" / "corpus"

P2 = [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}]
P3 = P2 + [{"name": "z", "degree": 1}]
W23 = [{"name": "x", "degree": 2}, {"name": "y", "degree": 3}]
ABCD = [{"name": n, "degree": 1} for n in "abcd"]
VERONESE = ["b^2 - a*c", "c^2 - b*d", "b*c - a*d"]
NONCM = ["b*c - a*d", "c^3 - b*d^2", "a*c^2 - b^2*d", "b^3 - a^2*c"]
CUSP = [{"name": "a", "degree": 2}, {"name": "b", "degree": 3}]
T345 = [{"name": "a", "degree": 3}, {"name": "b", "degree": 4}, {"name": "c", "degree": 5}]
T345_REL = ["b^2 - a*c", "a^3 - b*c", "a^2*b - c^2"]


def tasks(emax2=6, emax3=3, emax5=2, extra=()):
    out = [
        {"op": "check", "args": {}},
        {"op": "mult", "args": {"ideal": "a"}},
        {"op": "mult", "args": {"ideal": "J"}},
        {"op": "leastN", "args": {"a": "a", "J": "J"}},
        {"op": "verify", "args": {"a": "a", "J": "J"}},
    ]
    for p, emax in ((2, emax2), (3, emax3), (5, emax5)):
        if emax:
            out.append({"op": "verify", "args": {"a": "a", "J": "J", "p": p}})
            out.append({"op": "nubound", "args": {"a": "a", "J": "J", "p": p, "emax": emax}})
    out.append({"op": "multiprime", "args": {"a": "a", "J": "J", "primes": [2, 3, 5, 7]}})
    out.extend(extra)
    return out


def case(desc, variables, relations, a, J, tags, **kw):
    """``desc`` and ``tags`` document the generator only; the case schema has no room for them."""
    if "one-dim-law" in tags:
        law = [{"op": "law", "args": {"a": "a", "J": "J", "p": 5, "emax": 3}}]
        kw["extra"] = list(kw.get("extra", ())) + law
    return {"field": {"char": 0}, "vars": variables, "relations": relations,
            "ideals": {"a": a, "J": J, **kw.pop("ideals", {})}, "tasks": tasks(**kw)}


CASES = {
    "diagonal": case("maximal ideal against the diagonal parameters x^2, y^3",
                     P2, [], ["x", "y"], ["x^2", "y^3"],
                     ["cm", "monomial", "polynomial-ring"],
                     extra=[{"op": "threshold", "args": {"a": "a", "J": "J", "p": 2, "emax": 6}},
                            {"op": "integral", "args": {"a": "a", "J": "J", "p": 2, "emax": 4}},
                            {"op": "scaling", "args": {"count": 50, "primes": [2, 3]}}]),
    "maximal_plane": case("a = J = maximal ideal of k[x, y]", P2, [], ["x", "y"], ["x", "y"],
                          ["cm", "monomial", "polynomial-ring"],
                          extra=[{"op": "integral", "args": {"a": "a", "J": "J", "p": 2, "emax": 4}}]),
    "squares_in_max": case("squares inside the maximal ideal", P2, [], ["x^2", "y^2"], ["x", "y"],
                           ["cm", "monomial", "polynomial-ring"]),
    "scaled_diagonal": case("diagonal case with a coefficient 2; F_2 is a bad prime",
                            P2, [], ["x", "y"], ["x^2", "2*y^3"],
                            ["cm", "polynomial-ring"], emax2=0),
    "binomial_plane": case("binomial parameters x + y, x - y against x^3, y^3",
                           P2, [], ["x + y", "x - y"], ["x^3", "y^3"],
                           ["cm", "polynomial-ring"], emax2=0, emax3=3, emax5=2),
    "space_squares": case("maximal ideal of k[x, y, z] against squares (equality case)",
                          P3, [], ["x", "y", "z"], ["x^2", "y^2", "z^2"],
                          ["cm", "monomial", "polynomial-ring"], emax2=5, emax3=2, emax5=1),
    "space_staggered": case("maximal ideal of k[x, y, z] against x, y^2, z^3",
                            P3, [], ["x", "y", "z"], ["x", "y^2", "z^3"],
                            ["cm", "monomial", "polynomial-ring"], emax2=5, emax3=2, emax5=1),
    "weighted_23": case("k[x, y] with deg x = 2, deg y = 3", W23, [], ["x", "y"], ["x^3", "y^2"],
                        ["cm", "monomial", "polynomial-ring"]),
    "weighted_23_inside": case("weighted parameters x^3, y^2 inside (x, y)",
                               W23, [], ["x^3", "y^2"], ["x", "y"],
                               ["cm", "monomial", "polynomial-ring"]),
    "veronese_max": case("third Veronese of k[x, y], a = J = (x^3, y^3)",
                         ABCD, VERONESE, ["a", "d"], ["a", "d"], ["cm", "veronese"],
                         ideals={"m": ["a", "b", "c", "d"]},
                         extra=[{"op": "leastN", "args": {"a": "m", "J": "J"}},
                                {"op": "threshold", "args": {"a": "a", "J": "J", "p": 2, "emax": 4}},
                                {"op": "closure", "args": {"x": "b", "ideal": "J", "p": 2, "emax": 3}}]),
    "veronese_squares": case("third Veronese, (a, d) against (a^2, d^2) (equality case)",
                             ABCD, VERONESE, ["a", "d"], ["a^2", "d^2"], ["cm", "veronese"]),
    "veronese_mixed": case("third Veronese, (a, d) against (a, d^3)",
                           ABCD, VERONESE, ["a", "d"], ["a", "d^3"], ["cm", "veronese"]),
    "cusp_max": case("cusp k[t^2, t^3] = k[a, b]/(b^2 - a^3), a = J = (a)",
                     CUSP, ["b^2 - a^3"], ["a"], ["a"], ["cm", "one-dimensional"]),
    "cusp_law": case("cusp k[t^2, t^3], a = (t^2), J = (t^3)",
                     CUSP, ["b^2 - a^3"], ["a"], ["b"], ["cm", "one-dimensional", "one-dim-law"],
                     emax3=0, emax5=3),
    "t345_law": case("k[t^3, t^4, t^5], a = (t^4), J = (t^3)",
                     T345, T345_REL, ["b"], ["a"], ["cm", "one-dimensional", "one-dim-law"],
                     emax3=0, emax5=3),
    "noncm_max": case("non-Cohen-Macaulay k[x^4, x^3 y, x y^3, y^4], a = J = (a, d)",
                      ABCD, NONCM, ["a", "d"], ["a", "d"], ["non-cm"]),
    "noncm_squares": case("non-Cohen-Macaulay ring, (a, d) against (a^2, d^2)",
                          ABCD, NONCM, ["a", "d"], ["a^2", "d^2"], ["non-cm"]),
    "noncm_mixed": case("non-Cohen-Macaulay ring, (a, d) against (a, d^2)",
                        ABCD, NONCM, ["a", "d"], ["a", "d^2"], ["non-cm"]),
    "quadric_cone": case("quadric cone k[x, y, z]/(x z - y^2)",
                         P3, ["x*z - y^2"], ["x", "z"], ["x^2", "z"], ["cm"]),
    "reducible_lines": case("two lines k[x, y]/(x y), a = (x + y), J = (x^2 + y^2)",
                            P2, ["x*y"], ["x + y"], ["x^2 + y^2"], ["cm", "one-dimensional"]),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, data in CASES.items():
        (OUT / f"{name}.case").write_text(json.dumps(data, indent=2) + "\n")


if __name__ == "__main__":
    main()
