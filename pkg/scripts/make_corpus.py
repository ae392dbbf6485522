"""Regenerate the bundled corpus in src/skelcat/corpus/.

Each category is presented concretely: objects are finite sets {0..n-1},
generators are functions, and the category is the closure of the
generators under composition.  Arrows are named by the shortest word of
generator names (diagrammatic order) that produces them.
"""
from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "skelcat" / "corpus"

# name: (description, {object: set size}, [(generator, dom, cod, function)])
MODELS = {
    "1": ("terminal category", {"X": 1}, []),
    "discrete2": ("discrete category on two objects", {"X": 1, "Y": 1}, []),
    "2": ("the arrow category A -> B", {"A": 1, "B": 1}, [("u", "A", "B", (0,))]),
    "I": (
        "two objects and a unique isomorphism between them",
        {"X": 1, "Y": 1},
        [("f", "X", "Y", (0,)), ("g", "Y", "X", (0,))],
    ),
    "z2": ("the group Z/2", {"X": 2}, [("e", "X", "X", (1, 0))]),
    "z3": ("the group Z/3", {"X": 3}, [("r", "X", "X", (1, 2, 0))]),
    "idempotent": ("one idempotent endomorphism", {"X": 2}, [("e", "X", "X", (0, 0))]),
    "flip": (
        "monoid of all self-maps of a two-element set",
        {"X": 2},
        [("t", "X", "X", (1, 0)), ("c", "X", "X", (0, 0))],
    ),
    "parallel": ("a parallel pair u, v: A -> B", {"A": 1, "B": 2}, [("u", "A", "B", (0,)), ("v", "A", "B", (1,))]),
    "retract": (
        "a section s with retraction r, r then s idempotent",
        {"A": 1, "B": 2},
        [("s", "A", "B", (0,)), ("r", "B", "A", (0, 0))],
    ),
    "cospan": ("a cospan A -> C <- B", {"A": 1, "B": 1, "C": 2}, [("u", "A", "C", (0,)), ("v", "B", "C", (1,))]),
    "chain3": ("the ordinal 3: A -> B -> C", {"A": 1, "B": 1, "C": 1}, [("a", "A", "B", (0,)), ("b", "B", "C", (0,))]),
    "iso_arrow": (
        "an isomorphism X ~ Y followed by an arrow Y -> Z",
        {"X": 1, "Y": 1, "Z": 2},
        [("f", "X", "Y", (0,)), ("g", "Y", "X", (0,)), ("u", "Y", "Z", (0,))],
    ),
    "aut_groupoid": (
        "connected groupoid on two objects with automorphism group Z/2",
        {"X": 2, "Y": 2},
        [("e", "X", "X", (1, 0)), ("f", "X", "Y", (0, 1)), ("g", "Y", "X", (0, 1))],
    ),
    "codiscrete3": (
        "codiscrete (chaotic) groupoid on three objects",
        {"X": 1, "Y": 1, "Z": 1},
        [("a", "X", "Y", (0,)), ("b", "Y", "Z", (0,)), ("c", "Y", "X", (0,)), ("d", "Z", "Y", (0,))],
    ),
    "iso_idem": (
        "an isomorphism X ~ Y together with an idempotent on X",
        {"X": 2, "Y": 2},
        [("e", "X", "X", (0, 0)), ("f", "X", "Y", (0, 1)), ("g", "Y", "X", (0, 1))],
    ),
}


def build(sizes, gens):
    ident = {x: (x, x, tuple(range(n))) for x, n in sizes.items()}
    names = {key: f"id:{x}" for x, key in ident.items()}
    order = []
    frontier = []
    for name, dom, cod, fn in gens:
        key = (dom, cod, tuple(fn))
        if key not in names:
            names[key] = name
            order.append(key)
            frontier.append(key)
    while frontier:
        nxt = []
        for key in frontier:
            for gname, gdom, gcod, gfn in gens:
                if key[1] != gdom:
                    continue
                comp = (key[0], gcod, tuple(gfn[i] for i in key[2]))
                if comp not in names:
                    names[comp] = names[key] + gname
                    order.append(comp)
                    nxt.append(comp)
        frontier = nxt
    compose = []
    for k1 in order:
        for k2 in order:
            if k1[1] == k2[0]:
                comp = (k1[0], k2[1], tuple(k2[2][i] for i in k1[2]))
                compose.append({"first": names[k1], "then": names[k2], "equals": names[comp]})
    return {
        "objects": list(sizes),
        "arrows": [{"name": names[k], "dom": k[0], "cod": k[1]} for k in order],
        "compose": compose,
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (desc, sizes, gens) in MODELS.items():
        data = {"name": name, "description": desc, **build(sizes, gens)}
        (OUT / f"{name}.json").write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        print(f"{name}: {len(data['objects'])} objects, {len(data['arrows'])} arrows")


if __name__ == "__main__":
    main()
