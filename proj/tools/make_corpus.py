#!/usr/bin/env python3
"""Writes the instance corpus under corpus/<command>/. Deterministic: rerunning
produces identical files."""

import json
import math
import pathlib
import random
import sys

ROOT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "corpus")


def r6(x):
    return round(x, 6) + 0.0


def write(command, name, doc):
    doc = {"schema": 1, "name": name, **doc}
    path = ROOT / command / f"{name}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def half(a, b):
    return {"kind": "polyhedron", "rows": [a], "bounds": [b]}


def line(a):
    return {"kind": "polyhedron", "rows": [a, [-v for v in a]], "bounds": [0.0, 0.0]}


def box_rows(lo, hi):
    rows, bounds = [], []
    for i in range(len(lo)):
        e = [0.0] * len(lo)
        e[i] = 1.0
        rows.append(e)
        bounds.append(hi[i])
        rows.append([-v for v in e])
        bounds.append(-lo[i])
    return rows, bounds


def poly(rows, bounds):
    return {"kind": "polyhedron", "rows": rows, "bounds": [r6(b) for b in bounds]}


def lp(p, v):
    if p == "inf":
        return max(abs(t) for t in v)
    return sum(abs(t) ** p for t in v) ** (1.0 / p)


def base_spec(p):
    return {"kind": "euclidean"} if p == 2 else {"kind": "lp", "p": p}


def outer(spec, vals):
    if spec["kind"] == "max_of_blocks":
        return max(vals)
    return lp(spec["p"], vals)


# Separation ------------------------------------------------------------------


def separation_instances(rng):
    outers = [{"kind": "max_of_blocks"}, {"kind": "p_composition", "p": 1}, {"kind": "p_composition", "p": 2}]
    k = 0
    for d in (1, 2, 3):
        for n in (2, 3):
            for variant in range(5 if d > 1 else 3):
                k += 1
                bp = [1, 2, "inf"][(k + variant) % 3]
                inner = outers[k % 3]
                plus = outers[(k + 1) % 3]
                width = r6(rng.uniform(0.5, 1.5))
                gap = r6(rng.uniform(0.2, 1.0))
                sets, omega = [], []
                for i in range(n):
                    lo = [r6(i * (width + gap))] + [r6(rng.uniform(-0.5, 0.0)) for _ in range(d - 1)]
                    hi = [r6(lo[0] + width)] + [r6(rng.uniform(0.2, 0.8)) for _ in range(d - 1)]
                    # Nearest face to the next box along the first axis; other coordinates shared.
                    w = [hi[0] if i == 0 else lo[0]] + [0.0] * (d - 1)
                    rows, bounds = box_rows(lo, hi)
                    for _ in range(rng.randint(0, 3) if d > 1 else 0):
                        a = [r6(rng.uniform(-1, 1)) for _ in range(d)]
                        rows.append(a)
                        bounds.append(sum(x * y for x, y in zip(a, w)) + rng.uniform(0.05, 0.3))
                    sets.append(poly(rows, bounds))
                    omega.append(w)
                diffs = [lp(bp, [x - y for x, y in zip(omega[i], omega[-1])]) for i in range(n - 1)]
                f1 = outer(inner, diffs) if n > 2 else diffs[0]
                eps = r6(1.2 * f1 + 0.05)
                delta = r6(rng.uniform(0.1, 0.6))
                params = {"eps": eps, "delta": delta}
                if variant % 2 == 1:
                    params["tau"] = [0.5, 0.9, 0.99][variant % 3]
                inner_spec = {"kind": "max_of_blocks"} if n == 2 else inner
                write(
                    "separate",
                    f"boxes_d{d}_n{n}_{variant}",
                    {
                        "dimension": d,
                        "sets": sets,
                        "points": {"omega": [[r6(x) for x in w] for w in omega]},
                        "norms": {"base": base_spec(bp), "inner": inner_spec, "plus": plus},
                        "parameters": params,
                    },
                )
    # Half-spaces with nearest points, gap close to zero.
    for v in range(4):
        theta = r6(rng.uniform(0, math.pi))
        a = [r6(math.cos(theta)), r6(math.sin(theta))]
        g = r6(rng.uniform(0.2, 1.0))
        # Unrounded, so omega_2 lies exactly on the boundary.
        w2 = [g * a[0], g * a[1]]
        bound = -(a[0] * w2[0] + a[1] * w2[1])
        write(
            "separate",
            f"half_spaces_{v}",
            {
                "dimension": 2,
                "sets": [half(a, 0.0), half([-a[0], -a[1]], bound)],
                "points": {"omega": [[0.0, 0.0], w2]},
                "norms": {"base": {"kind": "euclidean"}, "inner": {"kind": "max_of_blocks"}, "plus": {"kind": "max_of_blocks"}},
                "parameters": {"eps": r6(1.2 * math.hypot(*w2) + 0.05), "delta": 0.3, "tau": 0.9},
            },
        )
    write(
        "separate",
        "half_lines",
        {
            "dimension": 1,
            "sets": [half([1.0], 0.0), half([-1.0], -1.0)],
            "points": {"omega": [[0.0], [1.0]]},
            "norms": {"base": {"kind": "lp", "p": 1}, "inner": {"kind": "max_of_blocks"}, "plus": {"kind": "max_of_blocks"}},
            "parameters": {"eps": 1.5, "delta": 0.1},
        },
    )


def specialize_instances():
    three = {
        "dimension": 2,
        "sets": [poly(*box_rows([0, 0], [1, 1])), poly(*box_rows([2, 0], [3, 1])), poly(*box_rows([1, 2], [2, 3]))],
        "points": {"omega": [[1.0, 1.0], [2.0, 1.0], [1.5, 2.0]]},
        "norms": {"base": {"kind": "lp", "p": "inf"}},
        "parameters": {"eps": 1.5, "delta": 0.2},
    }
    lines = {
        "dimension": 1,
        "sets": [half([1.0], 0.0), half([-1.0], -1.0)],
        "points": {"omega": [[0.0], [1.0]]},
        "norms": {"base": {"kind": "lp", "p": 1}},
        "parameters": {"eps": 1.5, "delta": 0.1},
    }
    write("specialize", "half_lines_unified", {**lines, "profile": "unified"})
    write("specialize", "half_lines_eta_equal", {**lines, "profile": "eta_delta", "parameters": {**lines["parameters"], "eta": 0.1}})
    write("specialize", "three_boxes_unified", {**three, "profile": "unified"})
    write("specialize", "three_boxes_eta", {**three, "profile": "eta_delta", "parameters": {**three["parameters"], "eta": 0.05}})
    write("specialize", "three_boxes_eta_equal", {**three, "profile": "eta_delta", "parameters": {**three["parameters"], "eta": 0.2}})
    write(
        "specialize",
        "three_boxes_p2",
        {**three, "norms": {"base": {"kind": "euclidean"}}, "profile": "p_weighted", "parameters": {**three["parameters"], "p": 2}},
    )


def local_instances():
    near = {
        "dimension": 2,
        "sets": [half([0, 1], 0.0), half([0, -1], -0.1)],
        "points": {"x_bar": [0.0, 0.0]},
        "norms": {"base": {"kind": "euclidean"}, "product": {"kind": "max_of_blocks"}},
        "parameters": {"rho": 1.0, "eps": 0.2, "delta": 0.5},
    }
    boxes = {
        "dimension": 2,
        "sets": [poly(*box_rows([0, 0], [1, 1])), poly(*box_rows([1.2, 0], [2, 1]))],
        "points": {"x_bar": [1.1, 0.5], "omega": [[1.0, 0.5], [1.2, 0.5]], "shifts": [[1.1, 0.5], [1.1, 0.5]]},
        "norms": {"base": {"kind": "lp", "p": "inf"}, "product": {"kind": "max_of_blocks"}},
        "parameters": {"rho": 0.5, "eps": 0.3, "delta": 0.5},
    }
    write("separate-local", "shifted_half_planes", near)
    write("separate-local", "close_boxes", boxes)
    write("separate-shifted", "close_boxes_equal_shifts", boxes)
    write(
        "separate-shifted",
        "half_planes_opposite_shifts",
        {**near, "points": {"x_bar": [0.0, 0.0], "shifts": [[0.0, 0.05], [0.0, -0.05]]}},
    )


# Stationarity, transversality, equivalence -------------------------------------

SUM_NORM = {"kind": "p_composition", "p": 1}


def coll(sets, x_bar, params=None, base=None, product=None):
    return {
        "dimension": len(x_bar),
        "sets": sets,
        "points": {"x_bar": x_bar},
        "norms": {"base": base or {"kind": "euclidean"}, "product": product or SUM_NORM},
        "parameters": params or {},
    }


def variational_instances():
    opposite = [half([1, 0], 0.0), half([-1, 0], 0.0)]
    axes = [line([0, 1]), line([1, 0])]
    write("stationarity", "opposite_half_planes_alpha", coll(opposite, [0.0, 0.0], {"alpha": 0.1, "beta": 0.2, "eps": 0.1, "tau": 0.5}))
    write("stationarity", "opposite_half_planes", coll(opposite, [0.0, 0.0]))
    write("stationarity", "crossing_axes_alpha", coll(axes, [0.0, 0.0], {"alpha": 0.5, "eps": 0.1}))
    write("stationarity", "overlapping_half_planes", coll([half([1, 0], 1.0), half([-1, 0], 1.0)], [0.0, 0.0]))

    write("transversality", "crossing_axes", coll(axes, [0.0, 0.0], {"eps": 0.1, "alpha": 0.5}))
    write("transversality", "crossing_axes_linf", coll(axes, [0.0, 0.0], {"eps": 0.1}, base={"kind": "lp", "p": "inf"}))
    write("transversality", "half_plane_and_box", coll([half([0, 1], 0.0), poly(*box_rows([-1, -1], [1, 1]))], [0.0, 0.0], {"eps": 0.1}))
    write("transversality", "opposite_half_planes", coll(opposite, [0.0, 0.0], {"eps": 0.1}))

    cases = {
        "touching_half_planes": ([half([0, 1], 0.0), half([0, -1], 0.0)], [0.0, 0.0]),
        "touching_cones": ([poly([[1, -1], [-1, -1]], [0, 0]), poly([[1, 1], [-1, 1]], [0, 0])], [0.0, 0.0]),
        "boxes_sharing_face": ([poly(*box_rows([0, 0], [1, 1])), poly(*box_rows([1, 0], [2, 1]))], [1.0, 0.5]),
        "boxes_sharing_corner": ([poly(*box_rows([0, 0], [1, 1])), poly(*box_rows([1, 1], [2, 2]))], [1.0, 1.0]),
        "three_half_planes": ([half([1, 0], 0.0), half([-1, 0], 0.0), half([0, 1], 0.0)], [0.0, 0.0]),
        "touching_half_spaces_3d": ([half([0, 0, 1], 0.0), half([0, 0, -1], 0.0)], [0.0, 0.0, 0.0]),
        "overlapping_half_planes": ([half([1, 0], 1.0), half([-1, 0], 1.0)], [0.0, 0.0]),
        "crossing_axes": (axes, [0.0, 0.0]),
        "overlapping_boxes": ([poly(*box_rows([0, 0], [1, 1])), poly(*box_rows([0.5, 0.5], [2, 2]))], [0.75, 0.75]),
        "half_plane_and_box": ([half([0, 1], 0.0), poly(*box_rows([-1, -1], [1, 1]))], [0.0, 0.0]),
        "line_through_box": ([line([1, -1]), poly(*box_rows([-1, -1], [1, 1]))], [0.0, 0.0]),
        "crossing_planes_3d": ([line([0, 0, 1]), line([1, 0, 0])], [0.0, 0.0, 0.0]),
    }
    for name, (sets, x_bar) in cases.items():
        write("equivalence-suite", name, coll(sets, x_bar, product=SUM_NORM))


def norms_instances():
    skew = {"kind": "polyhedral", "generators": [[1, 0], [-1, 0], [1, 1], [-1, -1]]}
    write(
        "norms-check",
        "skew_vector_norm",
        {
            "dimension": 1,
            "norms": {"base": {"kind": "euclidean"}},
            "norm_probe": {
                "blocks": 2,
                "vector_norm": skew,
                "monotone_pairs": [[[1, -1], [2, 1]]],
                "triangle_pairs": [[[1, 1], [-1, 1]]],
            },
        },
    )
    filler = poly(*box_rows([0, 0], [1, 1]))
    for p in (1, 2, "inf"):
        for n in (2, 3, 4):
            write(
                "norms-check",
                f"lp_composition_p{p}_n{n}",
                {
                    "dimension": 2,
                    "sets": [filler] * n,
                    "norms": {
                        "base": {"kind": "euclidean"},
                        "inner": {"kind": "p_composition", "p": p},
                        "plus": {"kind": "p_composition", "p": p},
                        "product": {"kind": "p_composition", "p": p},
                    },
                },
            )


def main():
    rng = random.Random(20240611)
    separation_instances(rng)
    specialize_instances()
    local_instances()
    variational_instances()
    norms_instances()


if __name__ == "__main__":
    main()
