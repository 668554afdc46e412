"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random
from typing import List

from abpc.graph import AbpGraph, AffineLabel
from abpc.poly import Polynomial, PolyMatrix
from abpc.rings import RingDescriptor, RingElement, int_embed

Z = RingDescriptor.integers()
Z4 = RingDescriptor.modular(4)
Z7 = RingDescriptor.modular(7)
Q = RingDescriptor.rationals()

RING_FAMILIES = {"int": Z, "mod4": Z4, "mod7": Z7, "rat": Q}


def random_element(ring: RingDescriptor, rng: random.Random, span: int = 6) -> RingElement:
    k = rng.randint(-span, span)
    if ring.kind == "rat" and rng.random() < 0.5:
        from abpc.rings import invert

        den = rng.randint(1, span)
        return int_embed(ring, k) * invert(int_embed(ring, den))
    return int_embed(ring, k)


def random_nonzero(ring: RingDescriptor, rng: random.Random, span: int = 4) -> RingElement:
    while True:
        e = random_element(ring, rng, span)
        if not e.is_zero():
            return e


def random_matrix(ring: RingDescriptor, n: int, rng: random.Random,
                  span: int = 6) -> List[List[RingElement]]:
    return [[random_element(ring, rng, span) for _ in range(n)] for _ in range(n)]


def random_poly(ring: RingDescriptor, n: int, rng: random.Random,
                max_terms: int = 4, max_deg: int = 3) -> Polynomial:
    p = Polynomial.zero(ring, n)
    for _ in range(rng.randint(0, max_terms)):
        term = Polynomial.constant(ring, n, random_nonzero(ring, rng))
        for _ in range(rng.randint(0, max_deg)):
            term = term * Polynomial.variable(ring, n, rng.randint(1, n), rng.randint(1, n))
        p = p + term
    return p


def random_linear_label(ring: RingDescriptor, n: int, rng: random.Random) -> AffineLabel:
    linear = {}
    for _ in range(rng.randint(1, 2)):
        linear[(rng.randint(1, n), rng.randint(1, n))] = random_nonzero(ring, rng)
    return AffineLabel.make(int_embed(ring, 0), linear)


def random_affine_label(ring: RingDescriptor, n: int, rng: random.Random) -> AffineLabel:
    label = random_linear_label(ring, n, rng)
    if rng.random() < 0.5:
        label = label.add(AffineLabel.const(random_nonzero(ring, rng)))
    return label


def random_abp(ring: RingDescriptor, n: int, d: int, rng: random.Random,
               max_width: int = 3) -> AbpGraph:
    """Random layered program with constant intra-layer edges and one output."""
    g = AbpGraph("abp", ring, n, d)
    layers = []
    for lay in range(0, d + 1):
        count = 1 if lay in (0, d) and rng.random() < 0.5 else rng.randint(1, max_width)
        ids = [f"v{lay}_{k}" for k in range(count)]
        for vid in ids:
            g.add_vertex(vid, lay)
        layers.append(ids)
    g.set_source(layers[0][0])
    for lay in range(d):
        # guaranteed spine so the output is reachable
        g.add_edge(layers[lay][0], layers[lay + 1][0], random_linear_label(ring, n, rng))
        for u in layers[lay]:
            for v in layers[lay + 1]:
                if rng.random() < 0.4:
                    g.add_edge(u, v, random_linear_label(ring, n, rng))
    for lay in range(0, d + 1):
        ids = layers[lay]
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                if rng.random() < 0.35:
                    # forward within the sorted layer, so no constant cycles
                    g.add_edge(ids[a], ids[b], AffineLabel.const(random_nonzero(ring, rng)))
    g.add_output("out", layers[d][0])
    return g


def random_pabp(ring: RingDescriptor, n: int, d: int, rng: random.Random,
                max_width: int = 2) -> AbpGraph:
    g = AbpGraph("pabp", ring, n, d)
    layers = [["s"]]
    g.add_vertex("s", 0)
    for lay in range(1, d):
        ids = [f"v{lay}_{k}" for k in range(rng.randint(1, max_width))]
        for vid in ids:
            g.add_vertex(vid, lay)
        layers.append(ids)
    g.add_vertex("t", d)
    layers.append(["t"])
    g.set_source("s")
    for lay in range(d):
        g.add_edge(layers[lay][0], layers[lay + 1][0], random_linear_label(ring, n, rng))
        for u in layers[lay]:
            for v in layers[lay + 1]:
                if rng.random() < 0.5:
                    g.add_edge(u, v, random_linear_label(ring, n, rng))
    g.add_output("out", "t")
    return g


def _unimodular(ring: RingDescriptor, s: int, rng: random.Random):
    """Random product of integer shears: determinant exactly 1."""
    zero, one = int_embed(ring, 0), int_embed(ring, 1)
    m = [[one if a == b else zero for b in range(s)] for a in range(s)]
    for _ in range(2 * s):
        i, j = rng.randrange(s), rng.randrange(s)
        if i == j:
            continue
        c = int_embed(ring, rng.randint(-2, 2))
        m[i] = [m[i][k] + c * m[j][k] for k in range(s)]
    return m


def planted_determinantal_instance(rng: random.Random):
    """(matrix, det, degree) with the determinant homogeneous, size <= 4.

    Built by converting a small random program to its determinantal
    representation and scrambling it with unimodular factors on both
    sides, which preserves the determinant exactly.
    """
    from abpc.graph import abp_to_determinant, expand_symbolic
    from abpc.oracle import det_leibniz
    from abpc.poly import PolyMatrix

    while True:
        d = rng.randint(1, 3)
        width = rng.randint(1, 3) if d == 2 else 1
        n = rng.randint(1, 3)
        g = random_pabp(Q, n, d, rng, max_width=width)
        f = expand_symbolic(g, "out")
        if f.is_zero():
            continue
        m = abp_to_determinant(g)
        if m.rows > 4:
            continue
        left = PolyMatrix.from_constants(Q, n, _unimodular(Q, m.rows, rng))
        right = PolyMatrix.from_constants(Q, n, _unimodular(Q, m.rows, rng))
        scrambled = left * m * right
        assert det_leibniz(scrambled) == f
        return scrambled, f, d


def random_aabp(ring: RingDescriptor, n: int, rng: random.Random,
                inner: int = 3) -> AbpGraph:
    """Random affine DAG with a guaranteed source-to-sink chain."""
    size = inner + 2
    g = AbpGraph("aabp", ring, n, size - 1)
    ids = ["s"] + [f"u{k}" for k in range(inner)] + ["t"]
    for pos, vid in enumerate(ids):
        g.add_vertex(vid, pos)
    g.set_source("s")
    for pos in range(size - 1):
        g.add_edge(ids[pos], ids[pos + 1], random_affine_label(ring, n, rng))
    for a in range(size - 1):
        for b in range(a + 1, size):
            if (a, b) != (0, size - 1) and b > a + 1 and rng.random() < 0.4:
                g.add_edge(ids[a], ids[b], random_affine_label(ring, n, rng))
    g.add_output("out", "t")
    return g
