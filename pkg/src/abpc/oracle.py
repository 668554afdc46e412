"""Brute-force reference implementations of the target polynomials.

Two independent oracle families live here.  The algebraic one expands
principal minors by the Leibniz permutation sum.  The combinatorial one
enumerates partial cycle covers of the complete digraph K_n (an edge from
vertex i to vertex j carries the label x[i,j]; a loop counts as a cycle of
length 1 and sign +1, a cycle of length l has sign (-1)^(l-1)) and, for
gradient entries, cycle-cover-plus-path pairs.  Everything is exhaustive
enumeration guarded to small sizes: these are test oracles, not
production paths.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator, Sequence, Tuple

from .poly import Polynomial, PolyMatrix, VarIndex
from .rings import AbpcError, RingDescriptor, int_embed

ORACLE_SIZE_CAP = 8

Edge = Tuple[int, int]


class OracleLimitError(AbpcError):
    pass


def _perm_sign(perm: Sequence[int]) -> int:
    inversions = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inversions += 1
    return -1 if inversions % 2 else 1


def det_leibniz(a: PolyMatrix) -> Polynomial:
    """Exact determinant by full permutation expansion (size <= 8)."""
    if a.rows != a.cols:
        raise OracleLimitError("determinant of a non-square matrix")
    d = a.rows
    if d > ORACLE_SIZE_CAP:
        raise OracleLimitError("oracle size limit")
    if d == 0:
        raise OracleLimitError("empty matrix")
    total = Polynomial.zero(a.ring, a.ambient_n)
    for perm in permutations(range(1, d + 1)):
        if any(a.entry(row, col).is_zero() for row, col in enumerate(perm, start=1)):
            continue
        term = Polynomial.from_int(a.ring, a.ambient_n, _perm_sign(perm))
        for row, col in enumerate(perm, start=1):
            term = term * a.entry(row, col)
        total = total + term
    return total


def iter_cycle_covers(pool: Sequence[int], length: int) -> Iterator[Tuple[Tuple[Edge, ...], int]]:
    """Yield (edges, sign) for every partial cycle cover of exact total length.

    ``pool`` is a sorted list of available vertices.  Covers are emitted in a
    canonical order: recursion on the smallest vertex, which is either left
    uncovered or becomes the minimum of a new cycle, so each cover appears
    exactly once.
    """
    if length == 0:
        yield (), 1
        return
    if not pool or length < 0:
        return
    v = pool[0]
    rest = pool[1:]
    # v stays uncovered
    yield from iter_cycle_covers(rest, length)
    # v is the minimal vertex of a cycle of length l
    for l in range(1, length + 1):
        for middle in permutations(rest, l - 1):
            cycle_vertices = (v,) + middle
            edges = tuple(
                (cycle_vertices[t], cycle_vertices[(t + 1) % l]) for t in range(l)
            )
            sign = -1 if (l - 1) % 2 else 1
            remaining = [w for w in rest if w not in middle]
            for sub_edges, sub_sign in iter_cycle_covers(remaining, length - l):
                yield edges + sub_edges, sign * sub_sign


def iter_simple_paths(pool: Sequence[int], a: int, b: int) -> Iterator[Tuple[int, ...]]:
    """Yield every repetition-free vertex sequence from a to b inside pool.

    A path that has reached b cannot be extended, since leaving b would
    force a second visit of b at the end.  For a = b only the length-0
    path (a,) exists.
    """
    if a not in pool or b not in pool:
        return

    def extend(prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if prefix[-1] == b:
            yield prefix
            return
        for w in pool:
            if w not in prefix:
                yield from extend(prefix + (w,))

    yield from extend((a,))


def _check_enumeration_size(n: int) -> None:
    if n > ORACLE_SIZE_CAP:
        raise OracleLimitError("oracle size limit")


def _edges_to_mono(edges: Sequence[Edge], n: int):
    flats = sorted(VarIndex(i, j).flat(n) for i, j in edges)
    return tuple((v, 1) for v in flats)


def cpc_minor_sum(n: int, d: int, ring: RingDescriptor) -> Polynomial:
    """Degree-d characteristic coefficient as a sum of principal minors.

    Sums det of the (S, S) submatrix of the generic n x n matrix over all
    size-d subsets S; 1 for d = 0 and 0 for d > n.
    """
    _check_enumeration_size(n)
    if d < 0:
        raise OracleLimitError("negative degree")
    if d == 0:
        return Polynomial.from_int(ring, n, 1)
    total = Polynomial.zero(ring, n)
    if d > n:
        return total
    x = PolyMatrix.variables(ring, n)
    for subset in combinations(range(1, n + 1), d):
        total = total + det_leibniz(x.submatrix(subset, subset))
    return total


def cpc_cycle_cover(n: int, d: int, ring: RingDescriptor) -> Polynomial:
    """Degree-d characteristic coefficient as a signed cycle-cover sum."""
    _check_enumeration_size(n)
    total = Polynomial.zero(ring, n)
    for edges, sign in iter_cycle_covers(list(range(1, n + 1)), d):
        mono = _edges_to_mono(edges, n)
        total = total + Polynomial(ring, n, {mono: int_embed(ring, sign)})
    return total


def grad_ccp_entry(n: int, d: int, a: int, b: int, ring: RingDescriptor) -> Polynomial:
    """Entry (a, b) of the transposed gradient of the degree-(d+1) coefficient.

    Computed combinatorially: sum over pairs of a partial cycle cover q and a
    vertex-disjoint simple path z from a to b with len(q) + len(z) = d, each
    pair weighted by sgn(q) beta(q) sgn(z) beta(z) where sgn(z) = (-1)^len(z).
    """
    _check_enumeration_size(n)
    if not (1 <= a <= n and 1 <= b <= n):
        raise OracleLimitError("path endpoints outside the vertex set")
    total = Polynomial.zero(ring, n)
    vertices = list(range(1, n + 1))
    for path in iter_simple_paths(vertices, a, b):
        path_len = len(path) - 1
        if path_len > d:
            continue
        path_edges = tuple(zip(path, path[1:]))
        path_sign = -1 if path_len % 2 else 1
        remaining = [w for w in vertices if w not in path]
        for cover_edges, cover_sign in iter_cycle_covers(remaining, d - path_len):
            mono = _edges_to_mono(path_edges + cover_edges, n)
            coeff = int_embed(ring, path_sign * cover_sign)
            total = total + Polynomial(ring, n, {mono: coeff})
    return total
