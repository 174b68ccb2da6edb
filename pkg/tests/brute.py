"""Plain-Python reference computations.

Everything here works on raw edge lists with sets and itertools and shares
no code with the library, so agreement between the two is meaningful.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def edge_set(edges):
    return {frozenset(e) for e in edges}


def cycle_windows(n, k, ell, shift=0):
    step = k - ell
    return [frozenset((i * step + j - shift) % n for j in range(k)) for i in range(n // step)]


def min_degree(n, edges, d, vertices=None):
    verts = range(n) if vertices is None else sorted(vertices)
    E = [frozenset(e) for e in edges if vertices is None or set(e) <= set(vertices)]
    return min(sum(1 for e in E if set(D) <= e) for D in itertools.combinations(verts, d))


def hamilton_cycles(n, edges, k, ell):
    """Edge sets of all Hamilton ell-cycles, by trying every vertex order."""
    E = edge_set(edges)
    step = k - ell
    found = set()
    for order in itertools.permutations(range(n)):
        windows = [frozenset(order[(i * step + j) % n] for j in range(k)) for i in range(n // step)]
        if len(set(windows)) == len(windows) and all(w in E for w in windows):
            found.add(frozenset(windows))
    return found


def ell_paths(host, edges, k, ell, start, end, length_edges=None):
    """Vertex sequences of ell-paths inside ``host`` beginning with the set ``start`` (and ending with ``end``)."""
    E = edge_set(edges)
    step = k - ell
    size = len(host) if length_edges is None else length_edges * step + ell
    out = []
    for seq in itertools.permutations(host, size):
        if set(seq[:ell]) != set(start):
            continue
        if end is not None and set(seq[size - ell:]) != set(end):
            continue
        if all(frozenset(seq[i * step: i * step + k]) in E for i in range((size - ell) // step)):
            out.append(seq)
    return out


def set_partitions(items, block):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for others in itertools.combinations(rest, block - 1):
        remaining = [x for x in rest if x not in others]
        for tail in set_partitions(remaining, block):
            yield [(first,) + others] + tail


def hosts_copy(E, f_n, f_edges, block):
    return any(all(frozenset(perm[v] for v in e) in E for e in f_edges) for perm in itertools.permutations(block, f_n))


def factor_count(n, edges, f_n, f_edges):
    """Number of F-factors, counting distinct sets of copies (as edge sets)."""
    E = edge_set(edges)
    total = 0
    for parts in set_partitions(range(n), f_n):
        options = 1
        for block in parts:
            copies = {frozenset(frozenset(perm[v] for v in e) for e in f_edges)
                      for perm in itertools.permutations(block, f_n)
                      if all(frozenset(perm[v] for v in e) in E for e in f_edges)}
            options *= len(copies)
            if not options:
                break
        total += options
    return total


def has_factor(n, edges, f_n, f_edges):
    if n % f_n:
        return False
    E = edge_set(edges)
    return any(all(hosts_copy(E, f_n, f_edges, b) for b in parts) for parts in set_partitions(range(n), f_n))


def induced_labeled_copies(g_n, g_edges, f_n, f_edges):
    E = edge_set(g_edges)
    count = 0
    for img in itertools.permutations(range(g_n), f_n):
        images = {frozenset(img[v] for v in e) for e in f_edges}
        if not images <= E:
            continue
        inside = sum(1 for e in E if e <= set(img))
        if inside == len(f_edges):
            count += 1
    return count


def max_one_density(edges):
    best = Fraction(0)
    E = [frozenset(e) for e in edges]
    for r in range(1, len(E) + 1):
        for sub in itertools.combinations(E, r):
            v = len(frozenset().union(*sub))
            if v > 1:
                best = max(best, Fraction(r, v - 1))
    return best


def components(edges):
    groups = []
    for e in edges:
        e = set(e)
        merged = [g for g in groups if g & e]
        for g in merged:
            groups.remove(g)
            e |= g
        groups.append(e)
    return len(groups)
