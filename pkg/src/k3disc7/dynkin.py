"""Simply-laced Dynkin diagrams: Gram matrices, recognition, opposition involutions.

Root lattices are negative definite here, so a simple root has norm -2 and
two joined nodes pair to +1 (the Gram matrix is the negated Cartan matrix).
"""
from __future__ import annotations

from collections import Counter
from typing import Sequence

FINITE = ("A", "D", "E")


def _edges(kind: str, n: int) -> list[tuple[int, int]]:
    """Edges on nodes 1..n with Bourbaki labelling."""
    if kind == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        return [(i, i + 1) for i in range(1, n)]
    if kind == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    if kind == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in 6, 7, 8")
        return [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
    raise ValueError(f"unknown Dynkin type {kind!r}")


def root_gram(kind: str, n: int) -> list[list[int]]:
    """Negated Cartan matrix of A_n, D_n or E_n."""
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in _edges(kind, n):
        g[a - 1][b - 1] = g[b - 1][a - 1] = 1
    return g


def opposition(kind: str, n: int) -> list[int]:
    """The opposition involution as a permutation of the simple roots.

    Returned as a 0-based list ``perm`` with simple root i sent to perm[i].
    """
    _edges(kind, n)
    ident = list(range(n))
    if kind == "A" and n > 1:
        return ident[::-1]
    if kind == "D" and n % 2 == 1:
        perm = ident[:]
        perm[n - 2], perm[n - 1] = n - 1, n - 2
        return perm
    if kind == "E" and n == 6:
        # 1 <-> 6, 3 <-> 5; 2 and 4 fixed
        return [5, 1, 4, 3, 2, 0]
    return ident


# affine marks, listed for the node orders produced by affine_components()
AFFINE_MARKS = {
    "D5": (1, 1, 2, 2, 1, 1),
    "E6": (3, 2, 1, 2, 1, 2, 1),
}


def adjacency_from_gram(g: Sequence[Sequence]) -> dict[int, set[int]]:
    n = len(g)
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for i in range(n):
        if g[i][i] != -2:
            raise ValueError("diagram nodes must have norm -2")
        for j in range(n):
            if i != j and g[i][j]:
                if g[i][j] != 1:
                    raise ValueError(f"pairing {g[i][j]} is not a simply-laced edge")
                adj[i].add(j)
    return adj


def _components(adj: dict[int, set[int]]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _tree_type(nodes: list[int], adj: dict[int, set[int]]) -> str | None:
    n = len(nodes)
    n_edges = sum(len(adj[v]) for v in nodes) // 2
    if n_edges != n - 1:
        return None
    degs = Counter(len(adj[v]) for v in nodes)
    if max(degs) <= 2:
        return f"A{n}"
    branch = [v for v in nodes if len(adj[v]) >= 3]
    if len(branch) != 1 or len(adj[branch[0]]) != 3:
        return None
    c = branch[0]
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            length, prev, cur = length + 1, cur, nxt[0]
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    return None


def dynkin_type(g: Sequence[Sequence]) -> list[str]:
    """Sorted component types of a finite simply-laced diagram, e.g. ['A1', 'A6']."""
    adj = adjacency_from_gram(g)
    out = []
    for comp in _components(adj):
        t = _tree_type(comp, adj)
        if t is None:
            raise ValueError("not a finite Dynkin diagram")
        out.append(t)
    return sorted(out, key=lambda s: (s[0], int(s[1:])))


def type_label(types: Sequence[str]) -> str:
    counts = Counter(types)
    parts = []
    for t in sorted(counts, key=lambda s: (s[0], -int(s[1:]))):
        parts.append(t if counts[t] == 1 else f"{counts[t]}{t}")
    return "+".join(parts)


def affine_components(adj: dict[int, set[int]], nodes: Sequence[int]) -> tuple[str, list[int]] | None:
    """Recognise an induced affine diagram of type A~n, D~5 or E~6.

    Returns (type, ordered nodes).  For A~n the nodes are in cyclic order; for
    D~5 the order is (tip, tip, branch, branch, tip, tip) and for E~6 it is
    (centre, arm1 mid, arm1 tip, arm2 mid, arm2 tip, arm3 mid, arm3 tip), matching
    AFFINE_MARKS.
    """
    ns = set(nodes)
    sub = {v: adj[v] & ns for v in ns}
    n = len(ns)
    n_edges = sum(len(s) for s in sub.values()) // 2
    if n >= 3 and all(len(s) == 2 for s in sub.values()) and n_edges == n:
        start = min(ns)
        order, prev, cur = [start], None, start
        while True:
            nxt = sorted(w for w in sub[cur] if w != prev)[0]
            if nxt == start:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        if len(order) != n:
            return None
        return f"A{n - 1}", order
    if n_edges != n - 1:
        return None
    degs = sorted(len(s) for s in sub.values())
    if n == 6 and degs == [1, 1, 1, 1, 3, 3]:
        u, v = sorted(x for x in ns if len(sub[x]) == 3)
        if v not in sub[u]:
            return None
        a = sorted(sub[u] - {v})
        b = sorted(sub[v] - {u})
        return "D5", [a[0], a[1], u, v, b[0], b[1]]
    if n == 7 and degs == [1, 1, 1, 2, 2, 2, 3]:
        c = next(x for x in ns if len(sub[x]) == 3)
        order = [c]
        for mid in sorted(sub[c]):
            if len(sub[mid]) != 2:
                return None
            tip = next(iter(sub[mid] - {c}))
            if len(sub[tip]) != 1:
                return None
            order += [mid, tip]
        return "E6", order
    return None


def affine_marks(kind: str, n_nodes: int) -> tuple[int, ...]:
    if kind.startswith("A"):
        return (1,) * n_nodes
    return AFFINE_MARKS[kind]
