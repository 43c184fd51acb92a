"""Independent brute-force reference implementations used by the tests."""

from __future__ import annotations

from itertools import combinations, permutations


def jaccard_by_enumeration(a: list, b: list) -> float:
    """Jaccard index computed by walking the explicit universe of elements."""
    universe = []
    for x in list(a) + list(b):
        if x not in universe:
            universe.append(x)
    if not universe:
        return 0.0
    both = sum(1 for x in universe if x in a and x in b)
    return both / len(universe)


def assignments(n_rows: int, n_cols: int):
    """Every maximal one-to-one assignment as a list of (row, col) pairs."""
    k = min(n_rows, n_cols)
    if n_rows <= n_cols:
        for cols in permutations(range(n_cols), k):
            yield [(i, cols[i]) for i in range(k)]
    else:
        for rows in permutations(range(n_rows), k):
            yield [(rows[j], j) for j in range(k)]


def max_sum_assignment(scores: list[list[float]]) -> set[tuple[int, int]]:
    best, best_val = None, None
    for a in assignments(len(scores), len(scores[0])):
        val = sum(scores[i][j] for i, j in a)
        if best_val is None or val > best_val:
            best, best_val = a, val
    return set(best)


def lexmax_assignment(scores: list[list[float]]) -> set[tuple[int, int]]:
    """Assignment whose descending score vector is lexicographically largest."""
    best, best_key = None, None
    for a in assignments(len(scores), len(scores[0])):
        key = sorted((scores[i][j] for i, j in a), reverse=True)
        if best_key is None or key > best_key:
            best, best_key = a, key
    return set(best)


def redirect_closure(edges: dict[str, str], titles: set[str], max_hops: int):
    """Walk every title independently.

    Returns (mapping, cycle_members, unresolved) where unresolved holds the
    titles that enter a cycle or need more than ``max_hops`` hops.
    """
    cycle_members = set()
    for start in titles:
        seen = []
        cur = start
        while cur in edges and cur not in seen:
            seen.append(cur)
            cur = edges[cur]
        if cur in seen:
            cycle_members.update(seen[seen.index(cur):])
    mapping, unresolved = {}, set()
    for start in titles:
        if start in cycle_members:
            continue
        cur, hops, path = start, 0, {start}
        while cur in edges:
            cur = edges[cur]
            hops += 1
            if cur in cycle_members or cur in path:
                break
            path.add(cur)
        if cur in cycle_members or hops > max_hops:
            unresolved.add(start)
        else:
            mapping[start] = cur
    return mapping, cycle_members, unresolved


def subsets(items):
    for r in range(len(items) + 1):
        yield from combinations(items, r)
