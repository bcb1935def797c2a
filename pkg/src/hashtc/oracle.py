"""Reference triangle counters that share no code with the hash engine."""


def count_naive(g) -> int:
    """Count unordered triples {u, v, w} whose three edges all exist.

    Uses its own adjacency sets built straight from the CSR arrays; meant for
    small graphs (a few hundred vertices).
    """
    begin = [int(x) for x in g.begin]
    adj = [int(x) for x in g.adjacency]
    nbrs = [set(adj[begin[u]:begin[u + 1]]) for u in range(len(begin) - 1)]
    total = 0
    for u in range(len(nbrs)):
        higher = sorted(x for x in nbrs[u] if x > u)
        for a, v in enumerate(higher):
            for w in higher[a + 1:]:
                if w in nbrs[v]:
                    total += 1
    return total


def merge_intersect(a, b) -> int:
    """Size of the intersection of two ascending lists by two-pointer merge."""
    i = j = hits = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            i += 1
        elif a[i] > b[j]:
            j += 1
        else:
            hits += 1
            i += 1
            j += 1
    return hits


def count_merge_path(og) -> int:
    """Sum of |N(u) & N(v)| over directed edges (u, v) of an oriented graph."""
    csr = og.csr
    begin = csr.begin.tolist()
    adj = csr.adjacency.tolist()
    total = 0
    for u in range(len(begin) - 1):
        nu = adj[begin[u]:begin[u + 1]]
        for v in nu:
            total += merge_intersect(nu, adj[begin[v]:begin[v + 1]])
    return total
