"""Pure-Python implementations of the per-digraph hot kernels.

All three kernels operate on adjacency bitmask rows (``out_masks[i]`` has bit
``j`` set iff the arc (i, j) is present).  Python integers make every result
exact at any size; the compiled twin in ``_kernels_c`` mirrors these
signatures for n <= 64 (n <= 12 for the characteristic polynomial).
"""

from __future__ import annotations


def walk_counts(n: int, out_masks, in_masks):
    """Per-vertex closed-2-walk counts and their doubly-adjacent sums.

    Returns ``(c2, t2)`` where ``c2[i]`` counts vertices doubly adjacent to
    ``i`` and ``t2[i]`` sums ``c2[j]`` over those vertices.
    """
    c2 = [(out_masks[i] & in_masks[i]).bit_count() for i in range(n)]
    t2 = []
    for i in range(n):
        m = out_masks[i] & in_masks[i]
        s = 0
        while m:
            j = (m & -m).bit_length() - 1
            s += c2[j]
            m &= m - 1
        t2.append(s)
    return c2, t2


def scc_ids(n: int, out_masks):
    """Strongly connected components via iterative Tarjan.

    Returns ``(ids, count)`` with component ids renumbered so that components
    are ordered by their smallest member vertex.
    """
    UNSET = -1
    index = [UNSET] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [UNSET] * n
    stack: list[int] = []
    counter = 0
    n_comps = 0

    for root in range(n):
        if index[root] != UNSET:
            continue
        # Frame: (vertex, remaining-successor mask).
        frames = [(root, out_masks[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while frames:
            v, rem = frames[-1]
            if rem:
                w = (rem & -rem).bit_length() - 1
                frames[-1] = (v, rem & (rem - 1))
                if index[w] == UNSET:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    frames.append((w, out_masks[w]))
                elif on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            else:
                frames.pop()
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = n_comps
                        if w == v:
                            break
                    n_comps += 1
                if frames:
                    u = frames[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]

    # Renumber so ids follow the smallest contained vertex.
    remap = [UNSET] * n_comps
    next_id = 0
    for v in range(n):
        if remap[comp[v]] == UNSET:
            remap[comp[v]] = next_id
            next_id += 1
    return [remap[comp[v]] for v in range(n)], n_comps


def charpoly_from_masks(n: int, out_masks):
    """Exact characteristic polynomial of the 0-1 adjacency matrix.

    Faddeev-LeVerrier over Python integers.  Returns the n+1 coefficients in
    ascending order (``coeffs[k]`` multiplies x**k; ``coeffs[n] == 1``).
    """
    if n == 0:
        return [1]
    a = [[(out_masks[i] >> j) & 1 for j in range(n)] for i in range(n)]
    rng = range(n)
    m = [row[:] for row in a]
    cs = [0] * (n + 1)  # cs[k] is the coefficient of x**(n-k)
    cs[0] = 1
    cs[1] = -sum(m[i][i] for i in rng)
    for k in range(2, n + 1):
        ck = cs[k - 1]
        t = [[m[i][j] + (ck if i == j else 0) for j in rng] for i in rng]
        m = [
            [sum(a[i][l] * t[l][j] for l in rng if a[i][l]) for j in rng]
            for i in rng
        ]
        tr = sum(m[i][i] for i in rng)
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier trace not divisible"
        cs[k] = q
    return [cs[n - k] for k in range(n + 1)]
