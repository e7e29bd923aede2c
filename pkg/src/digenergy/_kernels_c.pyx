# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the _kernels_py hot kernels (n <= 64; charpoly n <= 12).

Same signatures and results as the pure module; the dispatch layer in
digenergy.kernels enforces the size limits before calling in here.
"""

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def walk_counts(int n, list out_masks, list in_masks):
    cdef unsigned long long dbl[64]
    cdef long long c2[64]
    cdef unsigned long long m
    cdef long long s
    cdef int i, j
    for i in range(n):
        dbl[i] = <unsigned long long> out_masks[i] & <unsigned long long> in_masks[i]
    for i in range(n):
        c2[i] = __builtin_popcountll(dbl[i])
    c2_out = [0] * n
    t2_out = [0] * n
    for i in range(n):
        m = dbl[i]
        s = 0
        while m:
            j = __builtin_ctzll(m)
            s += c2[j]
            m &= m - 1
        c2_out[i] = c2[i]
        t2_out[i] = s
    return c2_out, t2_out


def scc_ids(int n, list out_masks):
    cdef unsigned long long adj[64]
    cdef unsigned long long frame_rem[64]
    cdef int frame_v[64]
    cdef int index[64]
    cdef int low[64]
    cdef int comp[64]
    cdef int stack[64]
    cdef char on_stack[64]
    cdef int counter = 0, n_comps = 0, sp = 0, fp = 0
    cdef int root, v, w, u
    cdef unsigned long long rem

    for v in range(n):
        adj[v] = <unsigned long long> out_masks[v]
        index[v] = -1
        comp[v] = -1
        on_stack[v] = 0

    for root in range(n):
        if index[root] != -1:
            continue
        frame_v[0] = root
        frame_rem[0] = adj[root]
        fp = 1
        index[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        on_stack[root] = 1
        while fp:
            v = frame_v[fp - 1]
            rem = frame_rem[fp - 1]
            if rem:
                w = __builtin_ctzll(rem)
                frame_rem[fp - 1] = rem & (rem - 1)
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    on_stack[w] = 1
                    frame_v[fp] = w
                    frame_rem[fp] = adj[w]
                    fp += 1
                elif on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            else:
                fp -= 1
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        on_stack[w] = 0
                        comp[w] = n_comps
                        if w == v:
                            break
                    n_comps += 1
                if fp:
                    u = frame_v[fp - 1]
                    if low[v] < low[u]:
                        low[u] = low[v]

    # Renumber ids by smallest member vertex.
    cdef int remap[64]
    cdef int next_id = 0
    for v in range(n_comps):
        remap[v] = -1
    for v in range(n):
        if remap[comp[v]] == -1:
            remap[comp[v]] = next_id
            next_id += 1
    ids = [0] * n
    for v in range(n):
        ids[v] = remap[comp[v]]
    return ids, n_comps


def charpoly_from_masks(int n, list out_masks):
    # Faddeev-LeVerrier in int64.  For 0-1 matrices with n <= 12 every
    # intermediate stays well inside the int64 range.
    cdef long long a[144]
    cdef long long m[144]
    cdef long long t[144]
    cdef long long cs[13]
    cdef long long acc, tr, ck
    cdef unsigned long long row
    cdef int i, j, k, l

    if n == 0:
        return [1]
    for i in range(n):
        row = <unsigned long long> out_masks[i]
        for j in range(n):
            a[i * n + j] = <long long> ((row >> j) & 1)
            m[i * n + j] = a[i * n + j]
    cs[0] = 1
    tr = 0
    for i in range(n):
        tr += m[i * n + i]
    cs[1] = -tr
    for k in range(2, n + 1):
        ck = cs[k - 1]
        for i in range(n):
            for j in range(n):
                t[i * n + j] = m[i * n + j] + (ck if i == j else 0)
        for i in range(n):
            for j in range(n):
                acc = 0
                for l in range(n):
                    if a[i * n + l]:
                        acc += t[l * n + j]
                m[i * n + j] = acc
        tr = 0
        for i in range(n):
            tr += m[i * n + i]
        cs[k] = -tr / k
    out = [0] * (n + 1)
    for k in range(n + 1):
        out[k] = cs[n - k]
    return out
