# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python search kernels.

Same contracts, same candidate order, same tie-breaking, same budget
accounting as `_kernels_py`; masks are limited to 64 bits, so `backend`
falls back to the Python kernels for larger instances.
"""

cdef extern from *:
    int __builtin_popcountll(unsigned long long)
    int __builtin_ctzll(unsigned long long)


cdef inline int __bit_index(unsigned long long low):
    return __builtin_ctzll(low)


BACKEND_NAME = "cython"

MASK_LIMIT = 64


class _BudgetHit(Exception):
    pass


def ladder_search(ge_by_col, le_by_row, budget):
    cdef int n_rows = len(le_by_row)
    cdef int n_cols = len(ge_by_col)
    cdef unsigned long long ge[64]
    cdef unsigned long long le[64]
    cdef int i
    for i in range(n_cols):
        ge[i] = ge_by_col[i]
    for i in range(n_rows):
        le[i] = le_by_row[i]

    cdef long long nodes = 0
    cdef long long budget_c = budget
    best = [0, (), ()]
    seen = {}
    rseq = []
    cseq = []

    def rec(unsigned long long avail_rows, unsigned long long avail_cols):
        nonlocal nodes
        cdef int depth = len(rseq)
        cdef unsigned long long rbits, cbits, low
        cdef int i, j, pr, pc
        if depth > best[0]:
            best[0] = depth
            best[1] = tuple(rseq)
            best[2] = tuple(cseq)
        if avail_rows == 0 or avail_cols == 0:
            return
        pr = __builtin_popcountll(avail_rows)
        pc = __builtin_popcountll(avail_cols)
        if depth + (pr if pr < pc else pc) <= best[0]:
            return
        key = (<object> avail_rows, <object> avail_cols)
        prev = seen.get(key)
        if prev is not None and depth <= prev:
            return
        seen[key] = depth
        rbits = avail_rows
        while rbits:
            low = rbits & (0 - rbits)
            i = __bit_index(low)
            rbits ^= low
            new_cols = avail_cols & le[i]
            cbits = avail_cols
            while cbits:
                low = cbits & (0 - cbits)
                j = __bit_index(low)
                cbits ^= low
                nodes += 1
                if nodes > budget_c:
                    raise _BudgetHit
                rseq.append(i)
                cseq.append(j)
                rec(avail_rows & ge[j] & ~(<unsigned long long> 1 << i),
                    new_cols & ~(<unsigned long long> 1 << j))
                rseq.pop()
                cseq.pop()

    exact = True
    try:
        rec((<unsigned long long> 1 << n_rows) - 1, (<unsigned long long> 1 << n_cols) - 1)
    except _BudgetHit:
        exact = False
    return best[0], best[1], best[2], exact


def clique_search(adj_list, budget):
    cdef int n = len(adj_list)
    cdef unsigned long long adj[64]
    cdef int i
    for i in range(n):
        adj[i] = adj_list[i]
    cdef long long nodes = 0
    cdef long long budget_c = budget
    best = [0, ()]
    chosen = []

    def rec(unsigned long long cand):
        nonlocal nodes
        cdef unsigned long long bits, low, higher
        cdef int v
        if len(chosen) > best[0]:
            best[0] = len(chosen)
            best[1] = tuple(chosen)
        if len(chosen) + __builtin_popcountll(cand) <= best[0]:
            return
        bits = cand
        while bits:
            low = bits & (0 - bits)
            v = __bit_index(low)
            bits ^= low
            nodes += 1
            if nodes > budget_c:
                raise _BudgetHit
            chosen.append(v)
            if v >= 63:
                higher = 0
            else:
                higher = ~(((<unsigned long long> 1) << (v + 1)) - 1)
            rec(cand & adj[v] & higher)
            chosen.pop()

    exact = True
    try:
        rec((<unsigned long long> 1 << n) - 1 if n < 64 else <unsigned long long> 0xFFFFFFFFFFFFFFFF)
    except _BudgetHit:
        exact = False
    return best[0], best[1], exact


def alternation_iii_search(values, double eps, int n_rows, int n_cols, budget):
    cdef double vals[64][64]
    cdef int i, j
    for i in range(n_rows):
        row = values[i]
        for j in range(n_cols):
            vals[i][j] = row[j]
    cdef long long nodes = 0
    cdef long long budget_c = budget
    cdef int max_depth = n_rows if n_rows < n_cols else n_cols
    best = [0, ()]
    pairs = []

    def rec(unsigned long long used_rows, unsigned long long used_cols):
        nonlocal nodes
        cdef int depth = len(pairs)
        cdef int i, j, u, t
        cdef double vju
        cdef bint ok
        if depth > best[0]:
            best[0] = depth
            best[1] = tuple(pairs)
        if depth >= max_depth:
            return
        for i in range(n_rows):
            if used_rows & ((<unsigned long long> 1) << i):
                continue
            for j in range(n_cols):
                if used_cols & ((<unsigned long long> 1) << j):
                    continue
                nodes += 1
                if nodes > budget_c:
                    raise _BudgetHit
                ok = True
                for u in range(1, depth):
                    vju = vals[<int> pairs[u][0]][j]
                    for t in range(u):
                        if abs(vals[<int> pairs[u][0]][<int> pairs[t][1]] - vju) < eps:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    pairs.append((i, j))
                    rec(used_rows | ((<unsigned long long> 1) << i),
                        used_cols | ((<unsigned long long> 1) << j))
                    pairs.pop()

    exact = True
    try:
        rec(0, 0)
    except _BudgetHit:
        exact = False
    return best[0], best[1], exact


def shatter_dim_search(low_by_col, high_by_col, int n_rows, int max_k, budget):
    cdef int n_cols = len(low_by_col)
    cdef unsigned long long low[64]
    cdef unsigned long long high[64]
    cdef int i
    for i in range(n_cols):
        low[i] = low_by_col[i]
        high[i] = high_by_col[i]
    cdef long long nodes = 0
    cdef long long budget_c = budget
    best = [0, (), ()]
    cols = []

    def rec(int start, list masks):
        nonlocal nodes
        cdef int k = len(cols)
        cdef int c
        cdef unsigned long long lo, hi, a, b, m
        cdef bint shattered
        if k > best[0]:
            best[0] = k
            best[1] = tuple(cols)
            best[2] = tuple(masks)
        if k >= max_k or k + (n_cols - start) <= best[0]:
            return
        for c in range(start, n_cols):
            nodes += 1
            if nodes > budget_c:
                raise _BudgetHit
            lo = low[c]
            hi = high[c]
            hi_masks = []
            lo_masks = []
            shattered = True
            for mo in masks:
                m = mo
                a = m & hi
                b = m & lo
                if a == 0 or b == 0:
                    shattered = False
                    break
                hi_masks.append(a)
                lo_masks.append(b)
            if shattered:
                cols.append(c)
                rec(c + 1, hi_masks + lo_masks)
                cols.pop()

    exact = True
    try:
        rec(0, [(1 << n_rows) - 1])
    except _BudgetHit:
        exact = False
    return best[0], best[1], best[2], exact


def dk_count_free(low_by_row, high_by_row, members, int k):
    cdef int pos
    states = {(1 << MASK_LIMIT) - 1: 1}
    for pos in range(2 * k):
        masks = low_by_row if pos % 2 == 0 else high_by_row
        new_states = {}
        for mask, cnt in states.items():
            for p in members:
                m = mask & masks[p]
                if m:
                    new_states[m] = new_states.get(m, 0) + cnt
        states = new_states
        if not states:
            return 0
    return sum(states.values())


def dk_count_distinct(low_by_row, high_by_row, members, int k):
    cdef int n = len(members)
    cdef unsigned long long lows[64]
    cdef unsigned long long highs[64]
    cdef int i
    for i in range(n):
        lows[i] = low_by_row[members[i]]
        highs[i] = high_by_row[members[i]]
    total = [0]

    def rec(int pos, unsigned long long mask, unsigned long long used):
        cdef int idx
        cdef unsigned long long m
        if pos == 2 * k:
            total[0] += 1
            return
        for idx in range(n):
            if used & ((<unsigned long long> 1) << idx):
                continue
            m = mask & (lows[idx] if pos % 2 == 0 else highs[idx])
            if m:
                rec(pos + 1, m, used | ((<unsigned long long> 1) << idx))

    rec(0, 0xFFFFFFFFFFFFFFFF, 0)
    return total[0]
