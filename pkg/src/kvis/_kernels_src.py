"""Scalar inner loops over the read-only vertex arrays.

This file is loaded twice by :mod:`kvis.kernels`: once as plain Python
(exact on arbitrary-size ints) and once with every function compiled by
numba (exact on int64 when coordinates are bounded by ``INT64_COORD_LIMIT``).
Keep the bodies in the numba-compatible subset.

Conventions: coordinates are integers with the query point at the origin;
``NX[i]``/``PV[i]`` give the boundary successor/predecessor of vertex ``i``
or -1 at a segment end; edge ``j`` runs from vertex ``j`` to ``NX[j]``.

A sort key is ``(c, x, y, t)``: ordered by class ``c``, then by the angle of
the integer vector ``(x, y)`` (the cross product decides), then by ``t``.
Ray parameters ``num/den`` use ``(0, den, num, tiebreak)``; vertex angles use
``(half_plane, x, y, 0)``.
"""

NONCRIT = 0
END = 1
START = 2
DEGENERATE = -1

LOW_CLASS = -1
HIGH_CLASS = 9


def alloc(size):
    return [0] * size


def key_cmp(c1, x1, y1, t1, c2, x2, y2, t2):
    if c1 != c2:
        return -1 if c1 < c2 else 1
    cr = x1 * y2 - y1 * x2
    if cr > 0:
        return -1
    if cr < 0:
        return 1
    if t1 != t2:
        return -1 if t1 < t2 else 1
    return 0


def half_plane(x, y):
    if y > 0 or (y == 0 and x > 0):
        return 0
    return 1


def vclass(X, Y, NX, PV, i):
    vx = X[i]
    vy = Y[i]
    left = 0
    right = 0
    j = NX[i]
    if j >= 0:
        c = vx * Y[j] - vy * X[j]
        if c > 0:
            left += 1
        elif c < 0:
            right += 1
        else:
            return DEGENERATE
    j = PV[i]
    if j >= 0:
        c = vx * Y[j] - vy * X[j]
        if c > 0:
            left += 1
        elif c < 0:
            right += 1
        else:
            return DEGENERATE
    if left == 0:
        return END
    if right == 0:
        return START
    return NONCRIT


def nearer_first(X, Y, vi, w, w2):
    """1 if edge (vi, w) is crossed before edge (vi, w2) next to vertex vi."""
    vx = X[vi]
    vy = Y[vi]
    ux = X[w] - vx
    uy = Y[w] - vy
    zx = X[w2] - vx
    zy = Y[w2] - vy
    c1 = vx * uy - vy * ux
    if c1 < 0:
        c1 = -c1
    c2 = vx * zy - vy * zx
    if c2 < 0:
        c2 = -c2
    lhs = (ux * vx + uy * vy) * c2
    rhs = (zx * vx + zy * vy) * c1
    if lhs < rhs:
        return 1
    if lhs > rhs:
        return 0
    return -1


def edge_entry(X, Y, NX, PV, vi, cv, j):
    """Entries edge ``j`` contributes to the ray q->v_vi.

    Returns ``(count, den, num, tb)``; count is 0, 1 or 2 (a one-edge
    critical endpoint yields two entries, tiebreaks 0 and 1) and -1 flags a
    violation of general position.
    """
    b = NX[j]
    if b < 0:
        return 0, 1, 0, 0
    a = j
    if a == vi or b == vi:
        w = b if a == vi else a
        if cv == NONCRIT:
            vx = X[vi]
            vy = Y[vi]
            if vx * Y[w] - vy * X[w] > 0:
                return 1, 1, 1, 0
            return 0, 1, 0, 0
        w2 = PV[vi] if a == vi else NX[vi]
        if w2 < 0 or w2 == w:
            return 2, 1, 1, 0
        nf = nearer_first(X, Y, vi, w, w2)
        if nf < 0:
            return -1, 1, 0, 0
        return 1, 1, 1, 1 - nf
    vx = X[vi]
    vy = Y[vi]
    ax = X[a]
    ay = Y[a]
    ex = X[b] - ax
    ey = Y[b] - ay
    den = vx * ey - vy * ex
    if den == 0:
        return 0, 1, 0, 0
    num = ax * ey - ay * ex
    un = ax * vy - ay * vx
    if den < 0:
        den = -den
        num = -num
        un = -un
    if un < 0 or un > den or num < 0:
        return 0, 1, 0, 0
    if un == 0 or un == den or num == 0:
        return -1, 1, 0, 0
    return 1, den, num, 0


# -- bounded buffer used by the batch selection -------------------------------


def _swap(BC, BX, BY, BT, BE, i, j):
    tc = BC[i]
    BC[i] = BC[j]
    BC[j] = tc
    tx = BX[i]
    BX[i] = BX[j]
    BX[j] = tx
    ty = BY[i]
    BY[i] = BY[j]
    BY[j] = ty
    tt = BT[i]
    BT[i] = BT[j]
    BT[j] = tt
    te = BE[i]
    BE[i] = BE[j]
    BE[j] = te


def _bcmp(BC, BX, BY, BT, i, j, sgn):
    return sgn * key_cmp(BC[i], BX[i], BY[i], BT[i], BC[j], BX[j], BY[j], BT[j])


def _median5_index(BC, BX, BY, BT, BE, lo, hi, sgn):
    # insertion sort the group [lo, hi) and return its middle index
    for i in range(lo + 1, hi):
        j = i
        while j > lo and _bcmp(BC, BX, BY, BT, j, j - 1, sgn) < 0:
            _swap(BC, BX, BY, BT, BE, j, j - 1)
            j -= 1
    return lo + (hi - lo - 1) // 2


def _pivot(BC, BX, BY, BT, BE, lo, hi, sgn):
    """Median of group-of-five medians, gathered at the front of [lo, hi)."""
    if hi - lo <= 5:
        return _median5_index(BC, BX, BY, BT, BE, lo, hi, sgn)
    m = lo
    g = lo
    while g < hi:
        e = g + 5
        if e > hi:
            e = hi
        mid = _median5_index(BC, BX, BY, BT, BE, g, e, sgn)
        _swap(BC, BX, BY, BT, BE, m, mid)
        m += 1
        g += 5
    # exact median of the gathered medians
    return _qselect_plain(BC, BX, BY, BT, BE, lo, m, lo + (m - lo - 1) // 2, sgn)


def _qselect_plain(BC, BX, BY, BT, BE, lo, hi, target, sgn):
    while hi - lo > 1:
        p = _partition(BC, BX, BY, BT, BE, lo, hi, lo + (hi - lo) // 2, sgn)
        if p == target:
            return p
        if target < p:
            hi = p
        else:
            lo = p + 1
    return target


def _partition(BC, BX, BY, BT, BE, lo, hi, p, sgn):
    _swap(BC, BX, BY, BT, BE, p, hi - 1)
    store = lo
    for i in range(lo, hi - 1):
        if _bcmp(BC, BX, BY, BT, i, hi - 1, sgn) < 0:
            _swap(BC, BX, BY, BT, BE, i, store)
            store += 1
    _swap(BC, BX, BY, BT, BE, store, hi - 1)
    return store


def _qselect(BC, BX, BY, BT, BE, lo, hi, target, sgn):
    """Place the element of rank ``target`` at index ``target`` within [lo, hi)."""
    while hi - lo > 1:
        p = _pivot(BC, BX, BY, BT, BE, lo, hi, sgn)
        p = _partition(BC, BX, BY, BT, BE, lo, hi, p, sgn)
        if p == target:
            return p
        if target < p:
            hi = p
        else:
            lo = p + 1
    return target


def _keep_smallest(BC, BX, BY, BT, BE, size, s, sgn):
    if size <= s:
        return size
    _qselect(BC, BX, BY, BT, BE, 0, size, s - 1, sgn)
    return s


def _sift(BC, BX, BY, BT, BE, start, end, sgn):
    root = start
    while True:
        child = 2 * root + 1
        if child >= end:
            return
        if child + 1 < end and _bcmp(BC, BX, BY, BT, child, child + 1, sgn) < 0:
            child += 1
        if _bcmp(BC, BX, BY, BT, root, child, sgn) < 0:
            _swap(BC, BX, BY, BT, BE, root, child)
            root = child
        else:
            return


def _heapsort(BC, BX, BY, BT, BE, size, sgn):
    for start in range((size - 2) // 2, -1, -1):
        _sift(BC, BX, BY, BT, BE, start, size, sgn)
    for end in range(size - 1, 0, -1):
        _swap(BC, BX, BY, BT, BE, 0, end)
        _sift(BC, BX, BY, BT, BE, 0, end, sgn)


# -- passes over the edges ----------------------------------------------------


def select_entries(X, Y, NX, PV, vi, cv, kc, kx, ky, kt, s, sgn, BC, BX, BY, BT, BE):
    """The ``s`` ray entries nearest to key ``k`` on one side of it.

    ``sgn=+1`` keeps the smallest entries strictly above ``k``; ``sgn=-1``
    keeps the largest strictly below, listed nearest first.  Buffers hold
    ``2s`` records: fill, cut back to ``s`` at the median, refill in batches
    of ``s``.  Returns ``(count, reads, status)``.
    """
    n = len(X)
    size = 0
    reads = 3
    cap = 2 * s
    for j in range(n):
        if NX[j] < 0:
            continue
        reads += 2
        cnt, den, num, tb = edge_entry(X, Y, NX, PV, vi, cv, j)
        if cnt < 0:
            return 0, reads, -1
        for r in range(cnt):
            t = tb + r
            if sgn * key_cmp(0, den, num, t, kc, kx, ky, kt) <= 0:
                continue
            BC[size] = 0
            BX[size] = den
            BY[size] = num
            BT[size] = t
            BE[size] = j
            size += 1
            if size == cap:
                size = _keep_smallest(BC, BX, BY, BT, BE, size, s, sgn)
    size = _keep_smallest(BC, BX, BY, BT, BE, size, s, sgn)
    _heapsort(BC, BX, BY, BT, BE, size, sgn)
    return size, reads, 0


def count_below(X, Y, NX, PV, vi, cv, kc, kx, ky, kt):
    """Number of ray entries strictly below key ``k``; also the entry total."""
    n = len(X)
    below = 0
    total = 0
    reads = 3
    for j in range(n):
        if NX[j] < 0:
            continue
        reads += 2
        cnt, den, num, tb = edge_entry(X, Y, NX, PV, vi, cv, j)
        if cnt < 0:
            return 0, 0, reads, -1
        for r in range(cnt):
            total += 1
            if key_cmp(0, den, num, tb + r, kc, kx, ky, kt) < 0:
                below += 1
    return below, total, reads, 0


# -- passes over the vertices -------------------------------------------------


def select_vertices(X, Y, NX, PV, lc, lx, ly, s, crit_only, BC, BX, BY, BT, BE):
    """The ``s`` vertices of smallest angle strictly above angle key ``l``."""
    n = len(X)
    size = 0
    reads = 0
    cap = 2 * s
    for i in range(n):
        reads += 1
        if crit_only == 1:
            reads += 2
            cl = vclass(X, Y, NX, PV, i)
            if cl < 0:
                return 0, reads, -1
            if cl == NONCRIT:
                continue
        x = X[i]
        y = Y[i]
        h = half_plane(x, y)
        if key_cmp(h, x, y, 0, lc, lx, ly, 0) <= 0:
            continue
        BC[size] = h
        BX[size] = x
        BY[size] = y
        BT[size] = 0
        BE[size] = i
        size += 1
        if size == cap:
            size = _keep_smallest(BC, BX, BY, BT, BE, size, s, 1)
    size = _keep_smallest(BC, BX, BY, BT, BE, size, s, 1)
    _heapsort(BC, BX, BY, BT, BE, size, 1)
    return size, reads, 0


def scan_critical(X, Y, NX, PV):
    """Count critical vertices and find the one of smallest angle."""
    n = len(X)
    c = 0
    best = -1
    reads = 0
    for i in range(n):
        reads += 3
        cl = vclass(X, Y, NX, PV, i)
        if cl < 0:
            return 0, -1, reads, -1
        if cl == NONCRIT:
            continue
        c += 1
        if best < 0:
            best = i
        else:
            hb = half_plane(X[best], Y[best])
            hi = half_plane(X[i], Y[i])
            if key_cmp(hi, X[i], Y[i], 0, hb, X[best], Y[best], 0) < 0:
                best = i
    return c, best, reads, 0


def chain_walk(X, Y, NX, PV, start_edge, from_vi, to_vi, to_cv):
    """Follow the chain through ``start_edge`` from ray q->from_vi to ray q->to_vi.

    Walks in the direction of increasing angle and returns the first edge
    that meets the target ray, or -1 when the chain ends first.
    """
    n = len(X)
    fx = X[from_vi]
    fy = Y[from_vi]
    a = start_edge
    b = NX[a]
    reads = 4
    if a == from_vi:
        forward = 1
    elif b == from_vi:
        forward = 0
    else:
        forward = 1 if fx * Y[b] - fy * X[b] > 0 else 0
    e = start_edge
    for _ in range(n + 1):
        if e < 0 or NX[e] < 0:
            return -1, reads, 0
        reads += 2
        cnt, den, num, tb = edge_entry(X, Y, NX, PV, to_vi, to_cv, e)
        if cnt < 0:
            return -1, reads, -1
        if cnt > 0:
            return e, reads, 0
        if e == to_vi or NX[e] == to_vi:
            return e, reads, 0
        if forward == 1:
            w = NX[e]
            e = w
        else:
            w = e
            e = PV[w]
    return -1, reads, 0


# -- point classification and validation ----------------------------------------


def _orient(ax, ay, bx, by, cx, cy):
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def _between(ax, ay, bx, by, px, py):
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def segment_crossings(X, Y, NX, px, py):
    """Proper crossings of the open segment q->p with every edge; -1 if it grazes."""
    n = len(X)
    count = 0
    for j in range(n):
        b = NX[j]
        if b < 0:
            continue
        ax = X[j]
        ay = Y[j]
        bx = X[b]
        by = Y[b]
        o1 = _orient(0, 0, px, py, ax, ay)
        o2 = _orient(0, 0, px, py, bx, by)
        o3 = _orient(ax, ay, bx, by, 0, 0)
        o4 = _orient(ax, ay, bx, by, px, py)
        if o1 == 0 and _between(0, 0, px, py, ax, ay):
            return -1
        if o2 == 0 and _between(0, 0, px, py, bx, by):
            return -1
        if o4 == 0 and _between(ax, ay, bx, by, px, py):
            return -1
        if o3 == 0 and _between(ax, ay, bx, by, 0, 0):
            return -1
        if o1 * o2 < 0 and o3 * o4 < 0:
            count += 1
    return count


def first_bad_pair(X, Y, NX):
    """First pair of edges that meet other than at a shared endpoint, else (-1, -1)."""
    n = len(X)
    for i in range(n):
        bi = NX[i]
        if bi < 0:
            continue
        for j in range(i + 1, n):
            bj = NX[j]
            if bj < 0:
                continue
            shared = 0
            if bi == j or bj == i:
                shared = 1
            o1 = _orient(X[i], Y[i], X[bi], Y[bi], X[j], Y[j])
            o2 = _orient(X[i], Y[i], X[bi], Y[bi], X[bj], Y[bj])
            o3 = _orient(X[j], Y[j], X[bj], Y[bj], X[i], Y[i])
            o4 = _orient(X[j], Y[j], X[bj], Y[bj], X[bi], Y[bi])
            if shared == 1:
                if o1 == 0 and o2 == 0:
                    # collinear neighbours: bad only if they fold back
                    if bi == j:
                        fx = X[bj] - X[j]
                        fy = Y[bj] - Y[j]
                        gx = X[i] - X[bi]
                        gy = Y[i] - Y[bi]
                    else:
                        fx = X[bi] - X[i]
                        fy = Y[bi] - Y[i]
                        gx = X[j] - X[bj]
                        gy = Y[j] - Y[bj]
                    if fx * gx + fy * gy > 0:
                        return i, j
                continue
            if o1 * o2 < 0 and o3 * o4 < 0:
                return i, j
            if o1 == 0 and _between(X[i], Y[i], X[bi], Y[bi], X[j], Y[j]):
                return i, j
            if o2 == 0 and _between(X[i], Y[i], X[bi], Y[bi], X[bj], Y[bj]):
                return i, j
            if o3 == 0 and _between(X[j], Y[j], X[bj], Y[bj], X[i], Y[i]):
                return i, j
            if o4 == 0 and _between(X[j], Y[j], X[bj], Y[bj], X[bi], Y[bi]):
                return i, j
    return -1, -1
