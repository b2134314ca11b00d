"""Compiled inner loop of the cover search (see ``synthesis``).

State lives in flat arrays bundled in one tuple ``st``:

    var_of[c, v]   variable of vertex v under coloring c
    need[c, v]     color of v in coloring c
    cov_ptr/idx    colorings covered by variable x with color k (CSR, row x*q+k)
    domain[x]      bitmask of colors still allowed for x
    value[x]       fixed color or -1
    covered[c]     number of fixed variables matching coloring c
    dead[c]        variables of c whose needed color is no longer allowed
    unc[x, k]      uncovered colorings x would cover with color k
    pot[x]         max of unc[x, k] over the domain
    match, load    routing of uncovered colorings in the matching relaxation
    trail_x/k      removed (variable, color) pairs, for undo
    pend           colorings waiting for unit propagation
    sc             scalars, indexed by the constants below
"""
import numpy as np
from numba import njit

CAPACITY, UNCOVERED, TRAIL, NODES, FORCED, MAXW, PEND, STAMP = range(8)

S_WINNING, S_IMPOSSIBLE, S_BUDGET = 0, 1, 2


@njit(cache=True)
def _repot(st, x):
    (var_of, need, cov_ptr, cov_idx, domain, value, covered, dead, unc, pot,
     match, load, trail_x, trail_k, pend, sc, parent_c, parent_v, mark_c, mark_x, queue) = st
    q = unc.shape[1]
    dom = domain[x]
    best = 0
    for k in range(q):
        if (dom >> k) & 1 and unc[x, k] > best:
            best = unc[x, k]
    if value[x] < 0:
        sc[CAPACITY] += best - pot[x]
    pot[x] = best


@njit(cache=True)
def _cover_change(st, c, delta):
    var_of, need, domain, unc = st[0], st[1], st[4], st[8]
    n = var_of.shape[1]
    for v in range(n):
        x = var_of[c, v]
        k = need[c, v]
        unc[x, k] -= delta
        if (domain[x] >> k) & 1:
            _repot(st, x)


@njit(cache=True)
def _fix(st, x, color):
    cov_ptr, cov_idx, value, covered, pot, sc = st[2], st[3], st[5], st[6], st[9], st[15]
    q = st[8].shape[1]
    value[x] = color
    sc[CAPACITY] -= pot[x]
    r = x * q + color
    for j in range(cov_ptr[r], cov_ptr[r + 1]):
        c = cov_idx[j]
        covered[c] += 1
        if covered[c] == 1:
            sc[UNCOVERED] -= 1
            _cover_change(st, c, 1)


@njit(cache=True)
def _remove(st, x, k):
    """Drop color k from x; False on conflict."""
    (var_of, need, cov_ptr, cov_idx, domain, value, covered, dead, unc, pot,
     match, load, trail_x, trail_k, pend, sc, parent_c, parent_v, mark_c, mark_x, queue) = st
    n = var_of.shape[1]
    q = unc.shape[1]
    dom = domain[x] & ~(np.int64(1) << k)
    domain[x] = dom
    t = sc[TRAIL]
    trail_x[t] = x
    trail_k[t] = k
    sc[TRAIL] = t + 1
    _repot(st, x)
    ok = dom != 0
    r = x * q + k
    for j in range(cov_ptr[r], cov_ptr[r + 1]):
        c = cov_idx[j]
        dead[c] += 1
        if covered[c] == 0:
            if dead[c] == n:
                ok = False
            elif dead[c] == n - 1:
                p = sc[PEND]
                pend[p] = c
                sc[PEND] = p + 1
    if ok and (dom & (dom - 1)) == 0:
        b = 0
        while (dom >> b) != 1:
            b += 1
        _fix(st, x, b)
    return ok


@njit(cache=True)
def _undo_to(st, mark):
    (var_of, need, cov_ptr, cov_idx, domain, value, covered, dead, unc, pot,
     match, load, trail_x, trail_k, pend, sc, parent_c, parent_v, mark_c, mark_x, queue) = st
    q = unc.shape[1]
    while sc[TRAIL] > mark:
        t = sc[TRAIL] - 1
        sc[TRAIL] = t
        x = trail_x[t]
        k = trail_k[t]
        val = value[x]
        if val >= 0:
            r = x * q + val
            for j in range(cov_ptr[r], cov_ptr[r + 1]):
                c = cov_idx[j]
                covered[c] -= 1
                if covered[c] == 0:
                    sc[UNCOVERED] += 1
                    _cover_change(st, c, -1)
            value[x] = -1
            sc[CAPACITY] += pot[x]
        domain[x] |= np.int64(1) << k
        _repot(st, x)
        r = x * q + k
        for j in range(cov_ptr[r], cov_ptr[r + 1]):
            dead[cov_idx[j]] -= 1


@njit(cache=True)
def _assign(st, x, color):
    domain = st[4]
    q = st[8].shape[1]
    for k in range(q):
        if k != color and (domain[x] >> k) & 1:
            if not _remove(st, x, k):
                return False
    return True


@njit(cache=True)
def _augment(st, c0):
    """Breadth-first augmenting path from uncovered coloring c0."""
    (var_of, need, cov_ptr, cov_idx, domain, value, covered, dead, unc, pot,
     match, load, trail_x, trail_k, pend, sc, parent_c, parent_v, mark_c, mark_x, queue) = st
    n = var_of.shape[1]
    q = unc.shape[1]
    sc[STAMP] += 1
    stamp = sc[STAMP]
    mark_c[c0] = stamp
    parent_c[c0] = -1
    head = 0
    tail = 1
    queue[0] = c0
    while head < tail:
        cur = queue[head]
        head += 1
        for v in range(n):
            x = var_of[cur, v]
            if value[x] >= 0 or not (domain[x] >> need[cur, v]) & 1 or mark_x[x] == stamp:
                continue
            mark_x[x] = stamp
            if load[x] < pot[x]:
                load[x] += 1
                while True:
                    match[cur] = v
                    p = parent_c[cur]
                    if p < 0:
                        return True
                    v = parent_v[cur]
                    cur = p
            dom = domain[x]
            for k in range(q):
                if (dom >> k) & 1:
                    r = x * q + k
                    for j in range(cov_ptr[r], cov_ptr[r + 1]):
                        c2 = cov_idx[j]
                        if match[c2] == v and covered[c2] == 0 and mark_c[c2] != stamp:
                            mark_c[c2] = stamp
                            parent_c[c2] = cur
                            parent_v[c2] = v
                            queue[tail] = c2
                            tail += 1
    return False


@njit(cache=True)
def _flow_ok(st):
    """Every uncovered coloring routed to a distinct open slot (pot[x] slots per variable)."""
    (var_of, need, cov_ptr, cov_idx, domain, value, covered, dead, unc, pot,
     match, load, trail_x, trail_k, pend, sc, parent_c, parent_v, mark_c, mark_x, queue) = st
    ncol = var_of.shape[0]
    load[:] = 0
    nfree = 0
    for c in range(ncol):
        if covered[c] > 0:
            match[c] = -1
            continue
        v = match[c]
        if v >= 0:
            x = var_of[c, v]
            if value[x] < 0 and (domain[x] >> need[c, v]) & 1 and load[x] < pot[x]:
                load[x] += 1
                continue
            match[c] = -1
        # free colorings are queued at the back of pend, which is empty here
        pend[pend.shape[0] - 1 - nfree] = c
        nfree += 1
    for i in range(nfree):
        if not _augment(st, pend[pend.shape[0] - 1 - i]):
            return False
    return True


@njit(cache=True)
def _propagate(st):
    (var_of, need, cov_ptr, cov_idx, domain, value, covered, dead, unc, pot,
     match, load, trail_x, trail_k, pend, sc, parent_c, parent_v, mark_c, mark_x, queue) = st
    n = var_of.shape[1]
    q = unc.shape[1]
    nvar = domain.shape[0]
    while True:
        while sc[PEND] > 0:
            sc[PEND] -= 1
            c = pend[sc[PEND]]
            if covered[c] > 0 or dead[c] != n - 1:
                continue
            for v in range(n):
                x = var_of[c, v]
                if (domain[x] >> need[c, v]) & 1:
                    break
            sc[FORCED] += 1
            if not _assign(st, x, need[c, v]):
                sc[PEND] = 0
                return False
        slack = sc[CAPACITY] - sc[UNCOVERED]
        if slack < 0:
            return False
        if slack >= sc[MAXW]:
            return _flow_ok(st)
        # a color losing more than the slack in coverage cannot be chosen
        restart = False
        for x in range(nvar):
            if value[x] >= 0 or pot[x] <= slack:
                continue
            floor = pot[x] - slack
            for k in range(q):
                if value[x] >= 0:
                    break
                if (domain[x] >> k) & 1 and unc[x, k] < floor:
                    if not _remove(st, x, k):
                        sc[PEND] = 0
                        return False
            if sc[PEND] > 0 or sc[CAPACITY] - sc[UNCOVERED] != slack:
                restart = True
                break
        if not restart:
            return _flow_ok(st)


@njit(cache=True)
def _pick(st):
    """Uncovered coloring with the most dead variables (least index on ties)."""
    var_of, covered, dead = st[0], st[6], st[7]
    ncol, n = var_of.shape
    best = -1
    best_dead = -1
    for c in range(ncol):
        if covered[c] == 0 and dead[c] > best_dead:
            best = c
            best_dead = dead[c]
            if best_dead == n - 2:
                break
    return best


@njit(cache=True)
def _apply(st, kind, a, b, alt_ptr, alt_x, alt_k):
    if kind == 1:
        return _remove(st, a, b)
    if kind == 2:
        return _assign(st, a, b)
    domain = st[4]
    for j in range(alt_ptr[a], alt_ptr[a + 1]):
        x = alt_x[j]
        k = alt_k[j]
        if not (domain[x] >> k) & 1 or not _assign(st, x, k):
            return False
    return True


@njit(cache=True)
def search(st, step_ptr, alt_ptr, alt_x, alt_k, node_budget):
    """Depth-first search; root levels range over the alternatives of each step.

    Frames are (kind, a, b, next alternative, trail mark, next step): kind 0 is
    a root step whose alternatives are step_ptr[a]..step_ptr[a+1]-1, kind 2 the
    binary branch x=a := color b, then x != b.
    """
    var_of, need, domain, sc = st[0], st[1], st[4], st[15]
    n = var_of.shape[1]
    nsteps = step_ptr.shape[0] - 1
    if sc[UNCOVERED] > sc[CAPACITY] or not _propagate(st):
        return S_IMPOSSIBLE
    depth_max = domain.shape[0] * st[8].shape[1] + nsteps + 2
    f_kind = np.empty(depth_max, np.int64)
    f_a = np.empty(depth_max, np.int64)
    f_b = np.empty(depth_max, np.int64)
    f_i = np.empty(depth_max, np.int64)
    f_mark = np.empty(depth_max, np.int64)
    f_next = np.empty(depth_max, np.int64)
    top = 0
    step = 0
    while True:
        if step < nsteps:
            f_kind[top] = 0
            f_a[top] = step
            f_b[top] = 0
            f_next[top] = step + 1
        else:
            c = _pick(st)
            if c < 0:
                return S_WINNING
            for v in range(n):
                x = var_of[c, v]
                if (domain[x] >> need[c, v]) & 1:
                    break
            f_kind[top] = 2
            f_a[top] = x
            f_b[top] = need[c, v]
            f_next[top] = step
        f_i[top] = 0
        f_mark[top] = sc[TRAIL]
        top += 1
        advanced = False
        while top > 0:
            t = top - 1
            _undo_to(st, f_mark[t])
            i = f_i[t]
            if f_kind[t] == 0:
                s = f_a[t]
                if i == step_ptr[s + 1] - step_ptr[s]:
                    top -= 1
                    continue
                kind, a, b = 0, step_ptr[s] + i, 0
            else:
                if i == 2:
                    top -= 1
                    continue
                kind, a, b = (2 if i == 0 else 1), f_a[t], f_b[t]
            f_i[t] = i + 1
            sc[NODES] += 1
            if sc[NODES] > node_budget:
                return S_BUDGET
            sc[PEND] = 0
            if _apply(st, kind, a, b, alt_ptr, alt_x, alt_k) and _propagate(st):
                step = f_next[t]
                advanced = True
                break
        if not advanced:
            return S_IMPOSSIBLE
