"""Compiled search kernels for the exact and heuristic table solvers.

The exact kernel runs depth-first branch and bound over injections,
maximizing pair agreement.  Elements of the source group are assigned
images in a static order chosen greedily to decide table triples as
early as possible.  The pruning bound at a partial assignment is

    disagreements among fully-decided triples
  + for each unassigned element u, (votes on u) - (largest vote block)
  + doomed pairs,

where a pair (x, y) casts a "vote" once exactly one of {x, y, x*y} is
unassigned: the Latin-square structure of the codomain then pins the
single image value of the missing element under which the pair can
still agree.  A pair whose agreement would force an already-assigned
image to be the codomain identity when it is not ("doomed") can never
agree.  Every term counts pairs that are already guaranteed to
disagree in any completion, so the bound never exceeds the true
completion cost.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# vote-record kinds: which role of the triple (x, y, z=x*y) is unassigned
_KZ, _KX, _KY, _DOOMX, _DOOMY = 0, 1, 2, 3, 4


def greedy_assignment_order(table, n: int) -> list[int]:
    """Static element order maximizing newly decided triples per step.

    Ties are broken by ascending element index.
    """
    chosen: list[int] = []
    inset = [False] * n
    order: list[int] = []
    for _ in range(n):
        best, best_gain = -1, -1
        for c in range(n):
            if inset[c]:
                continue
            members = set(chosen)
            members.add(c)
            gain = 0
            for x in chosen + [c]:
                for y in chosen + [c]:
                    z = table[x * n + y]
                    if (x == c or y == c or z == c) and z in members:
                        gain += 1
            if gain > best_gain:
                best, best_gain = c, gain
        order.append(best)
        inset[best] = True
        chosen.append(best)
    return order


def _static_structures(table, n: int, order: list[int]):
    """Per-position lists of newly decided triples and vote records."""
    pos = {e: t for t, e in enumerate(order)}
    decided: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    votes: list[list[tuple[int, int, int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            z = table[x * n + y]
            t_max = max(pos[x], pos[y], pos[z])
            decided[t_max].append((x, y))
            elems = {x, y, z}
            if len(elems) == 1:
                continue
            u = next(e for e in elems if pos[e] == t_max)
            t_second = max(pos[e] for e in elems if e != u)
            if u == z and u != x and u != y:
                votes[t_second].append((_KZ, x, y, z, u))
            elif u == x and u != y and u != z:
                votes[t_second].append((_KX, x, y, z, u))
            elif u == y and u != x and u != z:
                votes[t_second].append((_KY, x, y, z, u))
            elif u == x and u == z:
                # agreement would need img[y] to be the codomain identity
                votes[t_second].append((_DOOMY, x, y, z, u))
            elif u == y and u == z:
                votes[t_second].append((_DOOMX, x, y, z, u))
            # u == x == y != z (diagonal): multiple images may satisfy the
            # pair, so it contributes nothing to the bound
    return decided, votes


@njit(cache=True)
def _agreement_bnb(A, B, order, dec_off, dec_x, dec_y,
                   vote_off, vote_kind, vote_x, vote_y, vote_z, vote_u,
                   rsolve, lsolve, identity_b, node_cap):  # pragma: no cover
    na = A.shape[0]
    nb = B.shape[0]
    total = na * na
    img = np.full(na, -1, np.int64)
    used = np.zeros(nb, np.uint8)
    votes = np.zeros((na, nb), np.int64)
    vtot = np.zeros(na, np.int64)
    vmax = np.zeros(na, np.int64)
    gdoom = np.zeros(na, np.int64)

    cand_val = np.zeros((na, nb), np.int64)
    cand_delta = np.zeros((na, nb), np.int64)
    cand_cnt = np.zeros(na, np.int64)
    cand_idx = np.zeros(na, np.int64)
    dis_at = np.zeros(na + 1, np.int64)
    pen_at = np.zeros(na + 1, np.int64)
    cur_c = np.zeros(na, np.int64)

    nv = vote_kind.shape[0]
    log_u = np.zeros(nv, np.int64)
    log_val = np.zeros(nv, np.int64)
    log_bump = np.zeros(nv, np.uint8)
    log_cnt = np.zeros(na, np.int64)
    doom_log = np.zeros(nv, np.int64)
    doom_cnt = np.zeros(na, np.int64)

    best_val = np.int64(-1)
    best_wit = np.full(na, -1, np.int64)
    nodes = np.int64(0)
    completed = True

    t = 0
    need_candidates = True
    while t >= 0:
        if need_candidates:
            v = order[t]
            s0, s1 = dec_off[t], dec_off[t + 1]
            cnt = 0
            for c in range(nb):
                if used[c]:
                    continue
                nodes += 1
                img[v] = c
                d = 0
                for s in range(s0, s1):
                    x = dec_x[s]
                    y = dec_y[s]
                    if img[A[x, y]] != B[img[x], img[y]]:
                        d += 1
                # insertion sort keyed on (delta, value); scanning values in
                # ascending order keeps ties in ascending value order
                j = cnt
                while j > 0 and cand_delta[t, j - 1] > d:
                    cand_delta[t, j] = cand_delta[t, j - 1]
                    cand_val[t, j] = cand_val[t, j - 1]
                    j -= 1
                cand_delta[t, j] = d
                cand_val[t, j] = c
                cnt += 1
            img[v] = -1
            cand_cnt[t] = cnt
            cand_idx[t] = 0
            need_candidates = False
            # never abort before the first full descent records a witness
            if nodes > node_cap and best_val >= 0:
                completed = False
                break
            continue

        v = order[t]
        pen_v = vtot[v] - vmax[v] + gdoom[v]
        descended = False
        while cand_idx[t] < cand_cnt[t]:
            i = cand_idx[t]
            d = cand_delta[t, i]
            c = cand_val[t, i]
            cand_idx[t] = i + 1
            nd = dis_at[t] + d
            base_pen = pen_at[t] - pen_v
            if nd + base_pen >= total - best_val:
                cand_idx[t] = cand_cnt[t]  # candidates sorted: rest prune too
                break
            img[v] = c
            used[c] = 1
            npen = base_pen
            lc = 0
            dc = 0
            lbase = vote_off[t]
            for s in range(vote_off[t], vote_off[t + 1]):
                kd = vote_kind[s]
                if kd == 0:
                    val = B[img[vote_x[s]], img[vote_y[s]]]
                    u = vote_u[s]
                elif kd == 1:
                    val = rsolve[img[vote_z[s]], img[vote_y[s]]]
                    u = vote_u[s]
                elif kd == 2:
                    val = lsolve[img[vote_x[s]], img[vote_z[s]]]
                    u = vote_u[s]
                elif kd == 4:
                    if img[vote_y[s]] != identity_b:
                        u = vote_u[s]
                        gdoom[u] += 1
                        npen += 1
                        doom_log[lbase + dc] = u
                        dc += 1
                    continue
                else:
                    if img[vote_x[s]] != identity_b:
                        u = vote_u[s]
                        gdoom[u] += 1
                        npen += 1
                        doom_log[lbase + dc] = u
                        dc += 1
                    continue
                cnt2 = votes[u, val] + 1
                votes[u, val] = cnt2
                vtot[u] += 1
                if cnt2 > vmax[u]:
                    vmax[u] = cnt2
                    log_bump[lbase + lc] = 1
                else:
                    npen += 1
                    log_bump[lbase + lc] = 0
                log_u[lbase + lc] = u
                log_val[lbase + lc] = val
                lc += 1
            log_cnt[t] = lc
            doom_cnt[t] = dc
            cur_c[t] = c
            if nd + npen < total - best_val:
                if t + 1 == na:
                    best_val = total - nd
                    for q in range(na):
                        best_wit[q] = img[q]
                else:
                    dis_at[t + 1] = nd
                    pen_at[t + 1] = npen
                    t += 1
                    need_candidates = True
                    descended = True
                    break
            # undo this assignment and keep scanning candidates
            for s in range(lc - 1, -1, -1):
                u = log_u[lbase + s]
                votes[u, log_val[lbase + s]] -= 1
                vtot[u] -= 1
                if log_bump[lbase + s]:
                    vmax[u] -= 1
            for s in range(dc - 1, -1, -1):
                gdoom[doom_log[lbase + s]] -= 1
            used[c] = 0
            img[v] = -1
        if descended:
            continue
        t -= 1
        if t >= 0:
            v = order[t]
            c = cur_c[t]
            lbase = vote_off[t]
            for s in range(log_cnt[t] - 1, -1, -1):
                u = log_u[lbase + s]
                votes[u, log_val[lbase + s]] -= 1
                vtot[u] -= 1
                if log_bump[lbase + s]:
                    vmax[u] -= 1
            for s in range(doom_cnt[t] - 1, -1, -1):
                gdoom[doom_log[lbase + s]] -= 1
            used[c] = 0
            img[v] = -1
    return best_val, best_wit, nodes, completed


def _csr(int_lists) -> tuple[np.ndarray, list[np.ndarray]]:
    """Flatten per-position record lists into offset + column arrays."""
    n = len(int_lists)
    width = 0
    for lst in int_lists:
        if lst:
            width = len(lst[0])
            break
    off = np.zeros(n + 1, np.int64)
    cols: list[list[int]] = [[] for _ in range(width)]
    for t in range(n):
        for rec in int_lists[t]:
            for w in range(width):
                cols[w].append(rec[w])
        off[t + 1] = len(cols[0]) if width else 0
    arrays = [np.array(col, np.int64) if col else np.zeros(0, np.int64) for col in cols]
    return off, arrays


def max_agreement(a_table, na: int, b_table, nb: int, identity_b: int,
                  node_budget: int) -> tuple[int, list[int], int, bool]:
    """Branch-and-bound maximum of #{(x,y): phi(x*y) = phi(x)*phi(y)}
    over total injections phi, with witness, node count and a flag
    telling whether the search ran to completion within the budget."""
    if na > nb:
        raise ValueError(f"domain order {na} exceeds codomain order {nb}")
    A = np.array(a_table, np.int64).reshape(na, na)
    B = np.array(b_table, np.int64).reshape(nb, nb)
    order = greedy_assignment_order(a_table, na)
    decided, votes = _static_structures(a_table, na, order)
    dec_off, (dec_x, dec_y) = _csr([[(x, y) for (x, y) in decided[t]] for t in range(na)])
    vote_off, vote_arrays = _csr([votes[t] for t in range(na)])
    if len(vote_arrays) == 0:
        vote_arrays = [np.zeros(0, np.int64)] * 5
    vote_kind, vote_x, vote_y, vote_z, vote_u = vote_arrays
    # rsolve[v, w]: the c with c*w = v; lsolve[u, v]: the c with u*c = v
    rsolve = np.zeros((nb, nb), np.int64)
    lsolve = np.zeros((nb, nb), np.int64)
    for c in range(nb):
        for w in range(nb):
            v = b_table[c * nb + w]
            rsolve[v, w] = c
            lsolve[c, v] = w
    best, wit, nodes, completed = _agreement_bnb(
        A, B, np.array(order, np.int64), dec_off, dec_x, dec_y,
        vote_off, vote_kind, vote_x, vote_y, vote_z, vote_u,
        rsolve, lsolve, identity_b, node_budget,
    )
    return int(best), [int(v) for v in wit], int(nodes), bool(completed)


# ---------------------------------------------------------------------------
# local search

@njit(cache=True)
def _descent(A, B, m, prod_off, prod_x, prod_y, swap_u, swap_v,
             stamp, stamp_ctr):  # pragma: no cover
    """First-improvement descent over image transpositions.

    Candidate swaps are scanned cyclically in lexicographic order; the
    first improving swap is applied and scanning resumes after it.  A
    swap of images (u, v) only affects pairs whose row, column, or
    product involves u or v; those are re-counted directly, deduplicated
    through the stamp matrix.
    """
    n = A.shape[0]
    d = 0
    for x in range(n):
        for y in range(n):
            if m[A[x, y]] != B[m[x], m[y]]:
                d += 1
    n_swaps = swap_u.shape[0]
    pos = 0
    checked = 0
    evals = 0
    ctr = stamp_ctr
    while checked < n_swaps:
        s = pos + checked
        if s >= n_swaps:
            s -= n_swaps
        u = swap_u[s]
        v = swap_v[s]
        evals += 1
        ctr += 1
        mu = m[u]
        mv = m[v]
        delta = 0
        for part in range(6):
            if part < 4:
                lo, hi = 0, n
            elif part == 4:
                lo, hi = prod_off[u], prod_off[u + 1]
            else:
                lo, hi = prod_off[v], prod_off[v + 1]
            for i in range(lo, hi):
                if part == 0:
                    x, y = u, i
                elif part == 1:
                    x, y = v, i
                elif part == 2:
                    x, y = i, u
                elif part == 3:
                    x, y = i, v
                else:
                    x, y = prod_x[i], prod_y[i]
                if stamp[x, y] == ctr:
                    continue
                stamp[x, y] = ctr
                z = A[x, y]
                old = 1 if m[z] != B[m[x], m[y]] else 0
                ix = mv if x == u else (mu if x == v else m[x])
                iy = mv if y == u else (mu if y == v else m[y])
                iz = mv if z == u else (mu if z == v else m[z])
                new = 1 if iz != B[ix, iy] else 0
                delta += new - old
        if delta < 0:
            m[u] = mv
            m[v] = mu
            d += delta
            pos = s + 1
            if pos >= n_swaps:
                pos = 0
            checked = 0
        else:
            checked += 1
    return d, evals, ctr


class DescentContext:
    """Reusable precomputed structures for repeated descents on one pair."""

    def __init__(self, a_table, na: int, b_table, nb: int):
        if na != nb:
            raise ValueError("local search requires equal orders")
        self.n = na
        self.A = np.array(a_table, np.int64).reshape(na, na)
        self.B = np.array(b_table, np.int64).reshape(nb, nb)
        buckets: list[list[tuple[int, int]]] = [[] for _ in range(na)]
        for x in range(na):
            for y in range(na):
                buckets[a_table[x * na + y]].append((x, y))
        off = np.zeros(na + 1, np.int64)
        px: list[int] = []
        py: list[int] = []
        for u in range(na):
            for (x, y) in buckets[u]:
                px.append(x)
                py.append(y)
            off[u + 1] = len(px)
        self.prod_off = off
        self.prod_x = np.array(px, np.int64)
        self.prod_y = np.array(py, np.int64)
        su: list[int] = []
        sv: list[int] = []
        for u in range(na):
            for v in range(u + 1, na):
                su.append(u)
                sv.append(v)
        self.swap_u = np.array(su, np.int64) if su else np.zeros(0, np.int64)
        self.swap_v = np.array(sv, np.int64) if sv else np.zeros(0, np.int64)
        self.stamp = np.zeros((na, na), np.int64)
        self.stamp_ctr = 0

    def descend(self, start: list[int]) -> tuple[int, list[int], int]:
        """Run descent from the given bijection; returns (distance, map, evals)."""
        m = np.array(start, np.int64)
        d, evals, self.stamp_ctr = _descent(
            self.A, self.B, m, self.prod_off, self.prod_x, self.prod_y,
            self.swap_u, self.swap_v, self.stamp, self.stamp_ctr,
        )
        return int(d), [int(v) for v in m], int(evals)
