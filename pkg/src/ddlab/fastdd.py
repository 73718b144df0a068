"""Compiled enumeration and relation generation for DD strata.

This is a fast path for the builtin 1T/2T/3T templates.  Its rows are the
same as the generic template engine's (the test suite checks every small
stratum), so it may stand in for it whenever the active DD templates are
the builtin ones.

Diagrams are packed into one integer key: base-16 digits, component
lengths first, then the canonical token sequence.  Keys sort in a
different order than :class:`~ddlab.diagrams.Diagram` objects, so callers
map key positions to basis positions.

Large strata are eliminated modulo a prime by propagation.  Each relation
with a single undetermined diagram defines that diagram in terms of the
free generators picked so far.  What is left is a small dense system among
the free generators.  The result is an upper bound on the rational
quotient dimension; :mod:`ddlab.relations` pairs it with an exact lower
bound.
"""

from __future__ import annotations

import numba as nb
import numpy as np

from . import diagrams as dg

PRIME = 2147483629  # largest prime below 2**31: products fit in int64

_MAX_DIGITS = 15


# ---------------------------------------------------------------------------
# canonical keys


@nb.njit(cache=True)
def _canon_key(tok, lens, closed, unit, mp, cur, best, rot, off):
    m = lens.shape[0]
    total = 0
    for c in range(m):
        off[c] = total
        total += lens[c]
        rot[c] = 0
    # a winning rotation of the first nonempty component starts with its
    # least part (the first token always gets id 1)
    c0 = -1
    low = unit
    for c in range(m):
        if lens[c] > 0:
            c0 = c
            for i in range(lens[c]):
                t = tok[off[c] + i] % unit
                if t < low:
                    low = t
            break
    have = False
    while True:
        if c0 >= 0 and closed[c0] and tok[off[c0] + rot[c0]] % unit != low:
            c = m - 1
            while c >= 0:
                if closed[c] and lens[c] > 1:
                    rot[c] += 1
                    if rot[c] < lens[c]:
                        break
                    rot[c] = 0
                c -= 1
            if c < 0:
                break
            continue
        for x in range(mp.shape[0]):
            mp[x] = 0
        nxt = 1
        better = not have
        worse = False
        pos = 0
        for c in range(m):
            lc = lens[c]
            o = off[c]
            r = rot[c]
            for i in range(lc):
                j = i + r
                if j >= lc:
                    j -= lc
                t = tok[o + j]
                ident = t // unit
                v = mp[ident]
                if v == 0:
                    v = nxt
                    mp[ident] = nxt
                    nxt += 1
                v = v * unit + (t - ident * unit)
                if not better:
                    if v > best[pos]:
                        worse = True
                        break
                    if v < best[pos]:
                        better = True
                cur[pos] = v
                pos += 1
            if worse:
                break
        if better and not worse:
            for i in range(total):
                best[i] = cur[i]
            have = True
        # next rotation combination (mixed radix over circles)
        c = m - 1
        while c >= 0:
            if closed[c] and lens[c] > 1:
                rot[c] += 1
                if rot[c] < lens[c]:
                    break
                rot[c] = 0
            c -= 1
        if c < 0:
            break
    key = 0
    for c in range(m):
        key = key * 16 + lens[c]
    for i in range(total):
        key = key * 16 + best[i]
    return key


@nb.njit(cache=True)
def _insert(tok, lens, comp, gap, value, out_tok, out_lens):
    """Copy ``tok`` with ``value`` inserted before position ``gap`` of ``comp``."""
    m = lens.shape[0]
    o = 0
    w = 0
    for c in range(m):
        lc = lens[c]
        out_lens[c] = lc + (1 if c == comp else 0)
        for i in range(lc):
            if c == comp and i == gap:
                out_tok[w] = value
                w += 1
            out_tok[w] = tok[o + i]
            w += 1
        if c == comp and gap == lc:
            out_tok[w] = value
            w += 1
        o += lc


@nb.njit(cache=True)
def _gaps(lc, closed):
    if closed:
        return lc if lc > 0 else 1
    return lc + 1


# ---------------------------------------------------------------------------
# enumeration by pair insertion


@nb.njit(cache=True)
def _extend(ctok, clens, closed, n, types, count_only, out):
    """Insert a new pair (id ``n``) into every context in every way."""
    N = ctok.shape[0]
    m = closed.shape[0]
    L = 4 * n
    t1 = np.zeros(L, np.int64)
    t2 = np.zeros(L, np.int64)
    t3 = np.zeros(L, np.int64)
    t4 = np.zeros(L, np.int64)
    l1 = np.zeros(m, np.int64)
    l2 = np.zeros(m, np.int64)
    l3 = np.zeros(m, np.int64)
    l4 = np.zeros(m, np.int64)
    mp = np.zeros(n + 2, np.int64)
    cur = np.zeros(L, np.int64)
    best = np.zeros(L, np.int64)
    rot = np.zeros(m, np.int64)
    off = np.zeros(m, np.int64)
    plus = 2 * n
    minus = 2 * n + 1
    cnt = 0
    for d in range(N):
        tok = ctok[d]
        lens = clens[d]
        for ti in range(types.shape[0]):
            a = types[ti, 0]
            b = types[ti, 1]
            for g1 in range(_gaps(lens[a], closed[a])):
                _insert(tok, lens, a, g1, plus, t1, l1)
                for g2 in range(_gaps(l1[b], closed[b])):
                    _insert(t1, l1, b, g2, plus, t2, l2)
                    for g3 in range(_gaps(l2[a], closed[a])):
                        _insert(t2, l2, a, g3, minus, t3, l3)
                        for g4 in range(_gaps(l3[b], closed[b])):
                            if not count_only:
                                _insert(t3, l3, b, g4, minus, t4, l4)
                                out[cnt] = _canon_key(t4, l4, closed, 2, mp, cur, best, rot, off)
                            cnt += 1
    return cnt


def _pair_types(m):
    return np.array([(a, b) for a in range(m) for b in range(a, m)], dtype=np.int64)


def decode_keys(keys, m, length):
    """Keys -> (tokens, lengths) arrays of shapes (N, length) and (N, m)."""
    keys = np.asarray(keys, dtype=np.int64)
    digits = m + length
    shifts = 4 * np.arange(digits - 1, -1, -1, dtype=np.int64)
    ds = (keys[:, None] >> shifts[None, :]) & 15
    return np.ascontiguousarray(ds[:, m:]), np.ascontiguousarray(ds[:, :m])


def _check_size(degree, m):
    if 4 * degree + m > _MAX_DIGITS or 2 * degree + 1 > 15:
        raise dg.DiagramError(f"stratum too large for packed keys (degree {degree}, {m} components)")


def raw_count(degree, skeleton) -> int:
    """Insertions visited when building the stratum from the one below it."""
    skel = dg.as_skeleton(skeleton)
    return _raw_count(degree, skel)


def _raw_count(degree, skel):
    if degree == 0:
        return 1
    prev = enumerate_keys(degree - 1, skel)
    tok, lens = decode_keys(prev, len(skel), 4 * (degree - 1))
    closed = np.array([c == "C" for c in skel])
    return int(_extend(tok, lens, closed, degree, _pair_types(len(skel)), True, np.zeros(1, np.int64)))


_KEY_CACHE: dict = {}


def enumerate_keys(degree, skeleton, budget=dg.DEFAULT_BUDGET):
    """Sorted unique canonical keys of the DD stratum."""
    skel = dg.as_skeleton(skeleton)
    m = len(skel)
    _check_size(degree, m)
    ck = (degree, skel)
    if ck in _KEY_CACHE:
        return _KEY_CACHE[ck]
    if degree == 0:
        keys = np.zeros(1, np.int64)
    else:
        prev = enumerate_keys(degree - 1, skel, budget)
        tok, lens = decode_keys(prev, m, 4 * (degree - 1))
        closed = np.array([c == "C" for c in skel])
        types = _pair_types(m)
        dummy = np.zeros(1, np.int64)
        est = int(_extend(tok, lens, closed, degree, types, True, dummy))
        if est > budget:
            raise dg.BudgetExceeded(est, budget)
        out = np.empty(est, np.int64)
        _extend(tok, lens, closed, degree, types, False, out)
        keys = np.unique(out)
    _KEY_CACHE[ck] = keys
    return keys


def keys_to_diagrams(keys, degree, skeleton) -> list[dg.Diagram]:
    skel = dg.as_skeleton(skeleton)
    tok, lens = decode_keys(keys, len(skel), 4 * degree)
    out = []
    for t, ls in zip(tok.tolist(), lens.tolist()):
        arr = []
        o = 0
        for lc in ls:
            arr.append(tuple(t[o:o + lc]))
            o += lc
        out.append(dg.Diagram("dd", skel, tuple(arr)))
    return out


def diagram_key(d: dg.Diagram) -> int:
    key = 0
    for s in d.arrangement:
        key = key * 16 + len(s)
    for s in d.arrangement:
        for c in s:
            key = key * 16 + c
    return key


# ---------------------------------------------------------------------------
# three-term rows


@nb.njit(cache=True)
def _lookup(keys, k):
    i = np.searchsorted(keys, k)
    if i < keys.shape[0] and keys[i] == k:
        return i
    return -1


@nb.njit(cache=True)
def _gen3t(btok, blens, closed, keys, n, count_only, out):
    """Rows of the three-term template, as packed sorted column triples.

    Basis element ``d`` is the first term (``+`` chords at x, ``-`` at y).
    The third crossing z is every placement of two endpoints on the pair's
    components; the other terms move the pair to (y, z) and (z, x).
    """
    N = btok.shape[0]
    m = closed.shape[0]
    L = 4 * n
    z = 2 * (n + 1)
    t1 = np.zeros(L + 2, np.int64)
    t2 = np.zeros(L + 2, np.int64)
    u = np.zeros(L, np.int64)
    v = np.zeros(L, np.int64)
    l1 = np.zeros(m, np.int64)
    l2 = np.zeros(m, np.int64)
    lu = np.zeros(m, np.int64)
    mp = np.zeros(n + 3, np.int64)
    cur = np.zeros(L, np.int64)
    best = np.zeros(L, np.int64)
    rot = np.zeros(m, np.int64)
    off = np.zeros(m, np.int64)
    cnt = 0
    for d in range(N):
        tok = btok[d]
        lens = blens[d]
        for p in range(1, n + 1):
            plus = 2 * p
            minus = 2 * p + 1
            ci = -1
            cj = -1
            o = 0
            for c in range(m):
                for i in range(lens[c]):
                    if tok[o + i] == plus:
                        if ci < 0:
                            ci = c
                        else:
                            cj = c
                o += lens[c]
            for g1 in range(_gaps(lens[ci], closed[ci])):
                _insert(tok, lens, ci, g1, z, t1, l1)
                # two z endpoints on one strand: each position set once
                start = g1 + 1 if ci == cj else 0
                for g2 in range(start, _gaps(l1[cj], closed[cj])):
                    if count_only:
                        cnt += 1
                        continue
                    _insert(t1, l1, cj, g2, z, t2, l2)
                    # (y, z): drop x, y becomes +, z becomes -
                    # (z, x): drop y, x becomes -, z becomes +
                    o = 0
                    w1 = 0
                    w2 = 0
                    for c in range(m):
                        lu[c] = lens[c]
                        for i in range(l2[c]):
                            t = t2[o + i]
                            if t == z:
                                u[w1] = minus
                                v[w2] = plus
                                w1 += 1
                                w2 += 1
                            elif t == plus:
                                v[w2] = minus
                                w2 += 1
                            elif t == minus:
                                u[w1] = plus
                                w1 += 1
                            else:
                                u[w1] = t
                                v[w2] = t
                                w1 += 1
                                w2 += 1
                        o += l2[c]
                    a = d
                    b = _lookup(keys, _canon_key(u, lu, closed, 2, mp, cur, best, rot, off))
                    e = _lookup(keys, _canon_key(v, lu, closed, 2, mp, cur, best, rot, off))
                    if a > b:
                        a, b = b, a
                    if b > e:
                        b, e = e, b
                    if a > b:
                        a, b = b, a
                    out[cnt] = (a << 42) | (b << 21) | e
                    cnt += 1
    return cnt


def three_term_rows(keys, degree, skeleton):
    """Distinct packed 3T rows over the key-ordered basis.

    Unpack with :func:`unpack_rows`.  A column of -1 would mean a term outside
    the basis, which cannot happen for a complete stratum.
    """
    skel = dg.as_skeleton(skeleton)
    m = len(skel)
    if degree == 0:
        return np.zeros(0, np.int64)
    if len(keys) >= 1 << 21:
        raise dg.DiagramError("stratum too large for packed rows")
    tok, lens = decode_keys(keys, m, 4 * degree)
    closed = np.array([c == "C" for c in skel])
    dummy = np.zeros(1, np.int64)
    cnt = int(_gen3t(tok, lens, closed, keys, degree, True, dummy))
    out = np.empty(cnt, np.int64)
    _gen3t(tok, lens, closed, keys, degree, False, out)
    return np.unique(out)


def unpack_rows(packed):
    """Packed triples -> list of ``{column: coefficient}`` rows (primitive)."""
    mask = (1 << 21) - 1
    a = (packed >> 42) & mask
    b = (packed >> 21) & mask
    c = packed & mask
    rows = []
    for x, y, w in zip(a.tolist(), b.tolist(), c.tolist()):
        if x == y == w:
            rows.append({x: 1})
        elif x == y:
            rows.append({x: 2, w: 1})
        elif y == w:
            rows.append({x: 1, y: 2})
        else:
            rows.append({x: 1, y: 1, w: 1})
    return rows


def packed_to_csr(packed):
    """Packed triples -> CSR arrays (row pointers, columns, coefficients)."""
    mask = (1 << 21) - 1
    a = (packed >> 42) & mask
    b = (packed >> 21) & mask
    c = packed & mask
    return _triples_csr(a, b, c)


@nb.njit(cache=True)
def _triples_csr(a, b, c):
    R = a.shape[0]
    ptr = np.zeros(R + 1, np.int64)
    col = np.zeros(3 * R, np.int64)
    val = np.zeros(3 * R, np.int64)
    w = 0
    for r in range(R):
        x, y, z = a[r], b[r], c[r]
        if x == y and y == z:
            col[w] = x
            val[w] = 1
            w += 1
        elif x == y:
            col[w] = x
            val[w] = 2
            col[w + 1] = z
            val[w + 1] = 1
            w += 2
        elif y == z:
            col[w] = x
            val[w] = 1
            col[w + 1] = y
            val[w + 1] = 2
            w += 2
        else:
            col[w] = x
            col[w + 1] = y
            col[w + 2] = z
            val[w] = 1
            val[w + 1] = 1
            val[w + 2] = 1
            w += 3
        ptr[r + 1] = w
    return ptr, col[:w], val[:w]


def dict_rows_csr(rows):
    ptr = [0]
    col = []
    val = []
    for r in rows:
        for k in sorted(r):
            col.append(k)
            val.append(int(r[k]))
        ptr.append(len(col))
    return (np.array(ptr, np.int64), np.array(col, np.int64), np.array(val, np.int64))


def concat_csr(*parts):
    ptrs, cols, vals = [], [], []
    base = 0
    for i, (p, c, v) in enumerate(parts):
        ptrs.append(p[1:] + base if i else p + base)
        cols.append(c)
        vals.append(v)
        base += p[-1]
    return np.concatenate(ptrs), np.concatenate(cols), np.concatenate(vals)


# ---------------------------------------------------------------------------
# elimination modulo a prime


@nb.njit(cache=True)
def _inv(a, p):
    # Fermat inverse
    r = 1
    e = p - 2
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


@nb.njit(cache=True)
def _propagate(n, ptr, col, val, p, max_free):
    R = ptr.shape[0] - 1
    deg = np.zeros(n + 1, np.int64)
    for e in range(col.shape[0]):
        deg[col[e] + 1] += 1
    iptr = np.cumsum(deg)
    irow = np.zeros(col.shape[0], np.int64)
    fill = iptr[:-1].copy()
    for r in range(R):
        for e in range(ptr[r], ptr[r + 1]):
            irow[fill[col[e]]] = r
            fill[col[e]] += 1
    unk = np.zeros(R, np.int64)
    queue = np.zeros(R + 1, np.int64)
    head = 0
    tail = 0
    for r in range(R):
        unk[r] = ptr[r + 1] - ptr[r]
        if unk[r] == 1:
            queue[tail] = r
            tail += 1
    known = np.zeros(n, np.bool_)
    vals = np.zeros((n, max_free), np.int64)
    F = 0
    nxt = 0
    done = 0
    while done < n:
        while head < tail:
            r = queue[head]
            head += 1
            if unk[r] != 1:
                continue
            u = -1
            au = 0
            for e in range(ptr[r], ptr[r + 1]):
                if not known[col[e]]:
                    u = col[e]
                    au = val[e]
                    break
            inv = _inv((p - au % p) % p, p)
            for f in range(F):
                s = 0
                for e in range(ptr[r], ptr[r + 1]):
                    c = col[e]
                    if c != u:
                        s = (s + (val[e] % p) * vals[c, f]) % p
                vals[u, f] = s * inv % p
            known[u] = True
            done += 1
            for k in range(iptr[u], iptr[u + 1]):
                r2 = irow[k]
                unk[r2] -= 1
                if unk[r2] == 1:
                    queue[tail] = r2
                    tail += 1
        if done == n:
            break
        while known[nxt]:
            nxt += 1
        if F == max_free:
            return -1, 0, vals, np.zeros((1, 1), np.int64)
        vals[nxt, F] = 1
        F += 1
        known[nxt] = True
        done += 1
        for k in range(iptr[nxt], iptr[nxt + 1]):
            r2 = irow[k]
            unk[r2] -= 1
            if unk[r2] == 1:
                queue[tail] = r2
                tail += 1
    # what the relations say about the free generators
    ech = np.zeros((max(F, 1), max(F, 1)), np.int64)
    has = np.zeros(max(F, 1), np.bool_)
    rank = 0
    vec = np.zeros(max(F, 1), np.int64)
    for r in range(R):
        if rank == F:
            break
        for f in range(F):
            s = 0
            for e in range(ptr[r], ptr[r + 1]):
                s = (s + (val[e] % p) * vals[col[e], f]) % p
            vec[f] = s
        rank += _reduce_into(vec, ech, has, F, p, True)
    return F, rank, vals, ech


@nb.njit(cache=True)
def _reduce_into(vec, ech, has, F, p, insert):
    """Reduce ``vec`` by the pivot rows; optionally store a new pivot.  Returns
    1 if ``vec`` was independent, else 0 (``vec`` is left reduced)."""
    for f in range(F):
        if vec[f] == 0:
            continue
        if has[f]:
            a = vec[f]
            for k in range(f, F):
                vec[k] = (vec[k] - a * ech[f, k]) % p
        else:
            if insert:
                inv = _inv(vec[f], p)
                for k in range(F):
                    ech[f, k] = vec[k] * inv % p
                has[f] = True
            return 1
    return 0


class ModularElimination:
    """Propagation elimination of a relation system modulo a prime.

    ``values[i]`` expresses basis diagram ``i`` in ``free`` generators modulo
    the relations; the generators still satisfy ``rank`` independent
    relations kept in echelon form.
    """

    def __init__(self, n, csr, prime=PRIME, max_free=64):
        self.n = n
        self.prime = prime
        while True:
            F, rank, vals, ech = _propagate(n, *csr, prime, max_free)
            if F >= 0:
                break
            max_free *= 4
        self.free = int(F)
        self.rank_free = int(rank)
        self.values = vals[:, :F]
        self._ech = ech
        self._has = np.array([bool(ech[f, f]) for f in range(F)] or [False])

    @property
    def quotient_dim(self) -> int:
        return self.free - self.rank_free

    @property
    def rank(self) -> int:
        return self.n - self.quotient_dim

    def contains(self, vector) -> bool:
        """Is ``{column: coefficient}`` (integers) in the span modulo the prime?"""
        p = self.prime
        F = self.free
        if F == 0:
            return True
        vec = np.zeros(F, np.int64)
        for k, c in vector.items():
            vec = (vec + (int(c) % p) * self.values[k]) % p
        _reduce_into(vec, self._ech, self._has.copy(), F, p, False)
        return not vec.any()


# ---------------------------------------------------------------------------
# iota images


@nb.njit(cache=True)
def _iota_rows(btok, blens, closed, n, chord_keys, out):
    """Signed chord-basis coordinates of iota of every basis diagram."""
    N = btok.shape[0]
    m = closed.shape[0]
    L = 2 * n
    ct = np.zeros(max(L, 1), np.int64)
    cl = np.zeros(m, np.int64)
    mp = np.zeros(n + 2, np.int64)
    cur = np.zeros(max(L, 1), np.int64)
    best = np.zeros(max(L, 1), np.int64)
    rot = np.zeros(m, np.int64)
    off = np.zeros(m, np.int64)
    for d in range(N):
        tok = btok[d]
        lens = blens[d]
        for s in range(1 << n):
            sign = 1
            for k in range(n):
                if (s >> k) & 1:
                    sign = -sign
            o = 0
            w = 0
            for c in range(m):
                cl[c] = 0
                for i in range(lens[c]):
                    t = tok[o + i]
                    ident = t >> 1
                    if (t & 1) == ((s >> (ident - 1)) & 1):
                        ct[w] = ident
                        w += 1
                        cl[c] += 1
                o += lens[c]
            k = _canon_key(ct, cl, closed, 1, mp, cur, best, rot, off)
            j = _lookup(chord_keys, k)
            out[d, j] += sign


def chord_key(d: dg.Diagram) -> int:
    return diagram_key(d)


def iota_matrix(keys, degree, skeleton, chord_basis):
    """(N, len(chord_basis)) integer matrix of iota over the key-ordered basis.

    Columns follow ``chord_basis`` order."""
    skel = dg.as_skeleton(skeleton)
    m = len(skel)
    ckeys = np.array([chord_key(c) for c in chord_basis], dtype=np.int64)
    order = np.argsort(ckeys)
    tok, lens = decode_keys(keys, m, 4 * degree)
    closed = np.array([c == "C" for c in skel])
    out = np.zeros((len(keys), len(chord_basis)), np.int64)
    _iota_rows(tok, lens, closed, degree, ckeys[order], out)
    res = np.zeros_like(out)
    res[:, order] = out
    return res


# ---------------------------------------------------------------------------
# whole systems


def two_term_rows(degree, skeleton, index):
    """Rows of the loop-slide template, built from the stratum one degree down.

    Each context diagram, anchor chord and gap for the new pair gives one
    instance: the pair sits at the gap and straddles one end of the anchor
    in the first term, the other end in the second.  ``index`` maps
    canonical arrangements to columns.
    """
    if degree == 0:
        return []
    skel = dg.as_skeleton(skeleton)
    ctxs = keys_to_diagrams(enumerate_keys(degree - 1, skel), degree - 1, skel)
    plus, minus = 2 * degree, 2 * degree + 1
    rows = set()
    for c in ctxs:
        base = [[("t", code, (ci, i)) for i, code in enumerate(seq)] for ci, seq in enumerate(c.arrangement)]
        where: dict = {}
        for ci, seq in enumerate(c.arrangement):
            for i, code in enumerate(seq):
                where.setdefault(code, []).append((ci, i))
        for code, (e1, e2) in where.items():
            for k, comp in enumerate(base):
                for g in range(_gaps(len(comp), skel[k] == "C")):
                    items = [list(s) for s in base]
                    items[k].insert(g, ("g",))
                    for tag, e in (("1", e1), ("2", e2)):
                        seq = items[e[0]]
                        j = next(x for x, it in enumerate(seq) if it[0] == "t" and it[2] == e)
                        seq.insert(j + 1, ("a" + tag,))
                        seq.insert(j, ("b" + tag,))
                    vec: dict = {}
                    for tag in ("1", "2"):
                        fill = {("g",): (plus, minus), ("b" + tag,): (minus,), ("a" + tag,): (plus,)}
                        arr = []
                        for seq in items:
                            out = []
                            for it in seq:
                                if it[0] == "t":
                                    out.append(it[1])
                                else:
                                    out.extend(fill.get(it, ()))
                            arr.append(tuple(out))
                        col = index[dg._canonical_arrangement(tuple(arr), skel, 2)]
                        vec[col] = vec.get(col, 0) + 1
                    if len(vec) == 1:
                        vec = {next(iter(vec)): 1}
                    rows.add(tuple(sorted(vec.items())))
    return [dict(r) for r in sorted(rows)]


def one_term_rows(basis):
    return [{i: 1} for i, b in enumerate(basis) if dg.isolated_pairs(b)]


class DDStratum:
    """Basis and builtin relation rows of one DD stratum, computed compiled.

    ``basis`` is sorted like :func:`~ddlab.diagrams.enumerate_diagrams`;
    ``perm[k]`` is the basis position of the ``k``-th key.
    """

    def __init__(self, degree, skeleton, budget=dg.DEFAULT_BUDGET):
        self.degree = degree
        self.skeleton = dg.as_skeleton(skeleton)
        self.keys = enumerate_keys(degree, self.skeleton, budget)
        unsorted = keys_to_diagrams(self.keys, degree, self.skeleton)
        order = sorted(range(len(unsorted)), key=lambda i: unsorted[i])
        self.basis = [unsorted[i] for i in order]
        self.perm = np.empty(len(order), np.int64)
        self.perm[np.array(order, dtype=np.int64)] = np.arange(len(order))
        self.index = {b.arrangement: i for i, b in enumerate(self.basis)}
        packed = three_term_rows(self.keys, degree, self.skeleton)
        mask = (1 << 21) - 1
        a = self.perm[(packed >> 42) & mask]
        b = self.perm[(packed >> 21) & mask]
        c = self.perm[packed & mask]
        s = np.sort(np.stack([a, b, c]), axis=0) if len(packed) else np.zeros((3, 0), np.int64)
        self.three = np.unique((s[0] << 42) | (s[1] << 21) | s[2])
        self.one = one_term_rows(self.basis)
        self.two = two_term_rows(degree, self.skeleton, self.index)

    def row_count(self) -> int:
        return len(self.three) + len(self.one) + len(self.two)

    def dict_rows(self) -> list[dict]:
        rows = {tuple(sorted(r.items())) for r in self.one + self.two}
        rows.update(tuple(sorted(r.items())) for r in unpack_rows(self.three))
        return [dict(r) for r in sorted(rows)]

    def csr(self):
        return concat_csr(dict_rows_csr(self.one + self.two), packed_to_csr(self.three))

    def modular(self, prime=PRIME) -> ModularElimination:
        return ModularElimination(len(self.basis), self.csr(), prime)
