# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled traversal kernel; mirrors ``_pykernel`` exactly.

Counters are 64-bit with explicit overflow checks; any overflow raises
instead of wrapping.
"""

from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    """
    static inline int ck_add(unsigned long long a, unsigned long long b, unsigned long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int ck_mul(unsigned long long a, unsigned long long b, unsigned long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int ck_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int ck_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int ck_add(unsigned long long a, unsigned long long b, unsigned long long *r) nogil
    int ck_mul(unsigned long long a, unsigned long long b, unsigned long long *r) nogil
    int ck_popcount(unsigned long long x) nogil
    int ck_ctz(unsigned long long x) nogil

cdef enum:
    CAP = 64
    STACK = 4096

# modp[l] <= l * 2^(D-1) must fit in 64 bits
MAX_LEVEL = 56

cdef enum:
    OK = 0
    E_OVERFLOW = 1
    E_INTEGRITY = 2
    E_STACK = 3

ctypedef unsigned long long u64

cdef struct State:
    int D
    int tau[CAP]
    int ordv[CAP]
    u64 orb[CAP]
    u64 modp[CAP]
    char mark[CAP]
    u64 mmask[CAP]
    int mintz[CAP]


cdef inline void push(State* st, int n, int v) noexcept nogil:
    cdef int o, prev, lvl, t, mz
    cdef u64 mm, new
    st.tau[n] = v
    o = st.ordv[v] + 1
    st.ordv[n] = o
    st.orb[n] = ((<u64>1) << n) | st.orb[v]
    st.modp[n] = st.modp[n - 1] + ((<u64>1) << (st.D - o))
    if n == 1:
        st.mmask[1] = 1
        st.mintz[1] = st.D
        return
    prev = st.tau[n - 1]
    mm = st.mmask[n - 1]
    mz = st.mintz[n - 1]
    if v < prev + 1:
        st.mark[n - 1] = 1
        new = st.orb[prev] & ~mm
        mm |= new
        new >>= 1
        lvl = 1
        while new:
            if new & 1:
                t = ck_ctz(st.modp[lvl])
                if t < mz:
                    mz = t
            new >>= 1
            lvl += 1
    else:
        st.mark[n - 1] = 0
    st.mmask[n] = mm
    st.mintz[n] = mz


cdef inline int shifted(u64 x, int sh, u64* out) noexcept nogil:
    if sh >= 64 or (sh > 0 and (x >> (64 - sh)) != 0):
        return 1
    out[0] = x << sh
    return 0


cdef int children(State* st, int n, int* vals, u64* factors) noexcept nogil:
    """Fill admissible tau(n+1) values (highest first) and spine factors.

    Returns the number of children, or -1 on overflow, -2 on a factor < 1.
    """
    cdef int lp[CAP]
    cdef int l[CAP]
    cdef int ns[CAP]
    cdef int k = 0, steps = 0, x, s, base, i, j, last, target, count
    cdef int l0 = st.tau[n]
    cdef int64_t nest
    cdef u64 mm, f
    lp[0] = n
    l[0] = l0
    x = l0
    while x:
        if st.mark[x]:
            ns[k] = steps + 1
            k += 1
            lp[k] = x
            l[k] = st.tau[x]
            steps = 0
        else:
            steps += 1
        x = st.tau[x]
    ns[k] = steps

    mm = st.mmask[n]
    s = 0
    x = l0
    while not ((mm >> x) & 1):
        x = st.tau[x]
        s += 1
    base = ns[0] - s

    vals[0] = l0 + 1
    factors[0] = 1
    count = 1
    last = k + 1 if (k == 0 or l[k] > 0) else k
    for i in range(1, last + 1):
        target = (l[i] + 1) if i <= k else 0
        if i == 1:
            nest = 1
        else:
            if ns[i - 1] >= 62:
                return -1
            nest = ((<int64_t>1) << ns[i - 1]) - (st.tau[lp[i - 1] + 1] == target)
            for j in range(i - 2, 0, -1):
                if ns[j] >= 62 or (nest > 0 and (nest >> (62 - ns[j])) != 0):
                    return -1
                nest = (nest << ns[j]) - (st.tau[lp[j] + 1] == target)
        if nest < 1:
            return -2
        if shifted(<u64>nest, base, &f):
            return -1
        vals[count] = target
        factors[count] = f
        count += 1
    return count


cdef int run(State* st, int P, u64 sp0, int max_level,
             u64* taus, u64* sps, u64* tops) noexcept nogil:
    cdef int sn[STACK]
    cdef int sv[STACK]
    cdef u64 ssp[STACK]
    cdef int vals[CAP]
    cdef u64 factors[CAP]
    cdef int top_ = 0, first = 1, n, v, idx, c, i, L, shift
    cdef u64 sp, top, child
    sn[0] = P
    sv[0] = st.tau[P]
    ssp[0] = sp0
    top_ = 1
    while top_ > 0:
        top_ -= 1
        n = sn[top_]
        v = sv[top_]
        sp = ssp[top_]
        if first:
            first = 0
        else:
            push(st, n, v)
        L = ck_popcount(st.mmask[n]) - 1
        shift = L - (st.D - st.mintz[n])
        if shift >= 0:
            if shifted(sp, shift, &top):
                return E_OVERFLOW
        else:
            if sp & (((<u64>1) << (-shift)) - 1):
                return E_INTEGRITY
            top = sp >> (-shift)
        idx = n - P
        taus[idx] += 1
        if ck_add(sps[idx], sp, &sps[idx]) or ck_add(tops[idx], top, &tops[idx]):
            return E_OVERFLOW
        if n < max_level:
            c = children(st, n, vals, factors)
            if c == -1:
                return E_OVERFLOW
            if c == -2:
                return E_INTEGRITY
            if top_ + c > STACK:
                return E_STACK
            for i in range(c):
                if ck_mul(sp, factors[i], &child):
                    return E_OVERFLOW
                sn[top_] = n + 1
                sv[top_] = vals[i]
                ssp[top_] = child
                top_ += 1
    return OK


def count_subtree(prefix, spines, int max_level, visitor=None):
    """See ``_pykernel.count_subtree``. ``visitor`` is not supported here."""
    if visitor is not None:
        raise NotImplementedError("the compiled kernel does not call visitors")
    cdef int P = len(prefix)
    if not 1 <= P <= max_level:
        raise ValueError(f"prefix length {P} outside 1..{max_level}")
    if max_level > MAX_LEVEL:
        raise OverflowError(f"compiled kernel supports levels up to {MAX_LEVEL}")
    cdef State st
    cdef int n
    cdef u64 sp0 = spines
    st.D = max_level
    st.tau[0] = 0
    st.ordv[0] = 0
    st.orb[0] = 1
    st.modp[0] = 0
    st.mark[0] = 0
    for n in range(1, P + 1):
        push(&st, n, prefix[n - 1])
    cdef int width = max_level - P + 1
    cdef u64 taus[CAP]
    cdef u64 sps[CAP]
    cdef u64 tops[CAP]
    for n in range(width):
        taus[n] = 0
        sps[n] = 0
        tops[n] = 0
    cdef int rc
    with nogil:
        rc = run(&st, P, sp0, max_level, taus, sps, tops)
    if rc == E_OVERFLOW:
        raise OverflowError("64-bit counter overflow in compiled kernel")
    if rc == E_INTEGRITY:
        from .counting import IntegrityError
        raise IntegrityError("non-integral spine factor or class count")
    if rc == E_STACK:
        raise MemoryError("traversal stack exhausted")
    return ([taus[n] for n in range(width)],
            [sps[n] for n in range(width)],
            [tops[n] for n in range(width)])
