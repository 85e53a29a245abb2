"""Pure-Python traversal kernel.

Same contract as the compiled ``_ckernel``: walk the extension tree below a
given admissible prefix and total tau / spine / class counts per level.

State for the node tau(1..N) lives in flat arrays indexed by level, each
entry depending only on tau(1..index), so moving to a sibling or child only
rewrites entries at the new depth:

    ordv[n]   ord(n)
    orb[n]    bitmask of the orbit n, tau(n), ..., 0
    modp[n]   mod(n) scaled by 2^D (D = max level), i.e. sum 2^(D - ord(i))
    mark[n]   1 if n is a marker (known once tau(n+1) is set)
    mmask[n]  bitmask of marked levels of tau(1..n)
    mintz[n]  least trailing-zero count of modp over nonzero marked levels
"""

from __future__ import annotations


def _tz(x: int) -> int:
    return (x & -x).bit_length() - 1


class _State:
    __slots__ = ("D", "tau", "ordv", "orb", "modp", "mark", "mmask", "mintz")

    def __init__(self, max_level: int):
        size = max_level + 2
        self.D = max_level
        self.tau = [0] * size
        self.ordv = [0] * size
        self.orb = [0] * size
        self.orb[0] = 1
        self.modp = [0] * size
        self.mark = [0] * size
        self.mmask = [0] * size
        self.mintz = [0] * size

    def push(self, n: int, v: int):
        """Set tau(n) = v, given tau(1..n-1) already pushed."""
        tau = self.tau
        tau[n] = v
        o = self.ordv[v] + 1
        self.ordv[n] = o
        self.orb[n] = (1 << n) | self.orb[v]
        self.modp[n] = self.modp[n - 1] + (1 << (self.D - o))
        if n == 1:
            self.mmask[1] = 1
            self.mintz[1] = self.D
            return
        prev = tau[n - 1]
        mm = self.mmask[n - 1]
        mz = self.mintz[n - 1]
        if v < prev + 1:
            self.mark[n - 1] = 1
            new = self.orb[prev] & ~mm
            mm |= new
            new >>= 1
            lvl = 1
            modp = self.modp
            while new:
                if new & 1:
                    t = _tz(modp[lvl])
                    if t < mz:
                        mz = t
                new >>= 1
                lvl += 1
        else:
            self.mark[n - 1] = 0
        self.mmask[n] = mm
        self.mintz[n] = mz

    def top_shift(self, n: int) -> int:
        """log2 of the twist factor 2^L / T at node tau(1..n)."""
        L = bin(self.mmask[n]).count("1") - 1
        return L - (self.D - self.mintz[n])

    def children(self, n: int):
        """(value, spine factor) for each admissible tau(n+1), highest value first."""
        tau = self.tau
        mark = self.mark
        l0 = tau[n]
        # tail decomposition: marker positions lp[1..k], images l[i], steps ns[i]
        lp = [n]
        l = [l0]
        ns = []
        steps = 0
        x = l0
        while x:
            if mark[x]:
                ns.append(steps + 1)
                lp.append(x)
                l.append(tau[x])
                steps = 0
            else:
                steps += 1
            x = tau[x]
        ns.append(steps)
        k = len(lp) - 1

        mm = self.mmask[n]
        s = 0
        x = l0
        while not (mm >> x) & 1:
            x = tau[x]
            s += 1
        base = ns[0] - s

        out = [(l0 + 1, 1)]
        last = k + 1 if (k == 0 or l[k] > 0) else k
        for i in range(1, last + 1):
            if i == 1:
                nest = 1
            else:
                target = (l[i] + 1) if i <= k else 0
                nest = (1 << ns[i - 1]) - (tau[lp[i - 1] + 1] == target)
                for j in range(i - 2, 0, -1):
                    nest = (nest << ns[j]) - (tau[lp[j] + 1] == target)
            if nest < 1:
                from .counting import IntegrityError

                raise IntegrityError(f"spine factor {nest} < 1 at {tau[1 : n + 1]}")
            out.append(((l[i] + 1) if i <= k else 0, nest << base))
        return out


def _apply_shift(sp: int, shift: int) -> int:
    if shift >= 0:
        return sp << shift
    if sp & ((1 << -shift) - 1):
        from .counting import IntegrityError

        raise IntegrityError(f"spine count {sp} not divisible by 2^{-shift}")
    return sp >> -shift


def count_subtree(prefix, spines: int, max_level: int, visitor=None):
    """Totals per level for every admissible extension of ``prefix``.

    Returns three lists (tau counts, spine sums, class sums) indexed by
    ``level - len(prefix)``, covering levels len(prefix)..max_level. The
    prefix itself is counted. ``visitor(values, spines, top)`` is called
    for each node, children in ascending value order.
    """
    P = len(prefix)
    if not 1 <= P <= max_level:
        raise ValueError(f"prefix length {P} outside 1..{max_level}")
    st = _State(max_level)
    for n, v in enumerate(prefix, 1):
        st.push(n, v)
    width = max_level - P + 1
    taus = [0] * width
    sps = [0] * width
    tops = [0] * width

    stack = [(P, prefix[-1], spines)]
    first = True
    while stack:
        n, v, sp = stack.pop()
        if first:
            first = False
        else:
            st.push(n, v)
        top = _apply_shift(sp, st.top_shift(n))
        idx = n - P
        taus[idx] += 1
        sps[idx] += sp
        tops[idx] += top
        if visitor is not None:
            visitor(tuple(st.tau[1 : n + 1]), sp, top)
        if n < max_level:
            for val, sf in st.children(n):
                stack.append((n + 1, val, sp * sf))
    return taus, sps, tops
