"""Pure-Python search kernels; reference twin of ``_ckernels.pyx``.

A family over n <= 6 elements is encoded as a 2^n-bit integer whose bit X is
set when mask X is a member.  For two such encodings with the same number of
members, the sorted member lists compare lexicographically exactly as "the
lowest bit of A ^ B lies in A" -- the canonical form is the minimum image
under that order.

Search trees grow families downward: a node holds the members already chosen
(all greater than the threshold ``t``), and each child adds one mask X < t.
Since X | Y >= max(X, Y), every union a new member can form with existing
members is already decided, so X is admissible iff all those unions are
present and every node is itself a union-closed family.
"""

from itertools import permutations

MAX_N = 6


def _popcount(x):
    return bin(x).count("1")


class FamilyKernel:
    backend = "python"

    def __init__(self, n):
        if not 1 <= n <= MAX_N:
            raise ValueError(f"kernel supports 1 <= n <= {MAX_N}, got {n}")
        self.n = n
        self.universe = (1 << n) - 1
        self.nmasks = 1 << n
        self.pop = [_popcount(x) for x in range(self.nmasks)]
        nbytes = (self.nmasks + 7) // 8
        self.perms = list(permutations(range(n)))
        self.tables = []
        for perm in self.perms:
            img = []
            for x in range(self.nmasks):
                y = 0
                for a in range(n):
                    if x >> a & 1:
                        y |= 1 << perm[a]
                img.append(y)
            per_byte = []
            for bi in range(nbytes):
                row = []
                for v in range(256):
                    out = 0
                    for bit in range(8):
                        x = bi * 8 + bit
                        if v >> bit & 1 and x < self.nmasks:
                            out |= 1 << img[x]
                    row.append(out)
                per_byte.append(row)
            self.tables.append(per_byte)
        # avail[t][j]: number of masks x with 1 <= x < t and popcount j.
        self.avail = []
        counts = [0] * (n + 1)
        for t in range(self.nmasks + 1):
            self.avail.append(tuple(counts))
            if 1 <= t < self.nmasks:
                counts[self.pop[t]] += 1

    def image(self, p, fam):
        out = 0
        bi = 0
        table = self.tables[p]
        while fam:
            out |= table[bi][fam & 0xFF]
            fam >>= 8
            bi += 1
        return out

    def is_canonical(self, fam):
        for p in range(1, len(self.perms)):
            img = self.image(p, fam)
            d = img ^ fam
            if d and d & -d & img:
                return False
        return True

    def canonical(self, fam):
        best = fam
        for p in range(1, len(self.perms)):
            img = self.image(p, fam)
            d = img ^ best
            if d and d & -d & img:
                best = img
        return best

    def includable(self, fam, x):
        rest = fam
        while rest:
            low = rest & -rest
            u = x | (low.bit_length() - 1)
            if u != x and not fam >> u & 1:
                return False
            rest ^= low
        return True

    def enumerate(self, fam, t, max_m):
        """Canonical union-closed families in the subtree of node ``(fam, t)``.

        ``max_m`` <= 0 means no size cap.  Returns ``(families, nodes_visited)``.
        """
        out = []
        visited = 0
        stack = [(fam, t, _popcount(fam))]
        while stack:
            fam, t, m = stack.pop()
            visited += 1
            if self.is_canonical(fam):
                out.append(fam)
            if 0 < max_m <= m:
                continue
            for x in range(t):
                if not fam >> x & 1 and self.includable(fam, x):
                    stack.append((fam | 1 << x, x, m + 1))
        return out, visited

    def search(self, fam, t, cap, inc_num, inc_den):
        """Minimum density in the subtree of ``(fam, t)``; ``fam`` must hold the empty set.

        Children only add masks in [1, t).  Subtrees are pruned when their
        density lower bound is strictly above the incumbent, so ties survive
        and every minimizer is reported.  Returns ``(num, den, canonical
        minimizers, nodes_visited)`` with density ``num / den``.
        """
        n = self.n
        pop = self.pop
        best_num, best_den = inc_num, inc_den
        minimizers = []
        visited = 0
        total0 = sum(pop[x] for x in range(self.nmasks) if fam >> x & 1)
        stack = [(fam, t, _popcount(fam), total0)]
        while stack:
            fam, t, m, total = stack.pop()
            visited += 1
            cmp = total * best_den - best_num * n * m
            if cmp < 0:
                best_num, best_den = total, n * m
                minimizers = []
                cmp = 0
            if cmp == 0 and self.is_canonical(fam):
                minimizers.append(fam)
            if m >= cap:
                continue
            # Lower bound: adding small masks only helps while their size is
            # below the running average.
            s, k, room = total, m, cap - m
            avail = self.avail[t]
            for j in range(1, n + 1):
                if room == 0 or j * k >= s:
                    break
                take = min(avail[j], room)
                s += take * j
                k += take
                room -= take
            if s * best_den > best_num * n * k:
                continue
            for x in range(1, t):
                if not fam >> x & 1 and self.includable(fam, x):
                    stack.append((fam | 1 << x, x, m + 1, total + pop[x]))
        return best_num, best_den, minimizers, visited
