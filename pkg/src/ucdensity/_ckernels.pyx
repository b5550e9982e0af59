# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled search kernels; mirrors ``_pykernels`` (same encoding, same
traversal order, same node counts).  The tree walks run without the GIL so
work units can be spread over threads."""

from itertools import permutations

from libc.stdlib cimport free, malloc
from libcpp.vector cimport vector

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

DEF MAXN = 6

cdef struct Node:
    u64 fam
    int t
    int m
    int total


cdef class FamilyKernel:
    cdef readonly int n
    cdef readonly int universe
    cdef readonly int nmasks
    cdef int nperms
    cdef int nbytes
    cdef u64* tables
    cdef int pop[64]
    cdef int avail[65][MAXN + 1]

    def __cinit__(self, int n):
        self.tables = NULL
        if n < 1 or n > MAXN:
            raise ValueError(f"kernel supports 1 <= n <= {MAXN}, got {n}")
        self.n = n
        self.universe = (1 << n) - 1
        self.nmasks = 1 << n
        self.nbytes = (self.nmasks + 7) // 8
        perms = list(permutations(range(n)))
        self.nperms = len(perms)
        self.tables = <u64*> malloc(self.nperms * self.nbytes * 256 * sizeof(u64))
        if self.tables == NULL:
            raise MemoryError()
        cdef int img[64]
        cdef int p, x, a, bi, v, bit, y, j, t
        cdef u64 out
        for p in range(self.nperms):
            perm = perms[p]
            for x in range(self.nmasks):
                y = 0
                for a in range(n):
                    if (x >> a) & 1:
                        y |= 1 << <int> perm[a]
                img[x] = y
            for bi in range(self.nbytes):
                for v in range(256):
                    out = 0
                    for bit in range(8):
                        x = bi * 8 + bit
                        if (v >> bit) & 1 and x < self.nmasks:
                            out |= (<u64> 1) << img[x]
                    self.tables[(p * self.nbytes + bi) * 256 + v] = out
        for x in range(self.nmasks):
            self.pop[x] = __builtin_popcountll(x)
        cdef int counts[MAXN + 1]
        for j in range(MAXN + 1):
            counts[j] = 0
        for t in range(self.nmasks + 1):
            for j in range(MAXN + 1):
                self.avail[t][j] = counts[j]
            if 1 <= t < self.nmasks:
                counts[self.pop[t]] += 1

    def __dealloc__(self):
        if self.tables != NULL:
            free(self.tables)

    @property
    def backend(self):
        return "compiled"

    cdef inline u64 _image(self, int p, u64 fam) noexcept nogil:
        cdef u64 out = 0
        cdef u64* row = self.tables + p * self.nbytes * 256
        while fam:
            out |= row[fam & 0xFF]
            fam >>= 8
            row += 256
        return out

    cdef bint _is_canonical(self, u64 fam) noexcept nogil:
        cdef int p
        cdef u64 img, d
        for p in range(1, self.nperms):
            img = self._image(p, fam)
            d = img ^ fam
            if d and (d & (~d + 1) & img):
                return False
        return True

    cdef bint _includable(self, u64 fam, int x) noexcept nogil:
        cdef u64 rest = fam
        cdef int u
        while rest:
            u = x | __builtin_ctzll(rest)
            if u != x and not ((fam >> u) & 1):
                return False
            rest &= rest - 1
        return True

    def image(self, int p, u64 fam):
        if p < 0 or p >= self.nperms:
            raise IndexError(p)
        return self._image(p, fam)

    def is_canonical(self, u64 fam):
        return self._is_canonical(fam)

    def canonical(self, u64 fam):
        cdef u64 best = fam, img, d
        cdef int p
        for p in range(1, self.nperms):
            img = self._image(p, fam)
            d = img ^ best
            if d and (d & (~d + 1) & img):
                best = img
        return best

    def includable(self, u64 fam, int x):
        return self._includable(fam, x)

    def enumerate(self, u64 fam, int t, int max_m):
        cdef vector[u64] out
        cdef vector[Node] stack
        cdef Node node, child
        cdef long long visited = 0
        cdef int x
        node.fam = fam
        node.t = t
        node.m = __builtin_popcountll(fam)
        node.total = 0
        with nogil:
            stack.push_back(node)
            while stack.size():
                node = stack.back()
                stack.pop_back()
                visited += 1
                if self._is_canonical(node.fam):
                    out.push_back(node.fam)
                if max_m > 0 and node.m >= max_m:
                    continue
                for x in range(node.t):
                    if not ((node.fam >> x) & 1) and self._includable(node.fam, x):
                        child.fam = node.fam | ((<u64> 1) << x)
                        child.t = x
                        child.m = node.m + 1
                        child.total = 0
                        stack.push_back(child)
        return [out[i] for i in range(out.size())], visited

    def search(self, u64 fam, int t, int cap, long long inc_num, long long inc_den):
        cdef long long best_num = inc_num, best_den = inc_den
        cdef long long cmp, s, k, room, take
        cdef vector[u64] minimizers
        cdef vector[Node] stack
        cdef Node node, child
        cdef long long visited = 0
        cdef int x, j, n = self.n
        node.fam = fam
        node.t = t
        node.m = __builtin_popcountll(fam)
        node.total = 0
        for x in range(self.nmasks):
            if (fam >> x) & 1:
                node.total += self.pop[x]
        with nogil:
            stack.push_back(node)
            while stack.size():
                node = stack.back()
                stack.pop_back()
                visited += 1
                cmp = node.total * best_den - best_num * n * node.m
                if cmp < 0:
                    best_num = node.total
                    best_den = n * node.m
                    minimizers.clear()
                    cmp = 0
                if cmp == 0 and self._is_canonical(node.fam):
                    minimizers.push_back(node.fam)
                if node.m >= cap:
                    continue
                s = node.total
                k = node.m
                room = cap - node.m
                for j in range(1, n + 1):
                    if room == 0 or j * k >= s:
                        break
                    take = self.avail[node.t][j]
                    if take > room:
                        take = room
                    s += take * j
                    k += take
                    room -= take
                if s * best_den > best_num * n * k:
                    continue
                for x in range(1, node.t):
                    if not ((node.fam >> x) & 1) and self._includable(node.fam, x):
                        child.fam = node.fam | ((<u64> 1) << x)
                        child.t = x
                        child.m = node.m + 1
                        child.total = node.total + self.pop[x]
                        stack.push_back(child)
        return best_num, best_den, [minimizers[i] for i in range(minimizers.size())], visited
