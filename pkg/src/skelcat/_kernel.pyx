# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled word-reduction kernel; same interface as ``_kernel_py.WordKernel``."""
from libc.stdlib cimport malloc, free


cdef class WordKernel:
    cdef int *table
    cdef unsigned char *ident
    cdef readonly int size
    backend = "cython"

    def __cinit__(self, table, identity):
        cdef int n = len(identity)
        cdef int i, j
        self.size = n
        self.table = <int *> malloc(max(n * n, 1) * sizeof(int))
        self.ident = <unsigned char *> malloc(max(n, 1))
        if self.table == NULL or self.ident == NULL:
            raise MemoryError()
        for i in range(n):
            self.ident[i] = 1 if identity[i] else 0
            row = table[i]
            for j in range(n):
                self.table[i * n + j] = row[j]

    def __dealloc__(self):
        free(self.table)
        free(self.ident)

    cdef inline int _push(self, int a, int *stack, int top) noexcept nogil:
        cdef int c
        cdef int n = self.size
        while top > 0:
            c = self.table[a * n + stack[top - 1]]
            if c < 0:
                break
            top -= 1
            a = c
        if not self.ident[a]:
            stack[top] = a
            top += 1
        return top

    cdef tuple _star(self, alpha, nu):
        cdef Py_ssize_t la = len(alpha), ln = len(nu), k
        cdef int top = 0, a
        cdef int n = self.size
        cdef int *stack = <int *> malloc(max(la + ln, 1) * sizeof(int))
        if stack == NULL:
            raise MemoryError()
        try:
            for k in range(ln - 1, -1, -1):
                a = nu[k]
                if a < 0 or a >= n:
                    raise IndexError(a)
                stack[top] = a
                top += 1
            for k in range(la - 1, -1, -1):
                a = alpha[k]
                if a < 0 or a >= n:
                    raise IndexError(a)
                top = self._push(a, stack, top)
            return tuple([stack[k] for k in range(top - 1, -1, -1)])
        finally:
            free(stack)

    def phi(self, int a, beta):
        return self._star((a,), beta)

    def star(self, alpha, nu):
        return self._star(alpha, nu)

    def reduce(self, alpha):
        return self._star(alpha, ())

    def reduce_many(self, words):
        return [self._star(w, ()) for w in words]

    def is_reduced(self, word):
        cdef Py_ssize_t k, m = len(word)
        cdef int n = self.size
        for k in range(m):
            if self.ident[<int> word[k]]:
                return False
        for k in range(m - 1):
            if self.table[<int> word[k] * n + <int> word[k + 1]] >= 0:
                return False
        return True
