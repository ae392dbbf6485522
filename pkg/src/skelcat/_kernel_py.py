"""Pure-Python word-reduction kernel (fallback for ``_kernel.pyx``).

Arrows are integer codes.  ``table[a][b]`` is the code of ``a ▷ b`` or -1
when the pair is not composable; ``identity[a]`` flags identity arrows.
A reduced word is kept as a stack whose top is its *first* letter, so
prepending a letter and folding it into the front is O(1) amortised.
"""
from __future__ import annotations


class WordKernel:
    backend = "python"

    def __init__(self, table, identity):
        self.table = [list(row) for row in table]
        self.identity = [bool(x) for x in identity]
        self.size = len(self.identity)

    def _push(self, a: int, stack: list[int]) -> None:
        table = self.table
        while stack:
            c = table[a][stack[-1]]
            if c < 0:
                break
            stack.pop()
            a = c
        if not self.identity[a]:
            stack.append(a)

    def phi(self, a: int, beta) -> tuple[int, ...]:
        stack = list(reversed(beta))
        self._push(a, stack)
        return tuple(reversed(stack))

    def star(self, alpha, nu) -> tuple[int, ...]:
        stack = list(reversed(nu))
        push = self._push
        for a in reversed(alpha):
            push(a, stack)
        return tuple(reversed(stack))

    def reduce(self, alpha) -> tuple[int, ...]:
        return self.star(alpha, ())

    def reduce_many(self, words) -> list[tuple[int, ...]]:
        return [self.star(w, ()) for w in words]

    def is_reduced(self, word) -> bool:
        table, identity = self.table, self.identity
        if any(identity[a] for a in word):
            return False
        return all(table[a][b] < 0 for a, b in zip(word, word[1:]))
