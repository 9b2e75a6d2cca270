"""Shared test utilities: cached group/table factories and independent oracles.

The oracles deliberately avoid the library's own canonical-word machinery:
symmetric groups are modelled by explicit permutation composition, Bruhat
order by the subword property, and reduced-word sets by brute enumeration.
"""

from __future__ import annotations

import functools
import itertools

from kllab.coxeter import GroupTable, parse_coxeter_spec
from kllab.hecke import KLTable
from kllab.laurent import LaurentPoly


@functools.lru_cache(maxsize=None)
def get_group(spec: str, cap: int | None = None) -> GroupTable:
    return GroupTable(parse_coxeter_spec(spec), cap)


@functools.lru_cache(maxsize=None)
def get_kl(spec: str, cap: int | None = None) -> KLTable:
    return KLTable(get_group(spec, cap))


def poly(pairs: dict[int, int]) -> LaurentPoly:
    return LaurentPoly(pairs)


# ----------------------------------------------------------------------
# symmetric group oracle: type A_{n-1} acting on {0..n-1}
# ----------------------------------------------------------------------

class SymmetricOracle:
    """S_n as explicit permutations; generator i swaps i and i+1."""

    def __init__(self, n: int):
        self.n = n
        self.identity = tuple(range(n))

    def gen(self, i: int) -> tuple[int, ...]:
        perm = list(range(self.n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def compose(self, x, y):
        """x after y."""
        return tuple(x[j] for j in y)

    def word_to_perm(self, word) -> tuple[int, ...]:
        out = self.identity
        for s in word:
            out = self.compose(out, self.gen(s))
        return out

    def length(self, perm) -> int:
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n)
                   if perm[i] > perm[j])

    def right_descents(self, perm) -> set[int]:
        return {i for i in range(self.n - 1) if perm[i] > perm[i + 1]}

    def left_descents(self, perm) -> set[int]:
        inv = [0] * self.n
        for i, v in enumerate(perm):
            inv[v] = i
        return self.right_descents(tuple(inv))

    def all_elements(self):
        return [tuple(p) for p in itertools.permutations(range(self.n))]

    def reduced_words(self, perm) -> list[tuple[int, ...]]:
        """Every reduced word, by brute enumeration over all short words."""
        target_len = self.length(perm)
        return [w for w in itertools.product(range(self.n - 1),
                                             repeat=target_len)
                if self.word_to_perm(w) == perm]


# ----------------------------------------------------------------------
# Bruhat order oracle via the subword property
# ----------------------------------------------------------------------

def subword_elements(table: GroupTable, word: tuple[int, ...]) -> set:
    """Canonical words of all subwords of ``word``."""
    out = set()
    for k in range(len(word) + 1):
        for idx in itertools.combinations(range(len(word)), k):
            out.add(table.canonical(tuple(word[i] for i in idx)))
    return out


def bruhat_leq_oracle(table: GroupTable, x, y) -> bool:
    """x <= y iff some subword of a reduced word of y represents x."""
    return x.word in subword_elements(table, y.word)
