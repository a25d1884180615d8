"""Exhaustive search for equal-agreement codes.

A set of ``n_words`` words of a given length over an alphabet of size ``q`` is
sought such that every two words agree in exactly ``agreement`` positions.
Relabelling the letters independently in each position is a symmetry of the
problem, so the first word is fixed to all zeros.  The remaining words are
chosen in increasing order from the pool of words compatible with everything
already chosen, which makes the search a clique search in the compatibility
graph.  Exhausting the tree without a hit is an infeasibility certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import InputError, ResourceLimit

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class CodeSearchResult:
    feasible: bool
    n_words: int
    length: int
    alphabet: int
    agreement: int
    nodes: int
    witness: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def verdict(self) -> str:
        return "FEASIBLE" if self.feasible else "INFEASIBLE"


def agreements(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x == y for x, y in zip(a, b))


def is_equal_agreement_code(words: Sequence[Sequence[int]], agreement: int) -> bool:
    return all(
        agreements(words[i], words[j]) == agreement
        for i in range(len(words))
        for j in range(i + 1, len(words))
    )


def agreement_code_search(
    n_words: int,
    length: int,
    alphabet: int,
    agreement: int,
    *,
    budget: int = DEFAULT_BUDGET,
    shuffle_seed: int | None = None,
) -> CodeSearchResult:
    """Decide whether an equal-agreement code with these parameters exists.

    ``shuffle_seed`` permutes the order in which candidate words are tried;
    the verdict must not depend on it.
    """
    for name, val in (("n_words", n_words), ("length", length), ("alphabet", alphabet)):
        if val < 1:
            raise InputError(f"{name} must be positive")
    if not 0 <= agreement <= length:
        raise InputError("agreement must lie in 0..length")

    zero = (0,) * length
    if n_words == 1:
        return CodeSearchResult(True, 1, length, alphabet, agreement, 1, (zero,))

    pool = [w for w in product(range(alphabet), repeat=length) if agreements(w, zero) == agreement]
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(pool)

    nodes = 0
    chosen: list[int] = []

    def extend(cands: list[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise ResourceLimit(f"search exceeded {budget} nodes")
        if len(chosen) + 1 == n_words:
            return True
        if len(chosen) + 1 + len(cands) < n_words:
            return False
        for pos, i in enumerate(cands):
            chosen.append(i)
            wi = pool[i]
            nxt = [j for j in cands[pos + 1 :] if agreements(wi, pool[j]) == agreement]
            if extend(nxt):
                return True
            chosen.pop()
        return False

    if extend(list(range(len(pool)))):
        witness = (zero,) + tuple(sorted(pool[i] for i in chosen))
        return CodeSearchResult(True, n_words, length, alphabet, agreement, nodes, witness)
    return CodeSearchResult(False, n_words, length, alphabet, agreement, nodes)
