import random
from itertools import combinations, product

import pytest

from srgrep.codes import (
    agreement_code_search,
    agreements,
    is_equal_agreement_code,
)
from srgrep.errors import InputError, ResourceLimit


def _largest_code_oracle(length, q, agreement, cap):
    """Plain clique search over all words (no symmetry reduction), stopping at ``cap``."""
    words = list(product(range(q), repeat=length))
    best = 1
    adj = {w: {x for x in words if agreements(w, x) == agreement} for w in words[:1]}
    first = words[0]
    pool = sorted(adj[first])

    def grow(size, cands):
        nonlocal best
        best = max(best, size)
        if best >= cap:
            return
        for i, w in enumerate(cands):
            grow(size + 1, [x for x in cands[i + 1:] if agreements(w, x) == agreement])

    grow(1, pool)  # any code can be relabelled so that it contains the first word
    return best


def test_oracle_largest_code_is_three():
    assert _largest_code_oracle(7, 3, 1, cap=5) == 3


def test_examples():
    res = agreement_code_search(5, 7, 3, 1)
    assert not res.feasible and res.verdict == "INFEASIBLE"
    assert res.nodes > 0 and res.witness == ()
    two = agreement_code_search(2, 7, 3, 1)
    assert two.feasible
    assert two.witness == ((0,) * 7, (0, 1, 1, 1, 1, 1, 1))
    assert agreement_code_search(1, 7, 3, 1).feasible


@pytest.mark.parametrize("n, expected", [(3, True), (4, False)])
def test_threshold(n, expected):
    assert agreement_code_search(n, 7, 3, 1).feasible is expected


def test_four_letters_is_feasible():
    res = agreement_code_search(5, 7, 4, 1)
    assert res.feasible and is_equal_agreement_code(res.witness, 1)


def test_witness_symmetries():
    res = agreement_code_search(5, 7, 4, 1)
    rng = random.Random(2)
    for _ in range(20):
        perm = list(range(7))
        rng.shuffle(perm)
        letters = [rng.sample(range(4), 4) for _ in range(7)]
        moved = [tuple(letters[p][w[p]] for p in perm) for w in res.witness]
        assert is_equal_agreement_code(moved, 1)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_infeasibility_invariant_under_shuffled_order(seed):
    assert not agreement_code_search(5, 7, 3, 1, shuffle_seed=seed).feasible


def test_small_exhaustive_agreement_with_brute_force():
    for length, q, agr in [(3, 2, 1), (4, 3, 1), (4, 2, 2), (3, 3, 0)]:
        words = list(product(range(q), repeat=length))
        for n in (2, 3, 4):
            brute = any(is_equal_agreement_code(c, agr) for c in combinations(words, n))
            assert agreement_code_search(n, length, q, agr).feasible is brute


def test_budget_and_inputs():
    with pytest.raises(ResourceLimit):
        agreement_code_search(5, 7, 3, 1, budget=50)
    with pytest.raises(InputError):
        agreement_code_search(0, 7, 3, 1)
    with pytest.raises(InputError):
        agreement_code_search(2, 3, 3, 4)
