import random
from itertools import product

import pytest

from srgrep.exactlin import RatMatrix
from srgrep.roots import (
    LatticeGram,
    NotPositiveDefinite,
    RankUnsupported,
    RootSet,
    UnrecognizedComponent,
    ade_root_count,
    cartan_gram,
    classify,
    max_roots,
    short_vectors,
)

LOW_RANK = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4)]


def _box_oracle(gram: RatMatrix, bound: int, norm=2):
    n = gram.n
    return sorted(
        x for x in product(range(-bound, bound + 1), repeat=n) if gram.quadratic_form(x) == norm
    )


@pytest.mark.parametrize("kind, n", LOW_RANK)
def test_counts_match_box_search(kind, n):
    g = cartan_gram(kind, n)
    rs = short_vectors(LatticeGram.of(g), 2)
    # roots in the simple-root basis have coefficients in [-2, 2] for rank <= 4
    assert list(rs.roots) == _box_oracle(g, 3)
    assert len(rs) == ade_root_count(kind, n)


def test_small_examples():
    assert short_vectors(LatticeGram.of([[2]]), 2).roots == ((-1,), (1,))
    assert len(short_vectors(LatticeGram.of(cartan_gram("A", 2)), 2)) == 6
    assert len(short_vectors(LatticeGram.of(cartan_gram("D", 4)), 2)) == 24


@pytest.mark.parametrize("kind, n", LOW_RANK + [("D", 5), ("E", 6)])
def test_root_set_properties(kind, n):
    lat = LatticeGram.of(cartan_gram(kind, n))
    rs = short_vectors(lat, 2)
    roots = set(rs.roots)
    assert len(roots) == len(rs.roots)
    assert all(tuple(-c for c in r) in roots for r in roots)
    assert all(lat.gram.quadratic_form(r) == 2 for r in roots)
    for r in list(roots)[:30]:
        for s in roots:
            ip = lat.inner(r, s)
            assert ip.denominator == 1 and -2 <= ip <= 2
    assert classify(rs, lat).as_tuples() == [(kind, n, ade_root_count(kind, n))]


def test_classify_orthogonal_sum():
    lat = LatticeGram.of([[2, 0], [0, 2]])
    assert classify(short_vectors(lat), lat).as_tuples() == [("A", 1, 2), ("A", 1, 2)]


def test_classify_mixed_sum():
    rows = [[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 4]]
    lat = LatticeGram.of(rows)
    assert classify(short_vectors(lat), lat).as_tuples() == [("A", 1, 2), ("A", 2, 6)]


def test_classify_rejects_incomplete_set():
    lat = LatticeGram.of(cartan_gram("A", 2))
    partial = RootSet(short_vectors(lat).roots[:4])
    with pytest.raises(UnrecognizedComponent):
        classify(partial, lat)


def _random_unimodular(n, rng):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        for r in range(n):
            m[r][i] += c * m[r][j]
    return m


def test_classification_invariant_under_unimodular_change():
    rng = random.Random(5)
    g = cartan_gram("D", 4).rows
    for _ in range(5):
        u = _random_unimodular(4, rng)
        new = [[sum(u[a][i] * g[a][b] * u[b][j] for a in range(4) for b in range(4)) for j in range(4)] for i in range(4)]
        lat = LatticeGram.of(new)
        rs = short_vectors(lat)
        assert len(rs) == 24
        assert classify(rs, lat).as_tuples() == [("D", 4, 24)]


def test_rational_gram_and_other_norms():
    lat = LatticeGram.of([[1, 0], [0, 1]])
    assert len(short_vectors(lat, 1)) == 4
    assert len(short_vectors(lat, 2)) == 4
    assert len(short_vectors(lat, 5)) == 8


def test_not_positive_definite():
    with pytest.raises(NotPositiveDefinite):
        short_vectors(LatticeGram.of([[2, 2], [2, 2]]))
    with pytest.raises(NotPositiveDefinite):
        short_vectors(LatticeGram.of([[1, 0], [0, -1]]))


def test_max_roots():
    assert [max_roots(r) for r in (1, 2, 3, 4)] == [2, 6, 12, 24]
    # rank 3 alternatives: A3 = 12, A2 + A1 = 8, 3 A1 = 6
    assert ade_root_count("A", 3) == 12
    assert ade_root_count("A", 2) + ade_root_count("A", 1) == 8
    with pytest.raises(RankUnsupported):
        max_roots(5)


def test_pigeonhole_premise():
    assert 54 > 4 * (max_roots(4) // 2)
