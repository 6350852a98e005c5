import itertools

import pytest

import dense_oracle
from conftest import brute_partitions, family_members
from dold_milnor import bordism
from dold_milnor.bordism import (
    ProfileCache,
    SwProfile,
    bordant,
    bounds,
    partition_count,
    partitions,
    sw_number,
    sw_profile,
)
from dold_milnor.manifolds import Dold, Milnor, RealProj, dimension, euler_mod2, parse


def pentagonal_counts(n):
    p = [1] + [0] * n
    for k in range(1, n + 1):
        j, s = 1, 0
        while j * (3 * j - 1) // 2 <= k:
            sign = 1 if j % 2 else -1
            s += sign * p[k - j * (3 * j - 1) // 2]
            if j * (3 * j + 1) // 2 <= k:
                s += sign * p[k - j * (3 * j + 1) // 2]
            j += 1
        p[k] = s
    return p


def test_partitions_examples():
    assert partitions(0) == ((),)
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert len(partitions(10)) == 42


def test_partitions_against_brute_force_and_pentagonal():
    counts = pentagonal_counts(24)
    for d in range(17):
        got = partitions(d)
        assert set(got) == brute_partitions(d)
        assert len(got) == len(set(got)) == counts[d] == partition_count(d)
        assert list(got) == sorted(got, reverse=True)
        assert all(list(w) == sorted(w, reverse=True) and min(w, default=1) >= 1 for w in got)
    assert partition_count(24) == counts[24] == 1575


def test_sw_number_examples():
    assert sw_number(RealProj(2), (2,)) == 1
    assert sw_number(RealProj(2), (1, 1)) == 1
    assert all(sw_number(RealProj(3), w) == 0 for w in partitions(3))
    assert all(sw_number(Dold(1, 1), w) == 0 for w in partitions(3))
    assert sw_number(Dold(0, 0), ()) == 1


def test_sw_number_weight_mismatch():
    with pytest.raises(ValueError):
        sw_number(RealProj(2), (1,))


def test_profile_examples():
    assert sw_profile(RealProj(1)) == SwProfile(1, "0")
    prof = sw_profile(RealProj(2))
    assert prof.bits == "11" and prof.partitions == ((2,), (1, 1))
    for n in range(1, 17):
        assert sw_profile(Milnor(0, n)) == sw_profile(Dold(n - 1, 0))


def test_profile_matches_pointwise_sw_numbers():
    for M in [Milnor(2, 5), Dold(2, 2), parse("RP(2) X RP(4)"), Milnor(3, 4), parse("CP(2) X P(1,2)")]:
        prof = sw_profile(M)
        assert [sw_number(M, w) for w in partitions(dimension(M))] == [int(b) for b in prof.bits]


def test_bounds_examples():
    assert bounds(RealProj(3))
    assert all(bounds(Milnor(1, n)) for n in range(1, 16))
    assert all(bounds(Dold(m, n)) for m in range(7) for n in range(1, 8, 2))


def test_bordant_examples():
    assert bordant(Milnor(2, 4), Dold(1, 2))
    assert bordant(Milnor(2, 3), parse("RP(2) X RP(2)"))
    assert bordant(Dold(2, 2), Dold(2, 2))
    assert not bordant(Milnor(1, 1), RealProj(2))
    assert not bordant(RealProj(1), RealProj(3))  # both bound, different dimensions


@pytest.mark.parametrize("k", range(1, 17))
def test_real_projective_bounds_iff_odd(k):
    assert bounds(RealProj(k)) == (k % 2 == 1)


def test_bordism_is_an_equivalence_on_samples():
    for d in (4, 6, 7):
        sample = [Dold(d - 2 * s, s) for s in range(d // 2 + 1)]
        sample += [Milnor(m, d + 1 - m) for m in range(0, (d + 1) // 2 + 1)]
        for M, N, K in itertools.product(sample, repeat=3):
            assert bordant(M, M)
            assert bordant(M, N) == bordant(N, M)
            if bordant(M, N) and bordant(N, K):
                assert bordant(M, K)
        boundaries = [M for M in sample if bounds(M)]
        for M, N in itertools.product(boundaries, repeat=2):
            assert bordant(M, N)


def test_top_number_is_euler_characteristic():
    for M in family_members(16):
        d = dimension(M)
        assert sw_number(M, (d,) if d else ()) == euler_mod2(M), M


def test_dense_oracle_agrees_on_family_members():
    for M in family_members(12):
        for w in partitions(dimension(M)):
            assert sw_number(M, w) == dense_oracle.sw_number(M, w), (M, w)


def test_profile_cache_round_trip(tmp_path, caplog):
    path = tmp_path / "profiles.jsonl"
    sw_profile(Milnor(2, 5))
    cache = ProfileCache(path)
    assert cache.save() > 0
    lines = path.read_text(encoding="utf-8").splitlines()
    assert any('"H(2,5)"' in line for line in lines)
    # corrupt entries: bad json, wrong bit count, unparsable descriptor, wrong dim
    with open(path, "a", encoding="utf-8") as fh:
        fh.write("{not json\n")
        fh.write('{"manifold": "RP(2)", "dim": 2, "bits": "111"}\n')
        fh.write('{"manifold": "QQ(2)", "dim": 2, "bits": "11"}\n')
        fh.write('{"manifold": "RP(3)", "dim": 2, "bits": "11"}\n')
    bordism.clear_memo()
    fresh = ProfileCache(path)
    with caplog.at_level("WARNING"):
        loaded = fresh.load()
    assert loaded == len(lines)
    assert len([r for r in caplog.records if "corrupt cache entry" in r.message]) == 4
    assert sw_profile(Milnor(2, 5)) == bordism._compute_profile(Milnor(2, 5))
    assert sw_profile(RealProj(3)) == SwProfile(3, "000")
