import pytest

from lagrecon.stencil import (Stencil, Subdivision, is_positive_subdivision,
                              standard_subdivision, substencils, subdivisions_up_to)


def test_points_and_width():
    s = Stencil(2, 3)
    assert s.M == 5 and list(s.points) == [-2, -1, 0, 1, 2, 3]
    assert Stencil(-1, 3).M == 2 and list(Stencil(-1, 3).points) == [1, 2, 3]


def test_negative_width_rejected():
    with pytest.raises(ValueError):
        Stencil(-3, 1)


def test_substencils_examples():
    assert substencils(Subdivision.of(2, 2, 2)) == [Stencil(2, 0), Stencil(1, 1), Stencil(0, 2)]
    assert substencils(Subdivision.of(1, 1, 1)) == [Stencil(1, 0), Stencil(0, 1)]
    assert substencils(Subdivision.of(3, 1, 0)) == [Stencil(3, 1)]


def test_level_out_of_range():
    with pytest.raises(ValueError):
        Subdivision.of(1, 1, 2)
    with pytest.raises(ValueError):
        Subdivision.of(1, 1, -1)


@pytest.mark.parametrize("sd", subdivisions_up_to(7) + [Subdivision.of(-1, 5, 2),
                                                         Subdivision.of(4, -1, 1)])
def test_substencil_structure(sd):
    subs = substencils(sd)
    assert len(subs) == sd.ks + 1
    assert all(s.M == sd.M - sd.ks for s in subs)
    assert all(b.m_minus == a.m_minus - 1 for a, b in zip(subs, subs[1:]))
    union = set().union(*(set(s.points) for s in subs))
    assert union == set(sd.stencil.points)


def test_positive_examples():
    assert is_positive_subdivision(Subdivision.of(2, 2, 2))
    assert is_positive_subdivision(Subdivision.of(3, 4, 4))
    assert not is_positive_subdivision(Subdivision.of(3, 3, 4))


def _membership(sd):
    return all(0 in s or 1 in s for s in substencils(sd))


@pytest.mark.parametrize("M", range(1, 10))
def test_positive_matches_membership(M):
    for mm in range(-2, M + 3):
        for K in range(0, M):
            sd = Subdivision.of(mm, M - mm, K)
            if K == 0:
                continue
            assert is_positive_subdivision(sd) == _membership(sd), sd


@pytest.mark.parametrize("M", range(2, 10))
def test_level1_with_pivot_pair_is_positive(M):
    for mm in range(0, M):
        assert is_positive_subdivision(Subdivision.of(mm, M - mm, 1))


def test_standard_subdivision():
    assert standard_subdivision(7) == Subdivision.of(3, 4, 4)
    assert standard_subdivision(6) == Subdivision.of(3, 3, 3)


def test_json():
    sd = Subdivision.of(3, 4, 4)
    assert sd.to_json() == {"m_minus": 3, "m_plus": 4, "ks": 4}
    assert Subdivision.from_json(sd.to_json()) == sd
