import pytest

from kvis.generate import PROFILES, comb, random_scene, star
from kvis.io import print_scene


@pytest.mark.parametrize("profile", PROFILES)
def test_profiles_valid_and_seeded(profile):
    for seed in range(4):
        sc = random_scene(seed, 20, profile, 2)
        sc.validate(exhaustive=True)
        assert print_scene(random_scene(seed, 20, profile, 2)) == print_scene(sc)


def test_star_critical_count():
    assert star(0, 128, 0).critical_count() == 16


def test_comb_rounds_up():
    sc = comb(0, 64)
    assert sc.n >= 64 and sc.critical_count() >= 16


def test_unknown_profile():
    with pytest.raises(ValueError):
        random_scene(0, 10, "spiral")
