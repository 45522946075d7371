"""Unit tests for the `track` module."""

from typing import Generator

import numpy as np
import pytest
from tracat.cohomology import build_track, zero_cocycle
from tracat.exceptions import ContextMismatch, StructuralError
from tracat.fincat import (
    arrow_category,
    identity_functor,
    parallel_category,
    validate_quotient,
)
from tracat.natsys import is_centralised, trivial_natural_system
from tracat.pretrack import PreTrack, validate_pre_track
from tracat.track import (
    PiGTrack,
    Track,
    TrackCategory,
    TrackFunctorWitness,
    are_equivalent_tracks,
    associated_pretrack,
    aut_natural_system,
    check_track_functor,
    compose_witnesses,
    discrete_track_category,
    hcomp,
    homotopy_category,
    identity_witness,
    is_abelian,
    random_permutations,
    relabel_pi_g_track,
    validate_pi_g_track,
    validate_track_category,
)
from tracat.utils import get_rng


@pytest.fixture(scope="module")
def collapse_track(zero_collapse_z2) -> Generator[PiGTrack, None, None]:
    """Yields the track category of the zero cocycle over `collapse_z2`."""
    yield build_track(zero_collapse_z2.pre, zero_collapse_z2)


@pytest.fixture(scope="module")
def parallel_track(parallel_z2) -> Generator[PiGTrack, None, None]:
    """Yields the track category of the zero cocycle over `parallel_z2`."""
    yield build_track(parallel_z2, zero_cocycle(parallel_z2))


def with_table(t: TrackCategory, name: str, key: tuple, table: list) -> TrackCategory:
    """A copy of a track category with one table entry replaced."""
    tables = {
        attr: dict(getattr(t, attr)) for attr in ("vcomp", "vneg", "lwhisk", "rwhisk")
    }
    tables[name][key] = np.array(table)
    return TrackCategory(
        underlying=t.underlying, tracks=dict(t.tracks), vzero=dict(t.vzero), **tables
    )


class TestValidateTrackCategory:
    """Unit tests for the `validate_track_category` function."""

    @pytest.mark.parametrize(
        argnames=["category"],
        argvalues=[(arrow_category(),), (parallel_category(3),)],
        ids=["arrow", "parallel"],
    )
    def test_discrete_track_category(self, category):
        """Test that the discrete track category passes."""
        assert validate_track_category(discrete_track_category(category)).passed

    def test_built_tracks_pass(self, collapse_track, parallel_track):
        """Test that the track categories of cocycles pass."""
        assert validate_track_category(collapse_track.track).passed
        assert validate_track_category(parallel_track.track).passed

    def test_corrupt_vertical_composition(self, collapse_track):
        """Test that a corrupted vcomp entry is reported."""
        t = collapse_track.track
        corrupted = with_table(t, "vcomp", (0, 1, 0), [[1, 1], [0, 0]])
        report = validate_track_category(corrupted)
        assert not report.passed
        assert report.labels & {"TR1", "TR2", "inverse"}

    def test_corrupt_whiskering_unit(self, collapse_track):
        """Test that a whiskering moving an identity track is reported."""
        corrupted = with_table(collapse_track.track, "lwhisk", (1, 0, 0), [1, 0])
        assert "TR5" in validate_track_category(corrupted).labels

    def test_missing_identity_track_raises(self):
        """Test that a morphism without an identity track is rejected."""
        t = discrete_track_category(arrow_category())
        with pytest.raises(StructuralError):
            TrackCategory(
                underlying=t.underlying,
                tracks=dict(t.tracks),
                vcomp=t.vcomp,
                vneg=t.vneg,
                vzero={0: 0, 1: 0},
                lwhisk=t.lwhisk,
                rwhisk=t.rwhisk,
            )

    def test_tracks_between_non_parallel_morphisms_raise(self):
        """Test that tracks must connect parallel morphisms."""
        t = discrete_track_category(arrow_category())
        with pytest.raises(StructuralError):
            TrackCategory(
                underlying=t.underlying,
                tracks=dict(t.tracks) | {(0, 2): 1},
                vcomp=t.vcomp,
                vneg=t.vneg,
                vzero=t.vzero,
                lwhisk=t.lwhisk,
                rwhisk=t.rwhisk,
            )

    def test_out_of_range_table_raises(self, collapse_track):
        """Test that a table entry naming a missing track is rejected."""
        with pytest.raises(StructuralError):
            with_table(collapse_track.track, "vneg", (0, 1), [0, 2])


class TestTrackCategory:
    """Unit tests for the `TrackCategory` class."""

    def test_hom(self, parallel_track):
        """Test that every pair in a fibre has |G_f| tracks."""
        t = parallel_track.track
        assert t.num_tracks(2, 3) == 2
        assert t.num_tracks(0, 2) == 0
        assert t.hom(2, 3) == [Track(2, 3, 0), Track(2, 3, 1)]

    def test_groupoid_operations(self, parallel_track):
        """Test composition with inverses and identities."""
        t = parallel_track.track
        for alpha in t.hom(2, 3):
            assert t.add(alpha, t.neg(alpha)) == t.zero(2)
            assert t.add(t.zero(2), alpha) == alpha

    def test_non_composable_tracks_raise(self, parallel_track):
        """Test that adding tracks which do not meet raises."""
        t = parallel_track.track
        with pytest.raises(StructuralError):
            t.add(Track(2, 3, 0), Track(2, 3, 0))

    def test_hcomp_of_identities(self, collapse_track):
        """Test that the horizontal composite of identity tracks is an identity."""
        t = collapse_track.track
        c = t.underlying
        for g, f in c.composable_pairs:
            assert hcomp(t, t.zero(f), t.zero(g)) == t.zero(c.compose(g, f))

    def test_is_abelian(self, collapse_track):
        """Test that tracks built from an abelian group have abelian automorphisms."""
        assert is_abelian(collapse_track.track)


class TestHomotopyCategory:
    """Unit tests for the `homotopy_category` function."""

    def test_discrete(self):
        """Test that the discrete track category gives back the category."""
        k = parallel_category(2)
        homotopy, pi = homotopy_category(discrete_track_category(k))
        assert homotopy.num_morphisms == k.num_morphisms
        assert [m.name for m in homotopy.morphisms] == [m.name for m in k.morphisms]
        assert validate_quotient(pi).passed

    def test_parallel_collapse(self, parallel_track):
        """Test that two parallel arrows with tracks between them are identified."""
        homotopy, pi = homotopy_category(parallel_track.track)
        assert homotopy.num_morphisms == 3
        assert "f~g" in {m.name for m in homotopy.morphisms}
        assert pi(2) == pi(3)
        assert validate_quotient(pi).passed

    def test_associated_pretrack(self, parallel_track):
        """Test that a track category induces a valid pre-track category."""
        p = associated_pretrack(parallel_track.track)
        assert validate_pre_track(p.pi, p.system).passed
        assert p.classes == [[0], [1], [2, 3]]


class TestAutNaturalSystem:
    """Unit tests for the `aut_natural_system` function."""

    def test_discrete(self):
        """Test that the discrete track category has trivial automorphisms."""
        t = discrete_track_category(parallel_category(2))
        system = aut_natural_system(t)
        assert all(group.order == 1 for group in system.groups)

    def test_zero_cocycle_recovers_the_coefficients(self, collapse_track):
        """Test that the automorphisms of the zero track category are G."""
        assert aut_natural_system(collapse_track.track) == collapse_track.pre.system

    def test_centralised(self, collapse_track, parallel_track):
        """Test that automorphism systems are centralised."""
        for x in (collapse_track, parallel_track):
            assert is_centralised(aut_natural_system(x.track)).passed

    def test_centralised_after_relabelling(self, collapse_track):
        """Test that centralisation survives a random relabelling of the tracks."""
        for seed in range(3):
            rng = get_rng(seed=seed, stream="test")
            relabelled, _ = relabel_pi_g_track(
                collapse_track, random_permutations(collapse_track.track, rng)
            )
            assert validate_track_category(relabelled.track).passed
            assert is_centralised(aut_natural_system(relabelled.track)).passed


class TestValidatePiGTrack:
    """Unit tests for the `validate_pi_g_track` function."""

    def test_discrete_over_identity(self):
        """Test the discrete track category over the identity functor."""
        k = parallel_category(2)
        p = PreTrack(pi=identity_functor(k), system=trivial_natural_system(k))
        t = discrete_track_category(k)
        sigma = {f: np.zeros(1, dtype=np.int64) for f in range(k.num_morphisms)}
        assert validate_pi_g_track(PiGTrack(track=t, pre=p, sigma=sigma)).passed

    def test_missing_tracks(self, trivial_parallel):
        """Test that a fibre without tracks between its members is reported."""
        t = discrete_track_category(trivial_parallel.base)
        sigma = {f: np.zeros(1, dtype=np.int64) for f in range(4)}
        x = PiGTrack(track=t, pre=trivial_parallel, sigma=sigma)
        report = validate_pi_g_track(x)
        assert report.labels == {"iff"}
        assert ("f", "g") in {violation.witness for violation in report.violations}

    def test_sigma_not_a_bijection(self, collapse_track):
        """Test that a non-bijective sigma is reported."""
        sigma = dict(collapse_track.sigma) | {0: np.zeros(2, dtype=np.int64)}
        x = PiGTrack(track=collapse_track.track, pre=collapse_track.pre, sigma=sigma)
        assert "sigma-bijection" in validate_pi_g_track(x).labels

    def test_built_tracks_pass(self, collapse_track, parallel_track):
        """Test that the track categories of cocycles pass."""
        assert validate_pi_g_track(collapse_track).passed
        assert validate_pi_g_track(parallel_track).passed

    def test_mismatched_category_raises(self, collapse_track, parallel_z2):
        """Test that the track category must live on the base of the pre-track."""
        with pytest.raises(ContextMismatch):
            PiGTrack(track=collapse_track.track, pre=parallel_z2, sigma=dict())


class TestTrackFunctors:
    """Unit tests for the track functor functions."""

    def test_identity(self, collapse_track):
        """Test that the identity is an equivalence."""
        witness = identity_witness(collapse_track)
        assert witness.is_identity()
        assert check_track_functor(collapse_track, collapse_track, witness).passed

    def test_broken_identity(self, collapse_track):
        """Test that moving the identity track is reported."""
        mapping = dict(identity_witness(collapse_track).mapping)
        mapping[(0, 0)] = np.array([1, 0])
        report = check_track_functor(
            collapse_track, collapse_track, TrackFunctorWitness(mapping=mapping)
        )
        assert "vzero" in report.labels

    def test_reflexive(self, collapse_track):
        """Test that a track category is equivalent to itself."""
        witness = are_equivalent_tracks(collapse_track, collapse_track)
        assert witness is not None
        assert check_track_functor(collapse_track, collapse_track, witness).passed

    @pytest.mark.parametrize(
        argnames=["seed"], argvalues=[(0,), (1,), (2,)], ids=["0", "1", "2"]
    )
    def test_relabelled_copies(self, parallel_track, seed):
        """Test that relabelled copies are equivalent, in both directions."""
        rng = get_rng(seed=seed, stream="test")
        y, witness = relabel_pi_g_track(
            parallel_track, random_permutations(parallel_track.track, rng)
        )
        assert validate_pi_g_track(y).passed
        assert check_track_functor(parallel_track, y, witness).passed
        forward = are_equivalent_tracks(parallel_track, y)
        backward = are_equivalent_tracks(y, parallel_track)
        assert forward is not None and backward is not None
        assert check_track_functor(
            parallel_track, parallel_track, compose_witnesses(forward, backward)
        ).passed

    def test_mismatched_pre_track_raises(self, collapse_track, parallel_track):
        """Test that track categories over different pre-tracks are not compared."""
        with pytest.raises(ContextMismatch):
            are_equivalent_tracks(collapse_track, parallel_track)
