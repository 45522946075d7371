"""Track categories over a finite category and (pi, G)-track categories.

A track `alpha: f => g` between parallel morphisms is stored as the triple
`Track(f, g, local)`, where `local` indexes the finite set `T(f, g)`. All structure
is given by tables over these local indices:

- `vcomp[(f, g, h)][i, j]` is the local index of `alpha + beta` in `T(f, h)`,
- `vneg[(f, g)][i]` is the local index of `-alpha` in `T(g, f)`,
- `vzero[f]` is the local index of `0_f` in `T(f, f)`,
- `lwhisk[(a, f, g)][i]` is the local index of `a_*(alpha)` in `T(af, ag)`,
- `rwhisk[(f, g, b)][i]` is the local index of `b^*(alpha)` in `T(fb, gb)`.
"""

import itertools as it
import logging
import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from tqdm.auto import tqdm

from .config import SearchBudget
from .exceptions import (
    BudgetExceeded,
    ContextMismatch,
    NotACongruence,
    StructuralError,
)
from .fincat import (
    FiniteCategory,
    Morphism,
    QuotientFunctor,
    validate_category,
)
from .fingroup import FiniteGroup, GroupHom
from .natsys import NaturalSystem
from .pretrack import PreTrack
from .reports import ValidationReport
from .types import PairKey, XiKey
from .utils import UnionFind

logger = logging.getLogger(__package__)


class Track(NamedTuple):
    """A track `src => tgt`, given by its local index in `T(src, tgt)`."""

    src: int
    tgt: int
    local: int


def _frozen(table: np.ndarray | list) -> np.ndarray:
    array = np.array(table, dtype=np.int64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TrackCategory:
    """A category enriched in groupoids, over a fixed finite category.

    Attributes:
        underlying:
            The underlying category K.
        tracks:
            The number of tracks `f => g` for every pair `(f, g)` with `T(f, g)`
            non-empty. Pairs that are not listed have no tracks.
        vcomp:
            The vertical composition tables.
        vneg:
            The vertical inverse tables.
        vzero:
            The identity track of every morphism.
        lwhisk:
            The tables of the whiskering `a_*` by a morphism on the left.
        rwhisk:
            The tables of the whiskering `b^*` by a morphism on the right.
    """

    underlying: FiniteCategory
    tracks: dict[PairKey, int]
    vcomp: dict[XiKey, np.ndarray]
    vneg: dict[PairKey, np.ndarray]
    vzero: dict[int, int]
    lwhisk: dict[tuple[int, int, int], np.ndarray]
    rwhisk: dict[tuple[int, int, int], np.ndarray]
    successors: dict[int, list[int]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Check that every table is typed and covers its index set."""
        c = self.underlying
        for (f, g), num in self.tracks.items():
            if not c.parallel(f, g):
                raise StructuralError(
                    f"There are tracks {c.morphism_name(f)} => {c.morphism_name(g)} "
                    "between morphisms that are not parallel."
                )
            if num < 1:
                raise StructuralError(
                    "Only pairs with at least one track are listed in the track table."
                )
        for f in range(c.num_morphisms):
            if (f, f) not in self.tracks or f not in self.vzero:
                raise StructuralError(
                    f"The morphism {c.morphism_name(f)} has no identity track."
                )
            if not 0 <= self.vzero[f] < self.tracks[(f, f)]:
                raise StructuralError(
                    f"The identity track of {c.morphism_name(f)} is out of range."
                )

        successors: dict[int, list[int]] = {f: list() for f in range(c.num_morphisms)}
        for f, g in sorted(self.tracks):
            successors[f].append(g)
        object.__setattr__(self, "successors", successors)

        vcomp_shapes = {
            (f, g, h): ((self.tracks[(f, g)], self.tracks[(g, h)]), (f, h))
            for f, g in self.tracks
            for h in successors[g]
        }
        vneg_shapes = {
            (f, g): ((num,), (g, f)) for (f, g), num in self.tracks.items()
        }
        lwhisk_shapes = {
            (a, f, g): ((num,), (c.compose(a, f), c.compose(a, g)))
            for (f, g), num in self.tracks.items()
            for a in range(c.num_morphisms)
            if c.composable(a, f)
        }
        rwhisk_shapes = {
            (f, g, b): ((num,), (c.compose(f, b), c.compose(g, b)))
            for (f, g), num in self.tracks.items()
            for b in range(c.num_morphisms)
            if c.composable(f, b)
        }
        for table_name, shapes in (
            ("vcomp", vcomp_shapes),
            ("vneg", vneg_shapes),
            ("lwhisk", lwhisk_shapes),
            ("rwhisk", rwhisk_shapes),
        ):
            table = getattr(self, table_name)
            if set(table) != set(shapes):
                missing = sorted(set(shapes) - set(table))[:3]
                extra = [
                    key
                    for key in sorted(set(table) - set(shapes))[:3]
                    if max(key) < c.num_morphisms
                ]
                raise StructuralError(
                    f"The {table_name} table does not cover its typed index set; "
                    f"missing {[c.names(*key) for key in missing]}, unexpected "
                    f"{[c.names(*key) for key in extra]}."
                )
            frozen = dict()
            for key, (shape, target) in shapes.items():
                array = _frozen(table[key])
                if target not in self.tracks:
                    raise StructuralError(
                        f"The {table_name} entry at {c.names(*key)} lands in the "
                        f"empty set of tracks {c.names(*target)}."
                    )
                if array.shape != shape:
                    raise StructuralError(
                        f"The {table_name} entry at {c.names(*key)} has shape "
                        f"{array.shape}, expected {shape}."
                    )
                if array.size and (
                    array.min() < 0 or array.max() >= self.tracks[target]
                ):
                    raise StructuralError(
                        f"The {table_name} entry at {c.names(*key)} refers to tracks "
                        "that do not exist."
                    )
                frozen[key] = array
            object.__setattr__(self, table_name, frozen)

    def num_tracks(self, f: int, g: int) -> int:
        """The size of `T(f, g)`."""
        return self.tracks.get((f, g), 0)

    def hom(self, f: int, g: int) -> list[Track]:
        """All tracks `f => g`."""
        return [Track(f, g, local) for local in range(self.num_tracks(f, g))]

    def add(self, alpha: Track, beta: Track) -> Track:
        """The vertical composite `alpha + beta`.

        Raises:
            StructuralError:
                If the target of `alpha` is not the source of `beta`.
        """
        if alpha.tgt != beta.src:
            raise StructuralError(f"The tracks {alpha} and {beta} are not composable.")
        table = self.vcomp[(alpha.src, alpha.tgt, beta.tgt)]
        return Track(alpha.src, beta.tgt, int(table[alpha.local, beta.local]))

    def neg(self, alpha: Track) -> Track:
        """The vertical inverse `-alpha`."""
        return Track(
            alpha.tgt, alpha.src, int(self.vneg[(alpha.src, alpha.tgt)][alpha.local])
        )

    def zero(self, f: int) -> Track:
        """The identity track `0_f`."""
        return Track(f, f, self.vzero[f])

    def push(self, a: int, alpha: Track) -> Track:
        """The whiskered track `a_*(alpha): af => ag`."""
        c = self.underlying
        table = self.lwhisk[(a, alpha.src, alpha.tgt)]
        return Track(
            c.compose(a, alpha.src), c.compose(a, alpha.tgt), int(table[alpha.local])
        )

    def pull(self, alpha: Track, b: int) -> Track:
        """The whiskered track `b^*(alpha): fb => gb`."""
        c = self.underlying
        table = self.rwhisk[(alpha.src, alpha.tgt, b)]
        return Track(
            c.compose(alpha.src, b), c.compose(alpha.tgt, b), int(table[alpha.local])
        )

    def key(self) -> tuple:
        """A hashable key identifying the track category."""
        return (
            self.underlying.key(),
            tuple(sorted(self.tracks.items())),
            tuple(sorted(self.vzero.items())),
            *(
                tuple((key, array.tobytes()) for key, array in sorted(table.items()))
                for table in (self.vcomp, self.vneg, self.lwhisk, self.rwhisk)
            ),
        )

    def __eq__(self, other: object) -> bool:
        """Track categories are equal when their tables are."""
        if not isinstance(other, TrackCategory):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        """Return a hash of the tables."""
        return hash(self.key())


@dataclass(frozen=True, eq=False)
class PiGTrack:
    """A (pi, G)-track category.

    Attributes:
        track:
            The track category, with underlying category K.
        pre:
            The pre-track category `(pi, G)`.
        sigma:
            For every morphism `f`, the table sending the local index of a track in
            `T(f, f)` to an element of `G_f`.
    """

    track: TrackCategory
    pre: PreTrack
    sigma: dict[int, np.ndarray]

    def __post_init__(self) -> None:
        """Check that the components fit together."""
        if self.track.underlying != self.pre.base:
            raise ContextMismatch(
                "The track category does not live on the category of the pre-track "
                "category."
            )
        c = self.track.underlying
        if set(self.sigma) != set(range(c.num_morphisms)):
            raise StructuralError("The sigma table must cover every morphism.")
        frozen = dict()
        for f, table in self.sigma.items():
            array = _frozen(table)
            order = self.pre.group(f).order
            if array.shape != (self.track.num_tracks(f, f),) or (
                array.size and (array.min() < 0 or array.max() >= order)
            ):
                raise StructuralError(
                    f"The sigma entry of {c.morphism_name(f)} does not map Aut_f into "
                    "G_f."
                )
            frozen[f] = array
        object.__setattr__(self, "sigma", frozen)

    def sigma_inverse(self, f: int) -> np.ndarray:
        """The inverse of `sigma_f`, sending elements of `G_f` to local indices.

        Raises:
            StructuralError:
                If `sigma_f` is not a bijection.
        """
        table = self.sigma[f]
        if sorted(table.tolist()) != list(range(self.pre.group(f).order)):
            raise StructuralError(
                f"The sigma entry of {self.track.underlying.morphism_name(f)} is not "
                "a bijection."
            )
        inverse = np.empty_like(table)
        inverse[table] = np.arange(len(table))
        return inverse

    def key(self) -> tuple:
        """A hashable key identifying the (pi, G)-track category."""
        return (
            self.track.key(),
            self.pre.key(),
            tuple((f, table.tobytes()) for f, table in sorted(self.sigma.items())),
        )

    def __eq__(self, other: object) -> bool:
        """(pi, G)-track categories are equal when their tables are."""
        if not isinstance(other, PiGTrack):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        """Return a hash of the tables."""
        return hash(self.key())


@dataclass(frozen=True)
class TrackFunctorWitness:
    """A track functor which is the identity on the underlying category.

    Attributes:
        mapping:
            For every pair `(f, g)` with tracks, the table sending the local index of
            a track in the source to the local index of its image in the target.
    """

    mapping: dict[PairKey, np.ndarray]

    def __call__(self, alpha: Track) -> Track:
        """The image of a track."""
        return Track(
            alpha.src, alpha.tgt, int(self.mapping[(alpha.src, alpha.tgt)][alpha.local])
        )

    def is_identity(self) -> bool:
        """Whether the functor is the identity."""
        return all(
            np.array_equal(table, np.arange(len(table)))
            for table in self.mapping.values()
        )


def validate_track_category(t: TrackCategory) -> ValidationReport:
    """Check the groupoid axioms and TR1 to TR9 on all typed tuples.

    Every axiom is checked for all tracks at once per tuple of morphisms, and at most
    one violation is reported per tuple, with the first offending tracks in the
    detail.

    Args:
        t:
            The track category.

    Returns:
        The report, with labels "TR1" to "TR9" and "inverse".
    """
    c = t.underlying
    report = ValidationReport(subject="track category")
    report.extend(validate_category(c), prefix="K ")

    def check(label: str, morphisms: tuple[int, ...], lhs, rhs) -> None:
        failures = np.argwhere(np.asarray(lhs) != np.asarray(rhs))
        if len(failures):
            report.add(
                label,
                c.names(*morphisms),
                f"fails at track indices {tuple(int(i) for i in failures[0])}",
            )

    vcomp, vneg, lwhisk, rwhisk = t.vcomp, t.vneg, t.lwhisk, t.rwhisk
    arange = {pair: np.arange(num) for pair, num in t.tracks.items()}

    for (f, g, h), fgh in sorted(vcomp.items()):
        for k in t.successors[h]:
            lhs = vcomp[(f, h, k)][fgh[:, :, None], arange[(h, k)][None, None, :]]
            rhs = vcomp[(f, g, k)][arange[(f, g)][:, None, None], vcomp[(g, h, k)]]
            check("TR1", (f, g, h, k), lhs, rhs)

    for (f, g), num in sorted(t.tracks.items()):
        check("TR2", (f, g), vcomp[(f, f, g)][t.vzero[f], :], arange[(f, g)])
        check("TR2", (f, g), vcomp[(f, g, g)][:, t.vzero[g]], arange[(f, g)])
        check(
            "inverse",
            (f, g),
            vcomp[(f, g, f)][arange[(f, g)], vneg[(f, g)]],
            np.full(num, t.vzero[f]),
        )
        check(
            "inverse",
            (f, g),
            vcomp[(g, f, g)][vneg[(f, g)], arange[(f, g)]],
            np.full(num, t.vzero[g]),
        )

    # Whiskering is additive
    for (u, v, w), uvw in sorted(vcomp.items()):
        for b in range(c.num_morphisms):
            if not c.composable(u, b):
                continue
            ub, vb, wb = c.compose(u, b), c.compose(v, b), c.compose(w, b)
            lhs = rwhisk[(u, w, b)][uvw]
            rhs = vcomp[(ub, vb, wb)][
                rwhisk[(u, v, b)][:, None], rwhisk[(v, w, b)][None, :]
            ]
            check("TR3", (u, v, w, b), lhs, rhs)
        for a in range(c.num_morphisms):
            if not c.composable(a, u):
                continue
            au, av, aw = c.compose(a, u), c.compose(a, v), c.compose(a, w)
            lhs = lwhisk[(a, u, w)][uvw]
            rhs = vcomp[(au, av, aw)][
                lwhisk[(a, u, v)][:, None], lwhisk[(a, v, w)][None, :]
            ]
            check("TR4", (a, u, v, w), lhs, rhs)

    # Whiskering is unital
    for (u, u2, b), table in sorted(rwhisk.items()):
        if u == u2 and table[t.vzero[u]] != t.vzero[c.compose(u, b)]:
            report.add("TR5", c.names(u, b), "b^*(0) is not 0")
    for (a, u, u2), table in sorted(lwhisk.items()):
        if u == u2 and table[t.vzero[u]] != t.vzero[c.compose(a, u)]:
            report.add("TR5", c.names(a, u), "a_*(0) is not 0")

    # Whiskering is functorial
    for (u, v, f), table in sorted(rwhisk.items()):
        if c.is_identity(f):
            check("TR6", (u, v, f), table, arange[(u, v)])
        for f1 in range(c.num_morphisms):
            if not c.composable(f, f1):
                continue
            lhs = rwhisk[(u, v, c.compose(f, f1))]
            rhs = rwhisk[(c.compose(u, f), c.compose(v, f), f1)][table]
            check("TR6", (u, v, f, f1), lhs, rhs)
    for (g, u, v), table in sorted(lwhisk.items()):
        if c.is_identity(g):
            check("TR7", (g, u, v), table, arange[(u, v)])
        for g0 in range(c.num_morphisms):
            if not c.composable(g0, g):
                continue
            lhs = lwhisk[(c.compose(g0, g), u, v)]
            rhs = lwhisk[(g0, c.compose(g, u), c.compose(g, v))][table]
            check("TR7", (g0, g, u, v), lhs, rhs)

    # The two whiskerings commute
    for (g, u, v), table in sorted(lwhisk.items()):
        for f in range(c.num_morphisms):
            if not c.composable(u, f):
                continue
            lhs = lwhisk[(g, c.compose(u, f), c.compose(v, f))][rwhisk[(u, v, f)]]
            rhs = rwhisk[(c.compose(g, u), c.compose(g, v), f)][table]
            check("TR8", (g, u, v, f), lhs, rhs)

    # Interchange of alpha: f => f1 and alpha1: g => g1
    for (f, f1), (g, g1) in it.product(sorted(t.tracks), repeat=2):
        if not c.composable(g, f):
            continue
        gf, gf1 = c.compose(g, f), c.compose(g, f1)
        g1f, g1f1 = c.compose(g1, f), c.compose(g1, f1)
        lhs = vcomp[(gf, gf1, g1f1)][
            lwhisk[(g, f, f1)][:, None], rwhisk[(g, g1, f1)][None, :]
        ]
        rhs = vcomp[(gf, g1f, g1f1)][
            rwhisk[(g, g1, f)][None, :], lwhisk[(g1, f, f1)][:, None]
        ]
        check("TR9", (f, f1, g, g1), lhs, rhs)

    return report


def hcomp(t: TrackCategory, alpha: Track, alpha1: Track) -> Track:
    """The horizontal composite of `alpha: f => f1` and `alpha1: g => g1`.

    Args:
        t:
            The track category.
        alpha:
            The track between morphisms applied first.
        alpha1:
            The track between morphisms applied last.

    Returns:
        The track `g_*(alpha) + f1^*(alpha1): gf => g1f1`.
    """
    return t.add(t.push(alpha1.src, alpha), t.pull(alpha1, alpha.tgt))


def discrete_track_category(k: FiniteCategory) -> TrackCategory:
    """The track category with only identity tracks."""
    n = k.num_morphisms
    return TrackCategory(
        underlying=k,
        tracks={(f, f): 1 for f in range(n)},
        vcomp={(f, f, f): [[0]] for f in range(n)},
        vneg={(f, f): [0] for f in range(n)},
        vzero={f: 0 for f in range(n)},
        lwhisk={(a, f, f): [0] for a, f in k.composable_pairs},
        rwhisk={(f, f, b): [0] for f, b in k.composable_pairs},
    )


def is_abelian(t: TrackCategory) -> bool:
    """Whether every automorphism group `Aut_f` is commutative."""
    return all(
        np.array_equal(t.vcomp[(f, f, f)], t.vcomp[(f, f, f)].T)
        for f in range(t.underlying.num_morphisms)
    )


def homotopy_category(t: TrackCategory) -> tuple[FiniteCategory, QuotientFunctor]:
    """The homotopy category `K / ~` and the projection onto it.

    Two morphisms are homotopic when there is a track between them. A class is named
    by joining the names of its members with "~", and a singleton class keeps the
    name of its member.

    Args:
        t:
            The track category, assumed to be valid.

    Returns:
        The homotopy category and the projection functor.

    Raises:
        NotACongruence:
            If homotopy is not an equivalence relation compatible with composition on
            the given tables.
    """
    c = t.underlying
    union_find = UnionFind(range(c.num_morphisms))
    for f, g in t.tracks:
        union_find.union(f, g)
    classes = sorted(sorted(members) for members in union_find.classes())

    for members in classes:
        for f, g in it.product(members, repeat=2):
            if (f, g) not in t.tracks:
                raise NotACongruence(
                    f"The morphisms {c.morphism_name(f)} and {c.morphism_name(g)} are "
                    "connected by a chain of tracks, but not by a track."
                )

    class_of = {f: idx for idx, members in enumerate(classes) for f in members}
    class_names = ["~".join(sorted(c.names(*members))) for members in classes]

    composites: dict[tuple[str, str], str] = dict()
    for g_class, f_class in it.product(range(len(classes)), repeat=2):
        g_rep, f_rep = classes[g_class][0], classes[f_class][0]
        if not c.composable(g_rep, f_rep):
            continue
        images = {
            class_of[c.compose(g, f)]
            for g, f in it.product(classes[g_class], classes[f_class])
        }
        if len(images) > 1:
            raise NotACongruence(
                f"Composing the classes {class_names[g_class]} and "
                f"{class_names[f_class]} does not give a single class."
            )
        composites[(class_names[g_class], class_names[f_class])] = class_names[
            images.pop()
        ]

    homotopy = FiniteCategory(
        objects=c.objects,
        morphisms=tuple(
            Morphism(name, c.src(members[0]), c.tgt(members[0]))
            for name, members in zip(class_names, classes)
        ),
        identities={
            obj: class_names[class_of[c.identity(obj)]] for obj in c.objects
        },
        composites=composites,
        name=f"{c.name}/~",
    )
    pi = QuotientFunctor(
        src=c,
        dst=homotopy,
        mapping={c.morphism_name(f): class_names[class_of[f]] for f in class_of},
    )
    return homotopy, pi


def automorphism_labels(t: TrackCategory, f: int) -> list[int]:
    """The local indices of `T(f, f)`, identity track first, then ascending."""
    zero = t.vzero[f]
    return [zero] + [local for local in range(t.num_tracks(f, f)) if local != zero]


def aut_natural_system(t: TrackCategory) -> NaturalSystem:
    """The natural system `Aut^T` of automorphism groups of a track category.

    The group `Aut_f` is `T(f, f)` under vertical composition, with its elements
    relabelled by `automorphism_labels` so that the identity track is 0. The maps
    are the whiskerings.

    Args:
        t:
            The track category, assumed to be valid.

    Returns:
        The natural system.
    """
    c = t.underlying
    labels = {f: np.array(automorphism_labels(t, f)) for f in range(c.num_morphisms)}
    positions = dict()
    for f, label in labels.items():
        position = np.empty_like(label)
        position[label] = np.arange(len(label))
        positions[f] = position

    groups = []
    for f in range(c.num_morphisms):
        label, position = labels[f], positions[f]
        groups.append(
            FiniteGroup(
                add_table=position[t.vcomp[(f, f, f)][label[:, None], label[None, :]]],
                neg_table=position[t.vneg[(f, f)][label]],
                name=f"Aut({c.morphism_name(f)})",
            )
        )

    push, pull = dict(), dict()
    for g, f in c.composable_pairs:
        gf = c.compose(g, f)
        push[(g, f)] = GroupHom(
            src=groups[f],
            dst=groups[gf],
            mapping=positions[gf][t.lwhisk[(g, f, f)][labels[f]]],
        )
        pull[(g, f)] = GroupHom(
            src=groups[g],
            dst=groups[gf],
            mapping=positions[gf][t.rwhisk[(g, g, f)][labels[g]]],
        )
    return NaturalSystem(base=c, groups=tuple(groups), push=push, pull=pull)


def associated_pretrack(t: TrackCategory) -> PreTrack:
    """The pre-track category `(K -> K / ~, Aut^T)` of a track category."""
    _, pi = homotopy_category(t)
    return PreTrack(pi=pi, system=aut_natural_system(t), name=f"{pi.src.name}/~")


def validate_pi_g_track(x: PiGTrack) -> ValidationReport:
    """Check that a track category and `sigma` make up a (pi, G)-track category.

    The checks are that `T(f, g)` is non-empty exactly when `pi(f) = pi(g)`, and
    that `sigma: Aut^T -> G` is an isomorphism of natural systems.

    Args:
        x:
            The (pi, G)-track category.

    Returns:
        The report, with labels "iff", "sigma-bijection", "sigma-hom",
        "sigma-push" and "sigma-pull".
    """
    t, p = x.track, x.pre
    c = t.underlying
    report = ValidationReport(subject="(pi, G)-track category")

    for f, g in it.product(range(c.num_morphisms), repeat=2):
        if not c.parallel(f, g):
            continue
        if ((f, g) in t.tracks) != p.same_class(f, g):
            report.add(
                "iff",
                c.names(f, g),
                "T(f, g) is non-empty" if (f, g) in t.tracks else "T(f, g) is empty",
            )

    for f in range(c.num_morphisms):
        sigma, group = x.sigma[f], p.group(f)
        if sorted(sigma.tolist()) != list(group.elements):
            report.add("sigma-bijection", c.names(f))
            continue
        lhs = sigma[t.vcomp[(f, f, f)]]
        rhs = group.add_table[sigma[:, None], sigma[None, :]]
        if not np.array_equal(lhs, rhs):
            report.add("sigma-hom", c.names(f))

    for g, f in c.composable_pairs:
        gf = c.compose(g, f)
        lhs = x.sigma[gf][t.lwhisk[(g, f, f)]]
        rhs = p.system.push_map(g, f).mapping[x.sigma[f]]
        if not np.array_equal(lhs, rhs):
            report.add("sigma-push", c.names(g, f))
        lhs = x.sigma[gf][t.rwhisk[(g, g, f)]]
        rhs = p.system.pull_map(g, f).mapping[x.sigma[g]]
        if not np.array_equal(lhs, rhs):
            report.add("sigma-pull", c.names(g, f))

    return report


def check_track_functor(
    x: PiGTrack, y: PiGTrack, witness: TrackFunctorWitness
) -> ValidationReport:
    """Check that a table of maps is an equivalence of (pi, G)-track categories.

    Args:
        x:
            The source.
        y:
            The target.
        witness:
            The candidate functor, identity on the underlying category.

    Returns:
        The report, with labels "bijection", "vcomp", "vzero", "lwhisk", "rwhisk"
        and "sigma".
    """
    s, t = x.track, y.track
    c = s.underlying
    mapping = witness.mapping
    report = ValidationReport(subject="track functor")

    if set(mapping) != set(s.tracks) or set(s.tracks) != set(t.tracks):
        report.add("bijection", tuple(), "the track sets do not match")
        return report
    for pair, table in sorted(mapping.items()):
        if sorted(table.tolist()) != list(range(t.tracks[pair])):
            report.add("bijection", c.names(*pair))
    if not report.passed:
        return report

    for (f, g, h), table in sorted(s.vcomp.items()):
        lhs = mapping[(f, h)][table]
        rhs = t.vcomp[(f, g, h)][mapping[(f, g)][:, None], mapping[(g, h)][None, :]]
        if not np.array_equal(lhs, rhs):
            report.add("vcomp", c.names(f, g, h))
    for f, zero in sorted(s.vzero.items()):
        if mapping[(f, f)][zero] != t.vzero[f]:
            report.add("vzero", c.names(f))
    for (a, f, g), table in sorted(s.lwhisk.items()):
        target = (c.compose(a, f), c.compose(a, g))
        if not np.array_equal(
            mapping[target][table], t.lwhisk[(a, f, g)][mapping[(f, g)]]
        ):
            report.add("lwhisk", c.names(a, f, g))
    for (f, g, b), table in sorted(s.rwhisk.items()):
        target = (c.compose(f, b), c.compose(g, b))
        if not np.array_equal(
            mapping[target][table], t.rwhisk[(f, g, b)][mapping[(f, g)]]
        ):
            report.add("rwhisk", c.names(f, g, b))
    for f in range(c.num_morphisms):
        if not np.array_equal(y.sigma[f][mapping[(f, f)]], x.sigma[f]):
            report.add("sigma", c.names(f))
    return report


def identity_witness(x: PiGTrack) -> TrackFunctorWitness:
    """The identity functor of a (pi, G)-track category."""
    return TrackFunctorWitness(
        mapping={pair: _frozen(np.arange(num)) for pair, num in x.track.tracks.items()}
    )


def compose_witnesses(
    first: TrackFunctorWitness, second: TrackFunctorWitness
) -> TrackFunctorWitness:
    """The composite functor, applying `first` and then `second`."""
    return TrackFunctorWitness(
        mapping={
            pair: _frozen(second.mapping[pair][table])
            for pair, table in first.mapping.items()
        }
    )


def are_equivalent_tracks(
    x: PiGTrack,
    y: PiGTrack,
    budget: SearchBudget | None = None,
    progress_bar: bool = False,
) -> TrackFunctorWitness | None:
    """Search for an equivalence between two (pi, G)-track categories.

    The functor is the identity on the underlying category. On `Aut_f` it is forced
    to be `sigma'^{-1} sigma`, and since every `T(f, g)` is a torsor under `Aut_f`
    it is then determined by the image of one track `f => g` for every pair
    `f < g` in a common fibre. The images of tracks `g => f` follow from inverses.

    Args:
        x:
            The source.
        y:
            The target.
        budget:
            The budget of the search, counted in candidate functors.
        progress_bar:
            Whether to show a progress bar.

    Returns:
        A witness functor, or None if there is none.

    Raises:
        ContextMismatch:
            If the two are not over the same pre-track category.
        BudgetExceeded:
            If the search exceeds its budget.
    """
    if x.pre != y.pre:
        raise ContextMismatch()
    budget = budget or SearchBudget()
    s, t = x.track, y.track
    c = s.underlying

    if set(s.tracks) != set(t.tracks) or any(
        s.tracks[pair] != t.tracks[pair] for pair in s.tracks
    ):
        logger.debug("The track sets differ, so there is no equivalence.")
        return None

    automorphism_maps = dict()
    for f in range(c.num_morphisms):
        try:
            automorphism_maps[f] = y.sigma_inverse(f)[x.sigma[f]]
        except StructuralError:
            return None

    base_pairs = [pair for pair in x.pre.canonical_pairs if pair in s.tracks]
    num_candidates = int(np.prod([t.tracks[pair] for pair in base_pairs]))
    if num_candidates > budget.max_candidates:
        raise BudgetExceeded(
            what="track equivalence", limit=budget.max_candidates, unit="candidates"
        )

    start = time.perf_counter()
    choices = it.product(*(range(t.tracks[pair]) for pair in base_pairs))
    for choice in tqdm(
        choices, total=num_candidates, desc="Searching", disable=not progress_bar
    ):
        if (
            budget.max_seconds is not None
            and time.perf_counter() - start > budget.max_seconds
        ):
            raise BudgetExceeded(
                what="track equivalence", limit=budget.max_seconds, unit="seconds"
            )
        mapping: dict[PairKey, np.ndarray] = {
            (f, f): automorphism_maps[f] for f in range(c.num_morphisms)
        }
        for (f, g), image in zip(base_pairs, choice):
            base = Track(f, g, 0)
            table = np.empty(s.tracks[(f, g)], dtype=np.int64)
            for alpha in s.hom(f, g):
                automorphism = s.add(alpha, s.neg(base))
                moved = Track(f, f, int(automorphism_maps[f][automorphism.local]))
                table[alpha.local] = t.add(moved, Track(f, g, image)).local
            mapping[(f, g)] = table
            reverse = np.empty(s.tracks[(g, f)], dtype=np.int64)
            for beta in s.hom(g, f):
                reverse[beta.local] = t.vneg[(f, g)][table[s.vneg[(g, f)][beta.local]]]
            mapping[(g, f)] = reverse
        witness = TrackFunctorWitness(
            mapping={pair: _frozen(table) for pair, table in mapping.items()}
        )
        if check_track_functor(x, y, witness).passed:
            logger.debug(f"Found a track equivalence with base choice {choice}.")
            return witness

    return None


def relabel_tracks(
    t: TrackCategory, permutations: dict[PairKey, np.ndarray]
) -> TrackCategory:
    """An isomorphic copy of a track category with the tracks renamed.

    Args:
        t:
            The track category.
        permutations:
            For every pair with tracks, the permutation sending old local indices to
            new ones. Missing pairs keep their labels.

    Returns:
        The relabelled track category.
    """
    c = t.underlying
    perm = {
        pair: np.asarray(permutations.get(pair, np.arange(num)))
        for pair, num in t.tracks.items()
    }

    def moved(table: np.ndarray, source: PairKey, target: PairKey) -> np.ndarray:
        new = np.empty_like(table)
        new[perm[source]] = perm[target][table]
        return new

    vcomp = dict()
    for (f, g, h), table in t.vcomp.items():
        new = np.empty_like(table)
        new[perm[(f, g)][:, None], perm[(g, h)][None, :]] = perm[(f, h)][table]
        vcomp[(f, g, h)] = new
    return TrackCategory(
        underlying=c,
        tracks=dict(t.tracks),
        vcomp=vcomp,
        vneg={(f, g): moved(table, (f, g), (g, f)) for (f, g), table in t.vneg.items()},
        vzero={f: int(perm[(f, f)][zero]) for f, zero in t.vzero.items()},
        lwhisk={
            (a, f, g): moved(table, (f, g), (c.compose(a, f), c.compose(a, g)))
            for (a, f, g), table in t.lwhisk.items()
        },
        rwhisk={
            (f, g, b): moved(table, (f, g), (c.compose(f, b), c.compose(g, b)))
            for (f, g, b), table in t.rwhisk.items()
        },
    )


def relabel_pi_g_track(
    x: PiGTrack, permutations: dict[PairKey, np.ndarray]
) -> tuple[PiGTrack, TrackFunctorWitness]:
    """An isomorphic copy of a (pi, G)-track category with the tracks renamed.

    Args:
        x:
            The (pi, G)-track category.
        permutations:
            The permutations, as in `relabel_tracks`.

    Returns:
        The relabelled copy and the equivalence from `x` to it.
    """
    track = relabel_tracks(x.track, permutations)
    witness = TrackFunctorWitness(
        mapping={
            pair: _frozen(permutations.get(pair, np.arange(num)))
            for pair, num in x.track.tracks.items()
        }
    )
    sigma = dict()
    for f, table in x.sigma.items():
        new = np.empty_like(table)
        new[witness.mapping[(f, f)]] = table
        sigma[f] = new
    return PiGTrack(track=track, pre=x.pre, sigma=sigma), witness


def random_permutations(
    t: TrackCategory, rng: np.random.Generator
) -> dict[PairKey, np.ndarray]:
    """Random relabellings of every set of tracks, for use with `relabel_tracks`."""
    return {pair: rng.permutation(num) for pair, num in sorted(t.tracks.items())}
