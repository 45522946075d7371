"""Cocycle triples, coboundaries and both directions of the bijection with tracks.

A cocycle triple `(xi, chi, phi)` over a pre-track category `(pi, G)` consists of

- `xi(f, g, h)` in `G_f`, for `f, g, h` in a common fibre of `pi`,
- `chi(x, y | a, b)` in `G_{ax}`, for `x, y: i -> j` and `a, b: j -> k` with
  `pi(x) = pi(y)` and `pi(a) = pi(b)`,
- isomorphisms `phi_{g,f}: G_g -> G_f`, for `f, g` in a common fibre.

All sums are evaluated from left to right in the possibly non-commutative groups.
"""

import itertools as it
import logging
import time
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np
from tqdm.auto import tqdm

from .config import SearchBudget
from .exceptions import (
    BudgetExceeded,
    ContextMismatch,
    InvalidCocycle,
    InvalidTrackCategory,
    StructuralError,
)
from .fingroup import (
    FiniteGroup,
    GroupHom,
    enumerate_isomorphisms,
    identity_hom,
    invert_hom,
    validate_hom,
)
from .pretrack import PreTrack
from .reports import ValidationReport
from .track import (
    PiGTrack,
    Track,
    TrackCategory,
    validate_pi_g_track,
    validate_track_category,
)
from .types import ChiKey, PairKey, XiKey
from .utils import get_rng

logger = logging.getLogger(__package__)


# A variable of the cocycle equations, such as ("xi", (f, g, h))
Variable = tuple[str, tuple[int, ...]]


def is_degenerate_xi(key: XiKey) -> bool:
    """Whether `xi(f, g, h)` is forced to vanish by normalization."""
    f, g, h = key
    return f == g or g == h or f == h


def is_degenerate_chi(p: PreTrack, key: ChiKey) -> bool:
    """Whether `chi(x, y | a, b)` is forced to vanish by normalization."""
    x, y, a, b = key
    c = p.base
    return (
        (x == y and a == b)
        or (a == b and c.is_identity(a))
        or (x == y and c.is_identity(x))
    )


def is_degenerate_phi(key: PairKey) -> bool:
    """Whether `phi_{g,f}` is forced to be the identity by normalization."""
    g, f = key
    return g == f


@dataclass(frozen=True, eq=False)
class CocycleTriple:
    """A normalized triple `(xi, chi, phi)` over a pre-track category.

    Attributes:
        pre:
            The pre-track category.
        xi:
            The values `xi(f, g, h)`, keyed by `(f, g, h)`.
        chi:
            The values `chi(x, y | a, b)`, keyed by `(x, y, a, b)`.
        phi:
            The isomorphisms `phi_{g,f}: G_g -> G_f`, keyed by `(g, f)`.
    """

    pre: PreTrack
    xi: dict[XiKey, int]
    chi: dict[ChiKey, int]
    phi: dict[PairKey, GroupHom]

    def __post_init__(self) -> None:
        """Check that the tables cover exactly the typed index sets."""
        p = self.pre
        for table_name, keys in (
            ("xi", p.xi_keys),
            ("chi", p.chi_keys),
            ("phi", p.phi_keys),
        ):
            table = getattr(self, table_name)
            if set(table) != set(keys):
                missing = sorted(set(keys) - set(table))[:3]
                raise StructuralError(
                    f"The {table_name} table does not cover its index set; missing "
                    f"{[p.base.names(*key) for key in missing]}."
                )
        for key, value in self.xi.items():
            p.group(key[0]).check_element(value)
        for key, value in self.chi.items():
            p.group(p.base.compose(key[2], key[0])).check_element(value)
        for (g, f), hom in self.phi.items():
            if hom.src != p.group(g) or hom.dst != p.group(f):
                raise StructuralError(
                    f"The map phi({', '.join(p.base.names(g, f))}) goes between the "
                    "wrong groups."
                )
            if hom.mapping.shape != (hom.src.order,):
                raise StructuralError(
                    f"The map phi({', '.join(p.base.names(g, f))}) has the wrong "
                    "length."
                )

    @cached_property
    def phi_maps(self) -> dict[PairKey, np.ndarray]:
        """The tables of the maps `phi_{g,f}`."""
        return {key: hom.mapping for key, hom in self.phi.items()}

    def key(self) -> tuple:
        """A key ordering triples, comparing `phi`, then `xi`, then `chi`."""
        p = self.pre
        return (
            tuple(self.phi[key].key() for key in p.phi_keys),
            tuple(self.xi[key] for key in p.xi_keys),
            tuple(self.chi[key] for key in p.chi_keys),
        )

    def __eq__(self, other: object) -> bool:
        """Triples are equal when their pre-track categories and tables are."""
        if not isinstance(other, CocycleTriple):
            return NotImplemented
        return self.pre == other.pre and self.key() == other.key()

    def __hash__(self) -> int:
        """Return a hash of the tables."""
        return hash(self.key())


@dataclass(frozen=True, eq=False)
class Coboundary:
    """A family of elements `zeta(f, g)` in `G_f` with `zeta(f, f) = 0`.

    Attributes:
        pre:
            The pre-track category.
        zeta:
            The elements, keyed by `(f, g)` for all pairs in a common fibre.
    """

    pre: PreTrack
    zeta: dict[PairKey, int]

    def __post_init__(self) -> None:
        """Check the index set. The values are checked by `validate_coboundary`."""
        if set(self.zeta) != set(self.pre.pairs):
            raise StructuralError(
                "The coboundary does not cover exactly the pairs in a common fibre."
            )

    def key(self) -> tuple[int, ...]:
        """The values of the coboundary, in the order of the pairs."""
        return tuple(self.zeta[pair] for pair in self.pre.pairs)

    def __eq__(self, other: object) -> bool:
        """Coboundaries are equal when their tables are."""
        if not isinstance(other, Coboundary):
            return NotImplemented
        return self.pre == other.pre and self.key() == other.key()

    def __hash__(self) -> int:
        """Return a hash of the table."""
        return hash(self.key())


@dataclass(frozen=True)
class TrackChoice:
    """A choice of tracks `H_{f,g}: f => g` for every pair in a common fibre.

    Attributes:
        choice:
            The local index of `H_{f,g}` in `T(f, g)`, keyed by `(f, g)`.
        seed:
            The seed the choice was drawn with, or None if it was not random.
    """

    choice: dict[PairKey, int]
    seed: int | None = None

    def track(self, f: int, g: int) -> Track:
        """The chosen track `H_{f,g}`."""
        return Track(f, g, self.choice[(f, g)])


def check_track_choice(x: PiGTrack, h: TrackChoice) -> None:
    """Raise if a choice of tracks is not normalized.

    Raises:
        StructuralError:
            If the choice does not cover the pairs in a common fibre, if some
            `H_{f,f}` is not the identity track, or if `H_{g,f}` is not `-H_{f,g}`.
    """
    t, p = x.track, x.pre
    if set(h.choice) != set(p.pairs):
        raise StructuralError("The track choice does not cover the pairs of a fibre.")
    for (f, g), local in h.choice.items():
        if not 0 <= local < t.num_tracks(f, g):
            raise StructuralError(
                f"The chosen track at {p.base.names(f, g)} does not exist."
            )
        if f == g and local != t.vzero[f]:
            raise StructuralError(
                f"The chosen track at {p.base.names(f, f)} is not the identity."
            )
        if t.neg(h.track(f, g)) != h.track(g, f):
            raise StructuralError(
                f"The chosen tracks at {p.base.names(f, g)} and "
                f"{p.base.names(g, f)} are not inverse to each other."
            )


def _conjugate_map(group: FiniteGroup, by: int, mapping: np.ndarray) -> np.ndarray:
    """The table of `t -> -by + mapping(t) + by`."""
    return group.add_table[group.add_table[group.neg_table[by], mapping], by]


def _pushforward_map(
    p: PreTrack,
    chi: Mapping[ChiKey, int],
    phi: Mapping[PairKey, np.ndarray],
    m: int,
    b: int,
    a: int,
) -> np.ndarray:
    c = p.base
    ma, mb = c.compose(m, a), c.compose(m, b)
    return _conjugate_map(p.group(ma), chi[(a, b, m, m)], phi[(mb, ma)])


def _pullback_map(
    p: PreTrack,
    chi: Mapping[ChiKey, int],
    phi: Mapping[PairKey, np.ndarray],
    b: int,
    n: int,
    m: int,
) -> np.ndarray:
    c = p.base
    mb, nb = c.compose(m, b), c.compose(n, b)
    return _conjugate_map(p.group(mb), chi[(b, b, m, n)], phi[(nb, mb)])


def pushforward_phi(z: CocycleTriple, m: int, b: int, a: int) -> GroupHom:
    """The map `m_* phi_{b,a}: G_{mb} -> G_{ma}`.

    It is given by `t -> -chi(a, b | m, m) + phi_{mb,ma}(t) + chi(a, b | m, m)`.

    Args:
        z:
            The cocycle triple.
        m:
            The morphism `m: j -> k`.
        b:
            The morphism `b: i -> j`.
        a:
            The morphism `a: i -> j`, in the fibre of `b`.

    Returns:
        The homomorphism.

    Raises:
        StructuralError:
            If the morphisms are not typed as above.
    """
    p = z.pre
    c = p.base
    if not (c.composable(m, a) and p.same_class(a, b) and c.parallel(a, b)):
        raise StructuralError("The morphisms do not fit m_* phi_{b,a}.")
    mapping = _pushforward_map(p, z.chi, z.phi_maps, m, b, a)
    return GroupHom(
        src=p.group(c.compose(m, b)), dst=p.group(c.compose(m, a)), mapping=mapping
    )


def pullback_phi(z: CocycleTriple, b: int, n: int, m: int) -> GroupHom:
    """The map `b^* phi_{n,m}: G_{nb} -> G_{mb}`.

    It is given by `t -> -chi(b, b | m, n) + phi_{nb,mb}(t) + chi(b, b | m, n)`.

    Args:
        z:
            The cocycle triple.
        b:
            The morphism `b: i -> j`.
        n:
            The morphism `n: j -> k`.
        m:
            The morphism `m: j -> k`, in the fibre of `n`.

    Returns:
        The homomorphism.

    Raises:
        StructuralError:
            If the morphisms are not typed as above.
    """
    p = z.pre
    c = p.base
    if not (c.composable(m, b) and p.same_class(m, n) and c.parallel(m, n)):
        raise StructuralError("The morphisms do not fit b^* phi_{n,m}.")
    mapping = _pullback_map(p, z.chi, z.phi_maps, b, n, m)
    return GroupHom(
        src=p.group(c.compose(n, b)), dst=p.group(c.compose(m, b)), mapping=mapping
    )


@dataclass(frozen=True)
class EquationInstance:
    """One instance of a cocycle equation, at fixed morphisms.

    Attributes:
        label:
            The label of the equation family, such as "(ii)".
        witness:
            The morphisms the instance is taken at.
        variables:
            The non-degenerate entries the instance depends on.
        check:
            Evaluates the instance on tables `(xi, chi, phi)`, where `phi` maps keys
            to the tables of the maps. Degenerate entries must be present as well.
    """

    label: str
    witness: tuple[int, ...]
    variables: tuple[Variable, ...]
    check: Callable[
        [Mapping[XiKey, int], Mapping[ChiKey, int], Mapping[PairKey, np.ndarray]],
        bool,
    ] = field(compare=False, repr=False)


def equation_instances(p: PreTrack) -> list[EquationInstance]:
    """All instances of the cocycle equations over a pre-track category.

    The families are (i)(a) to (i)(c), (ii), (iii) and (iv). Quantification over
    group elements is done inside each instance.

    Args:
        p:
            The pre-track category.

    Returns:
        The instances, grouped by family.
    """
    c = p.base
    push = {key: hom.mapping for key, hom in p.system.push.items()}
    pull = {key: hom.mapping for key, hom in p.system.pull.items()}
    instances: list[EquationInstance] = list()

    def variables(*entries: Variable) -> tuple[Variable, ...]:
        kept = list()
        for entry in entries:
            kind, key = entry
            if kind == "xi" and is_degenerate_xi(key):  # type: ignore[arg-type]
                continue
            if kind == "chi" and is_degenerate_chi(p, key):  # type: ignore[arg-type]
                continue
            if kind == "phi" and is_degenerate_phi(key):  # type: ignore[arg-type]
                continue
            if entry not in kept:
                kept.append(entry)
        return tuple(kept)

    # (i)(a): phi_{g,f} phi_{h,g}(t) = -xi(f, g, h) + phi_{h,f}(t) + xi(f, g, h)
    for f, g, h in p.xi_keys:

        def check_ia(xi, chi, phi, f=f, g=g, h=h) -> bool:
            lhs = phi[(g, f)][phi[(h, g)]]
            rhs = _conjugate_map(p.group(f), xi[(f, g, h)], phi[(h, f)])
            return bool(np.array_equal(lhs, rhs))

        instances.append(
            EquationInstance(
                label="(i)(a)",
                witness=(f, g, h),
                variables=variables(
                    ("phi", (g, f)),
                    ("phi", (h, g)),
                    ("phi", (h, f)),
                    ("xi", (f, g, h)),
                ),
                check=check_ia,
            )
        )

    for (a, b), m in it.product(p.pairs, range(c.num_morphisms)):
        if not c.composable(m, a):
            continue
        ma, mb = c.compose(m, a), c.compose(m, b)

        # (i)(b): m_* phi_{b,a}(m_* beta) = m_*(phi_{b,a}(beta))
        def check_ib(xi, chi, phi, a=a, b=b, m=m) -> bool:
            pushed = _pushforward_map(p, chi, phi, m, b, a)
            lhs = pushed[push[(m, b)]]
            rhs = push[(m, a)][phi[(b, a)]]
            return bool(np.array_equal(lhs, rhs))

        # (i)(c): m_* phi_{b,a}(b^* mu) = a^* mu
        def check_ic(xi, chi, phi, a=a, b=b, m=m) -> bool:
            pushed = _pushforward_map(p, chi, phi, m, b, a)
            return bool(np.array_equal(pushed[pull[(m, b)]], pull[(m, a)]))

        entries = (("chi", (a, b, m, m)), ("phi", (mb, ma)))
        instances.append(
            EquationInstance(
                label="(i)(b)",
                witness=(m, b, a),
                variables=variables(*entries, ("phi", (b, a))),
                check=check_ib,
            )
        )
        instances.append(
            EquationInstance(
                label="(i)(c)",
                witness=(m, b, a),
                variables=variables(*entries),
                check=check_ic,
            )
        )

    for a, (m, n) in it.product(range(c.num_morphisms), p.pairs):
        if not c.composable(m, a):
            continue
        ma, na = c.compose(m, a), c.compose(n, a)

        # (i)(b): a^* phi_{n,m}(a^* nu) = a^*(phi_{n,m}(nu))
        def check_ib_pull(xi, chi, phi, a=a, n=n, m=m) -> bool:
            pulled = _pullback_map(p, chi, phi, a, n, m)
            lhs = pulled[pull[(n, a)]]
            rhs = pull[(m, a)][phi[(n, m)]]
            return bool(np.array_equal(lhs, rhs))

        # (i)(c): a^* phi_{n,m}(n_* alpha) = m_* alpha
        def check_ic_pull(xi, chi, phi, a=a, n=n, m=m) -> bool:
            pulled = _pullback_map(p, chi, phi, a, n, m)
            return bool(np.array_equal(pulled[push[(n, a)]], push[(m, a)]))

        entries = (("chi", (a, a, m, n)), ("phi", (na, ma)))
        instances.append(
            EquationInstance(
                label="(i)(b)",
                witness=(a, n, m),
                variables=variables(*entries, ("phi", (n, m))),
                check=check_ib_pull,
            )
        )
        instances.append(
            EquationInstance(
                label="(i)(c)",
                witness=(a, n, m),
                variables=variables(*entries),
                check=check_ic_pull,
            )
        )

    # (ii): xi(f, g, e) + phi_{g,f} xi(g, h, e) = xi(f, h, e) + xi(f, g, h)
    for fibre in p.classes:
        for f, g, h, e in it.product(fibre, repeat=4):

            def check_ii(xi, chi, phi, f=f, g=g, h=h, e=e) -> bool:
                group = p.group(f)
                lhs = group.add(xi[(f, g, e)], int(phi[(g, f)][xi[(g, h, e)]]))
                rhs = group.add(xi[(f, h, e)], xi[(f, g, h)])
                return lhs == rhs

            instances.append(
                EquationInstance(
                    label="(ii)",
                    witness=(f, g, h, e),
                    variables=variables(
                        ("xi", (f, g, e)),
                        ("phi", (g, f)),
                        ("xi", (g, h, e)),
                        ("xi", (f, h, e)),
                        ("xi", (f, g, h)),
                    ),
                    check=check_ii,
                )
            )

    # (iii): xi(ax, by, cz) + phi_{by,ax}(chi(y, z | b, c)) + chi(x, y | a, b)
    #        = chi(x, z | a, c) + x^* xi(a, b, c) + a_* xi(x, y, z)
    for (x, y, z), (a, b, cc) in it.product(p.xi_keys, repeat=2):
        if not c.composable(a, x):
            continue
        ax, by, cz = c.compose(a, x), c.compose(b, y), c.compose(cc, z)

        def check_iii(
            xi, chi, phi, x=x, y=y, z=z, a=a, b=b, cc=cc, ax=ax, by=by, cz=cz
        ) -> bool:
            group = p.group(ax)
            lhs = group.sum(
                xi[(ax, by, cz)],
                int(phi[(by, ax)][chi[(y, z, b, cc)]]),
                chi[(x, y, a, b)],
            )
            rhs = group.sum(
                chi[(x, z, a, cc)],
                int(pull[(a, x)][xi[(a, b, cc)]]),
                int(push[(a, x)][xi[(x, y, z)]]),
            )
            return lhs == rhs

        instances.append(
            EquationInstance(
                label="(iii)",
                witness=(x, y, z, a, b, cc),
                variables=variables(
                    ("xi", (ax, by, cz)),
                    ("phi", (by, ax)),
                    ("chi", (y, z, b, cc)),
                    ("chi", (x, y, a, b)),
                    ("chi", (x, z, a, cc)),
                    ("xi", (a, b, cc)),
                    ("xi", (x, y, z)),
                ),
                check=check_iii,
            )
        )

    # (iv): chi(ax, by | m, n) + m_* chi(x, y | a, b)
    #       = chi(x, y | ma, nb) + x^* chi(a, b | m, n)
    for (x, y), (a, b), (m, n) in it.product(p.pairs, repeat=3):
        if not (c.composable(a, x) and c.composable(m, a)):
            continue
        ax, by = c.compose(a, x), c.compose(b, y)
        ma, nb = c.compose(m, a), c.compose(n, b)

        def check_iv(
            xi, chi, phi, x=x, y=y, a=a, b=b, m=m, n=n, ax=ax, by=by, ma=ma, nb=nb
        ) -> bool:
            group = p.group(c.compose(m, ax))
            lhs = group.add(
                chi[(ax, by, m, n)], int(push[(m, ax)][chi[(x, y, a, b)]])
            )
            rhs = group.add(
                chi[(x, y, ma, nb)], int(pull[(ma, x)][chi[(a, b, m, n)]])
            )
            return lhs == rhs

        instances.append(
            EquationInstance(
                label="(iv)",
                witness=(x, y, a, b, m, n),
                variables=variables(
                    ("chi", (ax, by, m, n)),
                    ("chi", (x, y, a, b)),
                    ("chi", (x, y, ma, nb)),
                    ("chi", (a, b, m, n)),
                ),
                check=check_iv,
            )
        )

    logger.debug(f"Built {len(instances)} cocycle equation instances.")
    return instances


def validate_cocycle(p: PreTrack, z: CocycleTriple) -> ValidationReport:
    """Check that a triple is a normalized cocycle.

    Args:
        p:
            The pre-track category.
        z:
            The triple.

    Returns:
        The report, with labels "normalization", "phi-iso", "(i)(a)", "(i)(b)",
        "(i)(c)", "(ii)", "(iii)" and "(iv)".

    Raises:
        ContextMismatch:
            If the triple lives over another pre-track category.
    """
    if z.pre != p:
        raise ContextMismatch()
    c = p.base
    report = ValidationReport(subject="cocycle triple")

    for key, value in z.xi.items():
        if is_degenerate_xi(key) and value != 0:
            report.add("normalization", c.names(*key), f"xi = {value}")
    for key, value in z.chi.items():
        if is_degenerate_chi(p, key) and value != 0:
            report.add("normalization", c.names(*key), f"chi = {value}")
    for key, hom in z.phi.items():
        if is_degenerate_phi(key) and hom != identity_hom(p.group(key[0])):
            report.add("normalization", c.names(*key), "phi is not the identity")
        if not hom.is_bijective or not validate_hom(hom).passed:
            report.add("phi-iso", c.names(*key))

    phi = z.phi_maps
    for instance in equation_instances(p):
        if not instance.check(z.xi, z.chi, phi):
            report.add(instance.label, c.names(*instance.witness))
    return report


def zero_cocycle(p: PreTrack) -> CocycleTriple:
    """The triple with `xi = 0`, `chi = 0` and every `phi` the identity.

    Raises:
        StructuralError:
            If two morphisms in a common fibre carry different groups.
    """
    phi = dict()
    for g, f in p.phi_keys:
        if p.group(g) != p.group(f):
            raise StructuralError(
                f"The groups at {p.base.names(g, f)} differ, so there is no zero "
                "cocycle."
            )
        phi[(g, f)] = identity_hom(p.group(f))
    return CocycleTriple(
        pre=p,
        xi={key: 0 for key in p.xi_keys},
        chi={key: 0 for key in p.chi_keys},
        phi=phi,
    )


def zero_coboundary(p: PreTrack) -> Coboundary:
    """The coboundary with `zeta = 0` everywhere."""
    return Coboundary(pre=p, zeta={pair: 0 for pair in p.pairs})


def validate_coboundary(p: PreTrack, cob: Coboundary) -> ValidationReport:
    """Check that every `zeta(f, g)` lies in `G_f` and that `zeta(f, f) = 0`.

    Args:
        p:
            The pre-track category.
        cob:
            The coboundary.

    Returns:
        The report, with labels "range" and "diagonal".

    Raises:
        ContextMismatch:
            If the coboundary lives over another pre-track category.
    """
    if cob.pre != p:
        raise ContextMismatch()
    c = p.base
    report = ValidationReport(subject="coboundary")
    for (f, g), value in cob.zeta.items():
        order = p.group(f).order
        if not 0 <= value < order:
            report.add("range", c.names(f, g), f"zeta = {value}, order {order}")
        elif f == g and value != 0:
            report.add("diagonal", c.names(f, g), f"zeta = {value}")
    return report


def apply_coboundary(
    p: PreTrack, z: CocycleTriple, cob: Coboundary, check: bool = False
) -> CocycleTriple:
    """Move a triple along a coboundary.

    The new triple is given by

        xi'(f, g, h) = zeta(f, h) + xi(f, g, h) - phi_{g,f} zeta(g, h) - zeta(f, g),
        chi'(x, y | a, b) = zeta(ax, by) + chi(x, y | a, b) - x^* zeta(a, b)
                            - a_* zeta(x, y),
        phi'_{g,f}(t) = zeta(f, g) + phi_{g,f}(t) - zeta(f, g).

    Args:
        p:
            The pre-track category.
        z:
            The triple.
        cob:
            The coboundary.
        check:
            Whether to validate the result.

    Returns:
        The moved triple.

    Raises:
        ContextMismatch:
            If the inputs live over another pre-track category.
        StructuralError:
            If the coboundary fails `validate_coboundary`.
        InvalidCocycle:
            If `check` is set and the result is not a cocycle.
    """
    if z.pre != p or cob.pre != p:
        raise ContextMismatch()
    cob_report = validate_coboundary(p, cob)
    if not cob_report.passed:
        raise StructuralError(cob_report.summary())
    c = p.base
    zeta = cob.zeta

    xi = dict()
    for f, g, h in p.xi_keys:
        group = p.group(f)
        xi[(f, g, h)] = group.sum(
            zeta[(f, h)],
            z.xi[(f, g, h)],
            group.neg(z.phi[(g, f)](zeta[(g, h)])),
            group.neg(zeta[(f, g)]),
        )

    chi = dict()
    for x, y, a, b in p.chi_keys:
        ax, by = c.compose(a, x), c.compose(b, y)
        group = p.group(ax)
        chi[(x, y, a, b)] = group.sum(
            zeta[(ax, by)],
            z.chi[(x, y, a, b)],
            group.neg(p.pull(a, x, zeta[(a, b)])),
            group.neg(p.push(a, x, zeta[(x, y)])),
        )

    phi = dict()
    for g, f in p.phi_keys:
        group = p.group(f)
        mapping = _conjugate_map(
            group, group.neg(zeta[(f, g)]), z.phi[(g, f)].mapping
        )
        phi[(g, f)] = GroupHom(src=p.group(g), dst=group, mapping=mapping)

    moved = CocycleTriple(pre=p, xi=xi, chi=chi, phi=phi)
    if check:
        report = validate_cocycle(p, moved)
        if not report.passed:
            raise InvalidCocycle(report=report)
    return moved


def invert_coboundary(cob: Coboundary) -> Coboundary:
    """The pointwise inverse `-zeta`, which undoes `apply_coboundary`."""
    p = cob.pre
    zeta = {(f, g): p.group(f).neg(value) for (f, g), value in cob.zeta.items()}
    return Coboundary(pre=p, zeta=zeta)


def admissible_coboundaries(p: PreTrack, z: CocycleTriple) -> Iterator[Coboundary]:
    """All coboundaries moving a normalized triple to a normalized triple.

    These are the coboundaries with `zeta(g, f) = -phi_{f,g}(zeta(f, g))`, so they
    are free exactly on the pairs `f < g`.

    Args:
        p:
            The pre-track category.
        z:
            The normalized triple.

    Yields:
        The coboundaries, in lexicographic order of their free values.
    """
    pairs = p.canonical_pairs
    for values in it.product(*(p.group(f).elements for f, _ in pairs)):
        zeta = {(f, f): 0 for fibre in p.classes for f in fibre}
        for (f, g), value in zip(pairs, values):
            zeta[(f, g)] = value
            zeta[(g, f)] = p.group(g).neg(z.phi[(f, g)](value))
        yield Coboundary(pre=p, zeta=zeta)


def are_cohomologous(
    p: PreTrack,
    z1: CocycleTriple,
    z2: CocycleTriple,
    budget: SearchBudget | None = None,
) -> Coboundary | None:
    """Search for a coboundary moving one triple to another.

    Every entry `zeta(f, g)` with `f != g` is searched freely. The condition on
    `phi` only involves one entry at a time, so the candidates are filtered entry by
    entry before the product is searched.

    Args:
        p:
            The pre-track category.
        z1:
            The first triple.
        z2:
            The second triple.
        budget:
            The budget of the search, counted in candidate coboundaries.

    Returns:
        A coboundary moving `z1` to `z2`, or None if there is none.

    Raises:
        ContextMismatch:
            If a triple lives over another pre-track category.
        BudgetExceeded:
            If the search exceeds its budget.
    """
    if z1.pre != p or z2.pre != p:
        raise ContextMismatch()
    budget = budget or SearchBudget()
    target = z2.key()

    pairs = [(f, g) for f, g in p.pairs if f != g]
    candidates = list()
    for f, g in pairs:
        group = p.group(f)
        source, wanted = z1.phi[(g, f)].mapping, z2.phi[(g, f)].mapping
        candidates.append(
            [
                value
                for value in group.elements
                if np.array_equal(
                    _conjugate_map(group, group.neg(value), source), wanted
                )
            ]
        )

    num_candidates = int(np.prod([len(values) for values in candidates]))
    logger.debug(f"Searching {num_candidates:,} coboundaries.")
    if num_candidates > budget.max_candidates:
        raise BudgetExceeded(
            what="coboundary", limit=budget.max_candidates, unit="candidates"
        )

    start = time.perf_counter()
    for values in it.product(*candidates):
        if (
            budget.max_seconds is not None
            and time.perf_counter() - start > budget.max_seconds
        ):
            raise BudgetExceeded(
                what="coboundary", limit=budget.max_seconds, unit="seconds"
            )
        zeta = {(f, f): 0 for fibre in p.classes for f in fibre}
        zeta.update(zip(pairs, values))
        cob = Coboundary(pre=p, zeta=zeta)
        if apply_coboundary(p, z1, cob).key() == target:
            return cob
    return None


def choose_tracks(x: PiGTrack, seed: int = 0) -> TrackChoice:
    """Choose tracks `H_{f,g}` with `H_{f,f} = 0` and `H_{g,f} = -H_{f,g}`.

    For every pair `f < g` in a common fibre a track `f => g` is drawn uniformly at
    random, and the reverse track is its inverse.

    Args:
        x:
            The (pi, G)-track category.
        seed:
            The seed of the choice.

    Returns:
        The choice, the same for the same seed.

    Raises:
        InvalidTrackCategory:
            If some pair in a common fibre has no tracks.
    """
    t, p = x.track, x.pre
    rng = get_rng(seed=seed, stream="track-choice")
    choice = {(f, f): t.vzero[f] for fibre in p.classes for f in fibre}
    for f, g in p.canonical_pairs:
        num = t.num_tracks(f, g)
        if num == 0:
            report = ValidationReport(subject="(pi, G)-track category")
            report.add("iff", p.base.names(f, g), "T(f, g) is empty")
            raise InvalidTrackCategory(report=report)
        local = int(rng.integers(num))
        choice[(f, g)] = local
        choice[(g, f)] = t.neg(Track(f, g, local)).local
    return TrackChoice(choice=choice, seed=seed)


def canonical_choice(x: PiGTrack) -> TrackChoice:
    """The choice of the first track `f => g` for every pair `f < g`.

    On the output of `build_track` this is the choice `H_{f,g} = (0, f, g)`, from
    which `extract_cocycle` recovers the triple the tracks were built from.
    """
    t, p = x.track, x.pre
    choice = {(f, f): t.vzero[f] for fibre in p.classes for f in fibre}
    for f, g in p.canonical_pairs:
        choice[(f, g)] = 0
        choice[(g, f)] = t.neg(Track(f, g, 0)).local
    return TrackChoice(choice=choice)


def _validate_pi_g_track(x: PiGTrack) -> None:
    report = validate_track_category(x.track)
    report.extend(validate_pi_g_track(x))
    if not report.passed:
        raise InvalidTrackCategory(report=report)


def extract_cocycle(
    x: PiGTrack, h: TrackChoice, validate: bool = True
) -> CocycleTriple:
    """The cocycle triple of a (pi, G)-track category with respect to a choice.

    The triple solves, in the automorphism groups and transported along `sigma`,

        H_{f,g} + H_{g,h} = -xi(f, g, h) + H_{f,h},
        a_* H_{x,y} + y^* H_{a,b} = -chi(x, y | a, b) + H_{ax,by},
        phi_{g,f}(t) = H_{f,g} + t - H_{f,g}.

    Args:
        x:
            The (pi, G)-track category.
        h:
            The choice of tracks.
        validate:
            Whether to validate the track category first.

    Returns:
        The triple.

    Raises:
        InvalidTrackCategory:
            If `validate` is set and the track category is invalid.
        StructuralError:
            If the choice is not normalized.
    """
    if validate:
        _validate_pi_g_track(x)
    check_track_choice(x, h)
    t, p = x.track, x.pre
    c = p.base

    def element(alpha: Track) -> int:
        return int(x.sigma[alpha.src][alpha.local])

    xi = dict()
    for f, g, k in p.xi_keys:
        loop = t.add(t.add(h.track(f, g), h.track(g, k)), t.neg(h.track(f, k)))
        xi[(f, g, k)] = p.group(f).neg(element(loop))

    chi = dict()
    for x_, y, a, b in p.chi_keys:
        ax, by = c.compose(a, x_), c.compose(b, y)
        loop = t.add(
            t.add(t.push(a, h.track(x_, y)), t.pull(h.track(a, b), y)),
            t.neg(h.track(ax, by)),
        )
        chi[(x_, y, a, b)] = p.group(ax).neg(element(loop))

    phi = dict()
    for g, f in p.phi_keys:
        inverse = x.sigma_inverse(g)
        forward, backward = h.track(f, g), h.track(g, f)
        mapping = np.array(
            [
                element(
                    t.add(t.add(forward, Track(g, g, int(inverse[value]))), backward)
                )
                for value in p.group(g).elements
            ],
            dtype=np.int64,
        )
        phi[(g, f)] = GroupHom(src=p.group(g), dst=p.group(f), mapping=mapping)

    return CocycleTriple(pre=p, xi=xi, chi=chi, phi=phi)


def build_track(p: PreTrack, z: CocycleTriple, validate: bool = True) -> PiGTrack:
    """The (pi, G)-track category of a cocycle triple.

    The tracks `f => g` are the pairs `(alpha, f, g)` with `alpha` in `G_f`, and the
    local index of `(alpha, f, g)` is `alpha`. The structure is

        (alpha, f, g) + (beta, g, h) = (alpha + phi_{g,f}(beta) - xi(f, g, h), f, h),
        a_*(alpha, f, g) = (a_* alpha - chi(f, g | a, a), af, ag),
        b^*(alpha, f, g) = (b^* alpha - chi(b, b | f, g), fb, gb),

    with `(0, f, f)` the identity track and `sigma_f(alpha, f, f) = alpha`.

    Args:
        p:
            The pre-track category.
        z:
            The triple.
        validate:
            Whether to validate the triple first.

    Returns:
        The (pi, G)-track category.

    Raises:
        ContextMismatch:
            If the triple lives over another pre-track category.
        InvalidCocycle:
            If `validate` is set and the triple is not a cocycle.
    """
    if z.pre != p:
        raise ContextMismatch()
    if validate:
        report = validate_cocycle(p, z)
        if not report.passed:
            raise InvalidCocycle(report=report)
    c = p.base

    tracks = {(f, g): p.group(f).order for f, g in p.pairs}
    vcomp = dict()
    for f, g, h in p.xi_keys:
        group = p.group(f)
        partial = group.add_table[
            np.arange(group.order)[:, None], z.phi[(g, f)].mapping[None, :]
        ]
        vcomp[(f, g, h)] = group.add_table[partial, group.neg(z.xi[(f, g, h)])]

    vneg = dict()
    for f, g in p.pairs:
        group = p.group(f)
        inverse = invert_hom(z.phi[(g, f)]).mapping
        vneg[(f, g)] = inverse[
            group.add_table[group.neg_table, z.xi[(f, g, f)]]
        ]

    lwhisk, rwhisk = dict(), dict()
    for (f, g), a in it.product(p.pairs, range(c.num_morphisms)):
        if not c.composable(a, f):
            continue
        af = c.compose(a, f)
        lwhisk[(a, f, g)] = p.group(af).add_table[
            p.system.push_map(a, f).mapping, p.group(af).neg(z.chi[(f, g, a, a)])
        ]
    for (f, g), b in it.product(p.pairs, range(c.num_morphisms)):
        if not c.composable(f, b):
            continue
        fb = c.compose(f, b)
        rwhisk[(f, g, b)] = p.group(fb).add_table[
            p.system.pull_map(f, b).mapping, p.group(fb).neg(z.chi[(b, b, f, g)])
        ]

    track = TrackCategory(
        underlying=c,
        tracks=tracks,
        vcomp=vcomp,
        vneg=vneg,
        vzero={f: 0 for f in range(c.num_morphisms)},
        lwhisk=lwhisk,
        rwhisk=rwhisk,
    )
    sigma = {f: np.arange(p.group(f).order) for f in range(c.num_morphisms)}
    return PiGTrack(track=track, pre=p, sigma=sigma)


def choice_coboundary(x: PiGTrack, h: TrackChoice, h2: TrackChoice) -> Coboundary:
    """The coboundary `zeta` with `zeta(f, g) + H_{f,g} = H'_{f,g}`.

    Args:
        x:
            The (pi, G)-track category.
        h:
            The first choice.
        h2:
            The second choice.

    Returns:
        The coboundary moving the triple extracted with `h` to the triple extracted
        with `h2`.
    """
    t, p = x.track, x.pre
    zeta = dict()
    for f, g in p.pairs:
        difference = t.add(h2.track(f, g), t.neg(h.track(f, g)))
        zeta[(f, g)] = int(x.sigma[f][difference.local])
    return Coboundary(pre=p, zeta=zeta)


class CocycleMutant(NamedTuple):
    """A triple differing from a cocycle in a single entry.

    Attributes:
        table:
            The mutated table, "xi", "chi" or "phi".
        key:
            The mutated key.
        cocycle:
            The mutated triple.
    """

    table: str
    key: tuple[int, ...]
    cocycle: CocycleTriple


def cocycle_mutants(
    z: CocycleTriple,
    max_mutants: int | None = None,
    seed: int = 0,
    progress_bar: bool = False,
) -> list[CocycleMutant]:
    """All triples differing from a triple in exactly one entry.

    The entries of `xi` and `chi` are replaced by every other group element, and
    every `phi_{g,f}` by every other isomorphism.

    Args:
        z:
            The triple.
        max_mutants:
            If given, a random sample of at most this many mutants is returned.
        seed:
            The seed of the sample.
        progress_bar:
            Whether to show a progress bar.

    Returns:
        The mutants.
    """
    p = z.pre
    c = p.base
    mutants: list[CocycleMutant] = list()
    for key in tqdm(p.xi_keys, desc="Mutating xi", disable=not progress_bar):
        for value in p.group(key[0]).elements:
            if value != z.xi[key]:
                xi = dict(z.xi) | {key: value}
                mutants.append(
                    CocycleMutant("xi", key, CocycleTriple(p, xi, z.chi, z.phi))
                )
    for key in tqdm(p.chi_keys, desc="Mutating chi", disable=not progress_bar):
        for value in p.group(c.compose(key[2], key[0])).elements:
            if value != z.chi[key]:
                chi = dict(z.chi) | {key: value}
                mutants.append(
                    CocycleMutant("chi", key, CocycleTriple(p, z.xi, chi, z.phi))
                )
    for key in p.phi_keys:
        g, f = key
        for hom in enumerate_isomorphisms(p.group(g), p.group(f)):
            if hom != z.phi[key]:
                phi = dict(z.phi) | {key: hom}
                mutants.append(
                    CocycleMutant("phi", key, CocycleTriple(p, z.xi, z.chi, phi))
                )

    if max_mutants is not None and len(mutants) > max_mutants:
        rng = get_rng(seed=seed, stream="mutants")
        picked = sorted(rng.choice(len(mutants), size=max_mutants, replace=False))
        mutants = [mutants[idx] for idx in picked]
    logger.debug(f"Generated {len(mutants):,} single entry mutants.")
    return mutants
