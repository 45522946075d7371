"""Brute-force classification of (pi, G)-track categories.

Nothing here uses cocycles. All track categories over a pre-track category are
enumerated directly, table entry by table entry, and then partitioned by
`are_equivalent_tracks`. The count is used to check `classify` independently.
"""

import itertools as it
import logging
import time
from functools import partial
from typing import Callable, NamedTuple

import numpy as np
from pydantic import BaseModel
from tqdm.auto import tqdm

from .config import SearchBudget
from .exceptions import BudgetExceeded
from .pretrack import PreTrack
from .track import PiGTrack, TrackCategory, are_equivalent_tracks

logger = logging.getLogger(__package__)


# Reads a table entry, given the table name, its key and the index into it
Lookup = Callable[..., int]

# A table entry, given by the table name, its key and the index into it
Cell = tuple[str, tuple[int, ...], tuple[int, ...]]


class _Pending(Exception):
    """A table entry that is not assigned yet was read."""


class AxiomInstance(NamedTuple):
    """A single instance of an axiom on concrete tracks.

    Attributes:
        label:
            The axiom, such as "TR1".
        reads:
            The tables the instance may read, as pairs of table name and key.
        check:
            Whether the instance holds, given a lookup of table entries.
    """

    label: str
    reads: frozenset[tuple[str, tuple[int, ...]]]
    check: Callable[[Lookup], bool]


class TrackClassificationResult(BaseModel):
    """The equivalence classes of (pi, G)-track categories."""

    pretrack: str
    class_count: int
    class_sizes: list[int]
    structures: int
    nodes: int


def _associative(
    v: Lookup, f: int, g: int, h: int, k: int, i: int, j: int, m: int
) -> bool:
    inner = v("vcomp", (f, g, h), i, j)
    outer = v("vcomp", (g, h, k), j, m)
    return v("vcomp", (f, h, k), inner, m) == v("vcomp", (f, g, k), i, outer)


def _left_unital(v: Lookup, f: int, g: int, i: int) -> bool:
    return v("vcomp", (f, f, g), 0, i) == i


def _right_unital(v: Lookup, f: int, g: int, i: int) -> bool:
    return v("vcomp", (f, g, g), i, 0) == i


def _right_inverse(v: Lookup, f: int, g: int, i: int) -> bool:
    return v("vcomp", (f, g, f), i, v("vneg", (f, g), i)) == 0


def _left_inverse(v: Lookup, f: int, g: int, i: int) -> bool:
    return v("vcomp", (g, f, g), v("vneg", (f, g), i), i) == 0


def _additive(
    v: Lookup,
    name: str,
    whole: tuple,
    summands: tuple,
    image: tuple,
    first: tuple,
    second: tuple,
    i: int,
    j: int,
) -> bool:
    lhs = v(name, whole, v("vcomp", summands, i, j))
    return lhs == v("vcomp", image, v(name, first, i), v(name, second, j))


def _unital(v: Lookup, name: str, key: tuple) -> bool:
    return v(name, key, 0) == 0


def _fixes(v: Lookup, name: str, key: tuple, i: int) -> bool:
    return v(name, key, i) == i


def _functorial(
    v: Lookup, name: str, whole: tuple, last: tuple, first: tuple, i: int
) -> bool:
    return v(name, whole, i) == v(name, last, v(name, first, i))


def _commuting(
    v: Lookup,
    push_after: tuple,
    pull_first: tuple,
    pull_after: tuple,
    push_first: tuple,
    i: int,
) -> bool:
    lhs = v("lwhisk", push_after, v("rwhisk", pull_first, i))
    return lhs == v("rwhisk", pull_after, v("lwhisk", push_first, i))


def _interchange(
    v: Lookup,
    left: tuple,
    right: tuple,
    pushes: tuple[tuple, tuple],
    pulls: tuple[tuple, tuple],
    i: int,
    j: int,
) -> bool:
    lhs = v("vcomp", left, v("lwhisk", pushes[0], i), v("rwhisk", pulls[0], j))
    rhs = v("vcomp", right, v("rwhisk", pulls[1], j), v("lwhisk", pushes[1], i))
    return lhs == rhs


def _axiom_instances(p: PreTrack, tracks: dict) -> list[AxiomInstance]:
    """All instances of the groupoid axioms and TR1 to TR9 on concrete tracks.

    Identity tracks are the local index 0.
    """
    c = p.base
    n = c.num_morphisms
    instances: list[AxiomInstance] = list()

    def add(label: str, reads: list[tuple], check: Callable[[Lookup], bool]) -> None:
        instances.append(AxiomInstance(label, frozenset(reads), check))

    for f, g, h in p.xi_keys:
        for k in p.fibre[h]:
            reads = [("vcomp", key) for key in ((f, g, h), (f, h, k), (g, h, k))]
            reads.append(("vcomp", (f, g, k)))
            for i, j, m in it.product(
                range(tracks[(f, g)]), range(tracks[(g, h)]), range(tracks[(h, k)])
            ):
                add(
                    "TR1",
                    reads,
                    partial(_associative, f=f, g=g, h=h, k=k, i=i, j=j, m=m),
                )

    for f, g in p.pairs:
        for i in range(tracks[(f, g)]):
            add("TR2", [("vcomp", (f, f, g))], partial(_left_unital, f=f, g=g, i=i))
            add("TR2", [("vcomp", (f, g, g))], partial(_right_unital, f=f, g=g, i=i))
            add(
                "inverse",
                [("vcomp", (f, g, f)), ("vneg", (f, g))],
                partial(_right_inverse, f=f, g=g, i=i),
            )
            add(
                "inverse",
                [("vcomp", (g, f, g)), ("vneg", (f, g))],
                partial(_left_inverse, f=f, g=g, i=i),
            )

    # Whiskering is additive
    for u, w, x in p.xi_keys:
        summands = (u, w, x)
        indices = list(it.product(range(tracks[(u, w)]), range(tracks[(w, x)])))
        for b in range(n):
            if not c.composable(u, b):
                continue
            keys = dict(
                whole=(u, x, b),
                summands=summands,
                image=(c.compose(u, b), c.compose(w, b), c.compose(x, b)),
                first=(u, w, b),
                second=(w, x, b),
            )
            reads = [("rwhisk", keys[k]) for k in ("whole", "first", "second")]
            reads += [("vcomp", keys[k]) for k in ("summands", "image")]
            for i, j in indices:
                add("TR3", reads, partial(_additive, name="rwhisk", i=i, j=j, **keys))
        for a in range(n):
            if not c.composable(a, u):
                continue
            keys = dict(
                whole=(a, u, x),
                summands=summands,
                image=(c.compose(a, u), c.compose(a, w), c.compose(a, x)),
                first=(a, u, w),
                second=(a, w, x),
            )
            reads = [("lwhisk", keys[k]) for k in ("whole", "first", "second")]
            reads += [("vcomp", keys[k]) for k in ("summands", "image")]
            for i, j in indices:
                add("TR4", reads, partial(_additive, name="lwhisk", i=i, j=j, **keys))

    # Whiskering is unital and functorial, and the two whiskerings commute
    for u, w in p.pairs:
        num = tracks[(u, w)]
        for b in range(n):
            if not c.composable(u, b):
                continue
            if u == w:
                key = (u, u, b)
                add("TR5", [("rwhisk", key)], partial(_unital, name="rwhisk", key=key))
            if c.is_identity(b):
                for i in range(num):
                    key = (u, w, b)
                    add(
                        "TR6",
                        [("rwhisk", key)],
                        partial(_fixes, name="rwhisk", key=key, i=i),
                    )
            for b1 in range(n):
                if not c.composable(b, b1):
                    continue
                whole = (u, w, c.compose(b, b1))
                last = (c.compose(u, b), c.compose(w, b), b1)
                first = (u, w, b)
                reads = [("rwhisk", key) for key in (whole, last, first)]
                for i in range(num):
                    add(
                        "TR6",
                        reads,
                        partial(
                            _functorial,
                            name="rwhisk",
                            whole=whole,
                            last=last,
                            first=first,
                            i=i,
                        ),
                    )
        for a in range(n):
            if not c.composable(a, u):
                continue
            if u == w:
                key = (a, u, u)
                add("TR5", [("lwhisk", key)], partial(_unital, name="lwhisk", key=key))
            if c.is_identity(a):
                for i in range(num):
                    key = (a, u, w)
                    add(
                        "TR7",
                        [("lwhisk", key)],
                        partial(_fixes, name="lwhisk", key=key, i=i),
                    )
            for a0 in range(n):
                if not c.composable(a0, a):
                    continue
                whole = (c.compose(a0, a), u, w)
                last = (a0, c.compose(a, u), c.compose(a, w))
                first = (a, u, w)
                reads = [("lwhisk", key) for key in (whole, last, first)]
                for i in range(num):
                    add(
                        "TR7",
                        reads,
                        partial(
                            _functorial,
                            name="lwhisk",
                            whole=whole,
                            last=last,
                            first=first,
                            i=i,
                        ),
                    )
            for b in range(n):
                if not c.composable(u, b):
                    continue
                keys = dict(
                    push_after=(a, c.compose(u, b), c.compose(w, b)),
                    pull_first=(u, w, b),
                    pull_after=(c.compose(a, u), c.compose(a, w), b),
                    push_first=(a, u, w),
                )
                reads = [
                    ("lwhisk" if k.startswith("push") else "rwhisk", key)
                    for k, key in keys.items()
                ]
                for i in range(num):
                    add("TR8", reads, partial(_commuting, i=i, **keys))

    # Interchange of alpha: f => f1 and alpha1: g => g1
    for f, f1 in p.pairs:
        for g, g1 in p.pairs:
            if not c.composable(g, f):
                continue
            gf, gf1 = c.compose(g, f), c.compose(g, f1)
            g1f, g1f1 = c.compose(g1, f), c.compose(g1, f1)
            left, right = (gf, gf1, g1f1), (gf, g1f, g1f1)
            pushes = ((g, f, f1), (g1, f, f1))
            pulls = ((g, g1, f1), (g, g1, f))
            reads = [("vcomp", left), ("vcomp", right)]
            reads += [("lwhisk", key) for key in pushes]
            reads += [("rwhisk", key) for key in pulls]
            for i, j in it.product(range(tracks[(f, f1)]), range(tracks[(g, g1)])):
                add(
                    "TR9",
                    reads,
                    partial(
                        _interchange,
                        left=left,
                        right=right,
                        pushes=pushes,
                        pulls=pulls,
                        i=i,
                        j=j,
                    ),
                )

    return instances


class TrackSearch:
    """Backtracking search over all (pi, G)-track categories.

    The set `T(f, g)` has `|G_f|` elements whenever `pi(f) = pi(g)`, and the
    identification `sigma` is the identity, so that `T(f, f)` is `G_f` as a group
    with the whiskerings of automorphisms given by `G`. Every other table entry is a
    free cell, and the axiom instances reading a table are checked whenever one of
    its cells is assigned.

    Args:
        p:
            The pre-track category.
        budget:
            The budget of the search, counted in assignments.
        progress_bar:
            Whether to show a progress bar.

    Attributes:
        pre:
            The pre-track category.
        budget:
            The budget of the search.
        progress_bar:
            Whether to show a progress bar.
        tracks:
            The size of every non-empty set of tracks.
        tables:
            The tables as nested lists, with -1 marking unassigned entries.
        cells:
            The free cells, in search order.
        domains:
            The number of candidate values of every cell.
        checks:
            The axiom instances to check after assigning each cell.
        upfront:
            The axiom instances that read no free cell.
        nodes:
            The number of assignments made so far.
        pruned:
            The number of assignments rejected by an axiom.
    """

    def __init__(
        self, p: PreTrack, budget: SearchBudget, progress_bar: bool = False
    ) -> None:
        """Initialise the search."""
        self.pre = p
        self.budget = budget
        self.progress_bar = progress_bar
        c = p.base

        self.tracks = {(f, g): p.group(f).order for f, g in p.pairs}
        targets: dict[str, dict[tuple[int, ...], tuple[int, int]]] = dict(
            vcomp={(f, g, h): (f, h) for f, g, h in p.xi_keys},
            vneg={(f, g): (g, f) for f, g in p.pairs},
            lwhisk={
                (a, f, g): (c.compose(a, f), c.compose(a, g))
                for f, g in p.pairs
                for a in range(c.num_morphisms)
                if c.composable(a, f)
            },
            rwhisk={
                (f, g, b): (c.compose(f, b), c.compose(g, b))
                for f, g in p.pairs
                for b in range(c.num_morphisms)
                if c.composable(f, b)
            },
        )

        self.tables: dict[str, dict[tuple[int, ...], list]] = dict()
        self.cells: list[Cell] = list()
        self.domains: list[int] = list()
        free_keys: set[tuple[str, tuple[int, ...]]] = set()
        for name, keys in targets.items():
            self.tables[name] = dict()
            for key, target in sorted(keys.items()):
                fixed = self._fixed_table(name, key)
                if fixed is not None:
                    self.tables[name][key] = fixed
                    continue
                free_keys.add((name, key))
                if name == "vcomp":
                    rows, cols = self.tracks[key[:2]], self.tracks[key[1:]]
                    self.tables[name][key] = [[-1] * cols for _ in range(rows)]
                    indices = [(i, j) for i in range(rows) for j in range(cols)]
                else:
                    source = key[:2] if name != "lwhisk" else key[1:]
                    self.tables[name][key] = [-1] * self.tracks[source]
                    indices = [(i,) for i in range(self.tracks[source])]
                for index in indices:
                    self.cells.append((name, key, index))
                    self.domains.append(self.tracks[target])

        self.checks: list[list[AxiomInstance]] = [list() for _ in self.cells]
        self.upfront: list[AxiomInstance] = list()
        by_key: dict[tuple[str, tuple[int, ...]], list[int]] = dict()
        for idx, (name, key, _) in enumerate(self.cells):
            by_key.setdefault((name, key), list()).append(idx)
        for instance in _axiom_instances(p, self.tracks):
            positions = [idx for read in instance.reads for idx in by_key.get(read, [])]
            if positions:
                for idx in positions:
                    self.checks[idx].append(instance)
            else:
                self.upfront.append(instance)

        self.nodes = 0
        self.pruned = 0

    def _fixed_table(self, name: str, key: tuple[int, ...]) -> list | None:
        """The table forced by `sigma` being the identity, if any."""
        p = self.pre
        if name == "vcomp" and key[0] == key[1] == key[2]:
            return p.group(key[0]).add_table.tolist()
        if name == "vneg" and key[0] == key[1]:
            return p.group(key[0]).neg_table.tolist()
        if name == "lwhisk" and key[1] == key[2]:
            return p.system.push_map(key[0], key[1]).mapping.tolist()
        if name == "rwhisk" and key[0] == key[1]:
            return p.system.pull_map(key[0], key[2]).mapping.tolist()
        return None

    def _lookup(self, name: str, key: tuple[int, ...], *index: int) -> int:
        value = self.tables[name][key]
        for i in index:
            value = value[i]
        if value < 0:
            raise _Pending()
        return value

    def _holds(self, instance: AxiomInstance) -> bool:
        try:
            return instance.check(self._lookup)
        except _Pending:
            return True

    def _set(self, cell: Cell, value: int) -> None:
        name, key, index = cell
        if len(index) == 2:
            self.tables[name][key][index[0]][index[1]] = value
        else:
            self.tables[name][key][index[0]] = value

    def run(self) -> list[PiGTrack]:
        """Enumerate all (pi, G)-track categories.

        Returns:
            The track categories, in lexicographic order of the search.

        Raises:
            BudgetExceeded:
                If the search exceeds its budget.
        """
        found: list[PiGTrack] = list()
        failed = [inst.label for inst in self.upfront if not self._holds(inst)]
        if failed:
            logger.debug(f"The fixed tables violate {sorted(set(failed))}.")
            return found

        start = time.perf_counter()
        with tqdm(
            desc="Enumerating tracks", unit="structure", disable=not self.progress_bar
        ) as pbar:

            def assign(depth: int) -> None:
                if depth == len(self.cells):
                    found.append(self._to_track())
                    pbar.update(1)
                    return
                cell = self.cells[depth]
                for value in range(self.domains[depth]):
                    self.nodes += 1
                    if self.nodes > self.budget.max_candidates:
                        raise BudgetExceeded(
                            what="track structure",
                            limit=self.budget.max_candidates,
                            unit="candidates",
                        )
                    if (
                        self.budget.max_seconds is not None
                        and self.nodes % 1000 == 0
                        and time.perf_counter() - start > self.budget.max_seconds
                    ):
                        raise BudgetExceeded(
                            what="track structure",
                            limit=self.budget.max_seconds,
                            unit="seconds",
                        )
                    self._set(cell, value)
                    if all(self._holds(inst) for inst in self.checks[depth]):
                        assign(depth + 1)
                    else:
                        self.pruned += 1
                self._set(cell, -1)

            assign(0)

        logger.debug(
            f"Visited {self.nodes:,} assignments, pruned {self.pruned:,}, and found "
            f"{len(found):,} track structures."
        )
        return found

    def _to_track(self) -> PiGTrack:
        p = self.pre
        c = p.base
        track = TrackCategory(
            underlying=c,
            tracks=dict(self.tracks),
            vcomp={key: np.array(t) for key, t in self.tables["vcomp"].items()},
            vneg={key: np.array(t) for key, t in self.tables["vneg"].items()},
            vzero={f: 0 for f in range(c.num_morphisms)},
            lwhisk={key: np.array(t) for key, t in self.tables["lwhisk"].items()},
            rwhisk={key: np.array(t) for key, t in self.tables["rwhisk"].items()},
        )
        sigma = {f: np.arange(p.group(f).order) for f in range(c.num_morphisms)}
        return PiGTrack(track=track, pre=p, sigma=sigma)


def enumerate_track_structures(
    p: PreTrack, budget: SearchBudget | None = None, progress_bar: bool = False
) -> list[PiGTrack]:
    """Enumerate all (pi, G)-track categories with `T(f, g)` of size `|G_f|`.

    Args:
        p:
            The pre-track category.
        budget:
            The budget of the search.
        progress_bar:
            Whether to show a progress bar.

    Returns:
        The track categories.

    Raises:
        BudgetExceeded:
            If the search exceeds its budget.
    """
    search = TrackSearch(p, budget=budget or SearchBudget(), progress_bar=progress_bar)
    return search.run()


def classify_tracks(
    p: PreTrack, budget: SearchBudget | None = None, progress_bar: bool = False
) -> TrackClassificationResult:
    """Partition all (pi, G)-track categories up to equivalence.

    Every structure is compared with one representative of each class found so far.

    Args:
        p:
            The pre-track category.
        budget:
            The budget of the enumeration and of every equivalence search.
        progress_bar:
            Whether to show progress bars.

    Returns:
        The number of classes and their sizes.

    Raises:
        BudgetExceeded:
            If a search exceeds its budget.
    """
    budget = budget or SearchBudget()
    logger.info(f"Enumerating track structures over {p.name or 'the pre-track'}")

    search = TrackSearch(p, budget=budget, progress_bar=progress_bar)
    structures = search.run()

    representatives: list[PiGTrack] = list()
    sizes: list[int] = list()
    for x in tqdm(structures, desc="Partitioning", disable=not progress_bar):
        for idx, representative in enumerate(representatives):
            if are_equivalent_tracks(representative, x, budget=budget) is not None:
                sizes[idx] += 1
                break
        else:
            representatives.append(x)
            sizes.append(1)

    logger.info(
        f"Found {len(representatives)} classes among {len(structures):,} track "
        "structures."
    )
    return TrackClassificationResult(
        pretrack=p.name,
        class_count=len(representatives),
        class_sizes=sizes,
        structures=len(structures),
        nodes=search.nodes,
    )
