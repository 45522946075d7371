"""Classification of cocycle triples up to coboundaries, by exhaustive search."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from pydantic import BaseModel
from tqdm.auto import tqdm

from .cohomology import (
    CocycleTriple,
    EquationInstance,
    Variable,
    admissible_coboundaries,
    apply_coboundary,
    equation_instances,
    is_degenerate_chi,
    is_degenerate_phi,
    is_degenerate_xi,
)
from .config import SearchBudget
from .exceptions import BudgetExceeded
from .fingroup import GroupHom, enumerate_isomorphisms, identity_hom
from .pretrack import PreTrack
from .serialisation import cocycle_from_dict, cocycle_to_dict
from .utils import UnionFind

logger = logging.getLogger(__package__)


class SearchStats(BaseModel):
    """Statistics of a classification run."""

    variables: int
    nodes: int
    pruned: int
    cocycles: int
    coboundaries: int


class ClassificationResult(BaseModel):
    """The cohomology classes of a pre-track category."""

    pretrack: str
    class_count: int
    class_sizes: list[int]
    representatives: list[dict]
    search_stats: SearchStats


class CocycleSearch:
    """Backtracking search over all normalized cocycle triples.

    The variables are the non-degenerate entries, ordered as all `phi`, then all
    `xi`, then all `chi`, each by key. Every equation instance is checked as soon as
    the last of its variables is assigned.

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
        variables:
            The variables, in search order.
        domains:
            The candidate values of every variable.
        checks:
            The equation instances to check after assigning each variable.
        upfront:
            The equation instances without variables.
        nodes:
            The number of assignments made so far.
        pruned:
            The number of assignments rejected by an equation.
    """

    def __init__(
        self, p: PreTrack, budget: SearchBudget, progress_bar: bool = False
    ) -> None:
        """Initialise the search."""
        self.pre = p
        self.budget = budget
        self.progress_bar = progress_bar
        c = p.base

        self.variables: list[Variable] = (
            [("phi", key) for key in p.phi_keys if not is_degenerate_phi(key)]
            + [("xi", key) for key in p.xi_keys if not is_degenerate_xi(key)]
            + [("chi", key) for key in p.chi_keys if not is_degenerate_chi(p, key)]
        )
        self.domains: list[list] = list()
        for kind, key in self.variables:
            if kind == "phi":
                g, f = key
                homs = enumerate_isomorphisms(p.group(g), p.group(f))
                self.domains.append([hom.mapping for hom in homs])
            elif kind == "xi":
                self.domains.append(list(p.group(key[0]).elements))
            else:
                self.domains.append(
                    list(p.group(c.compose(key[2], key[0])).elements)
                )

        position = {variable: idx for idx, variable in enumerate(self.variables)}
        self.checks: list[list[EquationInstance]] = [list() for _ in self.variables]
        self.upfront: list[EquationInstance] = list()
        for instance in equation_instances(p):
            if instance.variables:
                last = max(position[variable] for variable in instance.variables)
                self.checks[last].append(instance)
            else:
                self.upfront.append(instance)

        self.nodes = 0
        self.pruned = 0

    def run(self) -> list[CocycleTriple]:
        """Enumerate all normalized cocycle triples.

        Returns:
            The triples, in lexicographic order of the search.

        Raises:
            BudgetExceeded:
                If the search exceeds its budget.
        """
        p = self.pre
        xi = {key: 0 for key in p.xi_keys}
        chi = {key: 0 for key in p.chi_keys}
        phi: dict = {
            key: np.arange(p.group(key[0]).order)
            for key in p.phi_keys
            if is_degenerate_phi(key)
        }
        tables = dict(xi=xi, chi=chi, phi=phi)
        found: list[CocycleTriple] = list()

        if not all(instance.check(xi, chi, phi) for instance in self.upfront):
            logger.debug("An equation without variables fails, so Z is empty.")
            return found

        start = time.perf_counter()
        with tqdm(
            desc="Enumerating cocycles", unit="cocycle", disable=not self.progress_bar
        ) as pbar:

            def assign(depth: int) -> None:
                if depth == len(self.variables):
                    found.append(self._to_triple(xi, chi, phi))
                    pbar.update(1)
                    return
                kind, key = self.variables[depth]
                for value in self.domains[depth]:
                    self.nodes += 1
                    if self.nodes > self.budget.max_candidates:
                        raise BudgetExceeded(
                            what="cocycle",
                            limit=self.budget.max_candidates,
                            unit="candidates",
                        )
                    if (
                        self.budget.max_seconds is not None
                        and self.nodes % 1000 == 0
                        and time.perf_counter() - start > self.budget.max_seconds
                    ):
                        raise BudgetExceeded(
                            what="cocycle",
                            limit=self.budget.max_seconds,
                            unit="seconds",
                        )
                    tables[kind][key] = value
                    if all(
                        instance.check(xi, chi, phi) for instance in self.checks[depth]
                    ):
                        assign(depth + 1)
                    else:
                        self.pruned += 1

            assign(0)

        logger.debug(
            f"Visited {self.nodes:,} assignments, pruned {self.pruned:,}, and found "
            f"{len(found):,} cocycles."
        )
        return found

    def _to_triple(self, xi: dict, chi: dict, phi: dict) -> CocycleTriple:
        p = self.pre
        homs = dict()
        for key in p.phi_keys:
            g, f = key
            if is_degenerate_phi(key):
                homs[key] = identity_hom(p.group(f))
            else:
                homs[key] = GroupHom(src=p.group(g), dst=p.group(f), mapping=phi[key])
        return CocycleTriple(pre=p, xi=dict(xi), chi=dict(chi), phi=homs)


def enumerate_cocycles(
    p: PreTrack, budget: SearchBudget | None = None, progress_bar: bool = False
) -> list[CocycleTriple]:
    """Enumerate all normalized cocycle triples over a pre-track category.

    Args:
        p:
            The pre-track category.
        budget:
            The budget of the search.
        progress_bar:
            Whether to show a progress bar.

    Returns:
        The triples.

    Raises:
        BudgetExceeded:
            If the search exceeds its budget.
    """
    search = CocycleSearch(
        p, budget=budget or SearchBudget(), progress_bar=progress_bar
    )
    return search.run()


def partition_cocycles(
    p: PreTrack,
    cocycles: list[CocycleTriple],
    budget: SearchBudget | None = None,
    num_threads: int = 1,
    progress_bar: bool = False,
) -> tuple[list[list[CocycleTriple]], int]:
    """Partition cocycle triples into cohomology classes.

    Every admissible coboundary is applied to every triple, and the triple is merged
    with its image. The images are computed in parallel, and the merges are done in
    order, so the result does not depend on the number of threads.

    Args:
        p:
            The pre-track category.
        cocycles:
            All normalized cocycle triples.
        budget:
            The budget, counted in applied coboundaries.
        num_threads:
            The number of threads computing images.
        progress_bar:
            Whether to show a progress bar.

    Returns:
        The classes, each sorted with its least triple first, ordered by their least
        triple, and the number of coboundaries applied.

    Raises:
        BudgetExceeded:
            If the number of coboundaries to apply exceeds the budget.
    """
    budget = budget or SearchBudget()
    num_coboundaries = int(
        np.prod([p.group(f).order for f, _ in p.canonical_pairs], dtype=np.int64)
    )
    if len(cocycles) * num_coboundaries > budget.max_candidates:
        raise BudgetExceeded(
            what="coboundary", limit=budget.max_candidates, unit="candidates"
        )

    index = {z.key(): idx for idx, z in enumerate(cocycles)}

    def orbit(z: CocycleTriple) -> list[int]:
        images = list()
        for cob in admissible_coboundaries(p, z):
            image = apply_coboundary(p, z, cob).key()
            if image in index:
                images.append(index[image])
            else:
                logger.warning(
                    "A coboundary moved a cocycle outside the enumerated set."
                )
        return images

    union_find = UnionFind(range(len(cocycles)))
    with ThreadPoolExecutor(max_workers=max(num_threads, 1)) as executor:
        orbits = executor.map(orbit, cocycles)
        for idx, images in enumerate(
            tqdm(
                orbits,
                total=len(cocycles),
                desc="Partitioning",
                disable=not progress_bar,
            )
        ):
            for image in images:
                union_find.union(idx, image)

    classes = [
        sorted((cocycles[idx] for idx in members), key=lambda z: z.key())
        for members in union_find.classes()
    ]
    classes.sort(key=lambda members: members[0].key())
    return classes, len(cocycles) * num_coboundaries


def classify(
    p: PreTrack,
    budget: SearchBudget | None = None,
    num_threads: int = 1,
    progress_bar: bool = False,
) -> ClassificationResult:
    """Classify the normalized cocycle triples of a pre-track category.

    Args:
        p:
            The pre-track category.
        budget:
            The budget of both the enumeration and the partition.
        num_threads:
            The number of threads used by the partition.
        progress_bar:
            Whether to show progress bars.

    Returns:
        The number of classes, their sizes and least representatives, and the search
        statistics.

    Raises:
        BudgetExceeded:
            If the search exceeds its budget. No partial result is returned.
    """
    budget = budget or SearchBudget()
    logger.info(f"Classifying cocycles over {p.name or 'the pre-track category'}")

    search = CocycleSearch(p, budget=budget, progress_bar=progress_bar)
    cocycles = search.run()
    classes, num_coboundaries = partition_cocycles(
        p,
        cocycles,
        budget=budget,
        num_threads=num_threads,
        progress_bar=progress_bar,
    )

    result = ClassificationResult(
        pretrack=p.name,
        class_count=len(classes),
        class_sizes=[len(members) for members in classes],
        representatives=[
            cocycle_to_dict(members[0], embed_pretrack=False) for members in classes
        ],
        search_stats=SearchStats(
            variables=len(search.variables),
            nodes=search.nodes,
            pruned=search.pruned,
            cocycles=len(cocycles),
            coboundaries=num_coboundaries,
        ),
    )
    logger.info(
        f"Found {result.class_count} cohomology classes among {len(cocycles):,} "
        "cocycles."
    )
    return result


def representatives(p: PreTrack, result: ClassificationResult) -> list[CocycleTriple]:
    """The representatives of a classification, as cocycle triples."""
    return [cocycle_from_dict(p, data) for data in result.representatives]
