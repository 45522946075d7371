"""Reading and writing structures as canonical JSON files.

Every file is an envelope `{"kind": ..., "version": 1, "data": ...}`. Morphisms are
referred to by name, table keys join names with "," and "|", and all values are
integers, so that the canonical text of a structure is unique.
"""

import json
import logging
from pathlib import Path
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ValidationError

from .cohomology import Coboundary, CocycleTriple, TrackChoice
from .enums import StructureKind
from .exceptions import MalformedFile, StructuralError
from .fincat import FiniteCategory, Morphism, QuotientFunctor
from .fingroup import FiniteGroup, GroupHom
from .natsys import NaturalSystem
from .pretrack import PreTrack
from .track import PiGTrack, TrackCategory
from .types import is_list_of_int, is_list_of_list_of_int

logger = logging.getLogger(__package__)


FORMAT_VERSION = 1


class Envelope(BaseModel):
    """The self-describing wrapper of every file."""

    kind: StructureKind
    version: Literal[1] = FORMAT_VERSION
    data: dict[str, Any]


def dumps(kind: StructureKind, data: dict[str, Any]) -> str:
    """The canonical text of a structure.

    Args:
        kind:
            The kind of the structure.
        data:
            The structure, as produced by one of the `*_to_dict` functions.

    Returns:
        The JSON text with sorted keys, ending in a newline.
    """
    envelope = Envelope(kind=kind, data=data)
    return json.dumps(envelope.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Envelope:
    """Parse the envelope of a file.

    Raises:
        MalformedFile:
            If the text is not JSON, or not an envelope of a known kind and version.
    """
    try:
        return Envelope.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise MalformedFile(f"The file is not valid JSON: {e}")
    except ValidationError as e:
        raise MalformedFile(f"The file is not a valid envelope: {e}")


def read_file(path: Path | str) -> Envelope:
    """Read the envelope of a file.

    Raises:
        MalformedFile:
            If the file cannot be read or parsed.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedFile(f"The file {path} could not be read: {e}")
    return loads(text)


def write_file(path: Path | str, kind: StructureKind, data: dict[str, Any]) -> None:
    """Write a structure to a file in canonical form."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(kind=kind, data=data), encoding="utf-8")
    logger.debug(f"Wrote the {kind.value} file {path}.")


def _join(*names: str) -> str:
    return ",".join(names)


def _split(text: str, size: int) -> list[str]:
    parts = text.split(",")
    if len(parts) != size:
        raise MalformedFile(f"The key {text!r} should consist of {size} names.")
    return parts


def _split_bar(text: str, left: int, right: int) -> tuple[list[str], list[str]]:
    sides = text.split("|")
    if len(sides) != 2:
        raise MalformedFile(f"The key {text!r} should contain exactly one '|'.")
    return _split(sides[0], left), _split(sides[1], right)


def _int_list(value: Any, where: str) -> list[int]:
    if not is_list_of_int(value):
        raise MalformedFile(f"The entry {where} should be a list of integers.")
    return value


def _int_matrix(value: Any, where: str) -> list[list[int]]:
    if not is_list_of_list_of_int(value):
        raise MalformedFile(f"The entry {where} should be a list of integer lists.")
    return value


def _int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise MalformedFile(f"The entry {where} should be an integer.")
    return value


def _section(data: dict[str, Any], key: str) -> Any:
    try:
        return data[key]
    except (KeyError, TypeError):
        raise MalformedFile(f"The field {key!r} is missing.")


def _table(data: dict[str, Any], key: str) -> dict[str, Any]:
    value = _section(data, key)
    if not isinstance(value, dict):
        raise MalformedFile(f"The field {key!r} should be an object.")
    return value


def group_to_dict(g: FiniteGroup) -> dict[str, Any]:
    """Convert a group to its file data."""
    return dict(
        order=g.order,
        add=g.add_table.tolist(),
        neg=g.neg_table.tolist(),
        name=g.name,
    )


def group_from_dict(data: dict[str, Any]) -> FiniteGroup:
    """Convert file data to a group.

    Raises:
        MalformedFile:
            If the data is not shaped like a group.
    """
    order = _int(_section(data, "order"), "order")
    add = _int_matrix(_section(data, "add"), "add")
    neg = _int_list(_section(data, "neg"), "neg")
    if len(neg) != order or len(add) != order or any(len(row) != order for row in add):
        raise MalformedFile(f"The tables of a group of order {order} are misshapen.")
    return FiniteGroup(
        add_table=np.array(add), neg_table=np.array(neg), name=data.get("name", "")
    )


def category_to_dict(c: FiniteCategory) -> dict[str, Any]:
    """Convert a category to its file data."""
    return dict(
        name=c.name,
        objects=list(c.objects),
        morphisms=[dict(id=m.name, src=m.src, tgt=m.tgt) for m in c.morphisms],
        identities=dict(c.identities),
        compose={_join(g, f): gf for (g, f), gf in c.composites.items()},
    )


def category_from_dict(data: dict[str, Any]) -> FiniteCategory:
    """Convert file data to a category.

    Raises:
        MalformedFile:
            If the data is not shaped like a category.
        StructuralError:
            If the tables are inconsistent.
    """
    try:
        morphisms = tuple(
            Morphism(name=str(m["id"]), src=str(m["src"]), tgt=str(m["tgt"]))
            for m in _section(data, "morphisms")
        )
        composites = {
            tuple(_split(key, 2)): str(value)
            for key, value in _table(data, "compose").items()
        }
        identities = {
            str(obj): str(name) for obj, name in _table(data, "identities").items()
        }
        objects = tuple(str(obj) for obj in _section(data, "objects"))
    except (KeyError, TypeError, AttributeError) as e:
        raise MalformedFile(f"The category data is misshapen: {e!r}")
    return FiniteCategory(
        objects=objects,
        morphisms=morphisms,
        identities=identities,
        composites=composites,  # type: ignore[arg-type]
        name=data.get("name", ""),
    )


def _hom_to_list(hom: GroupHom) -> list[int]:
    return hom.mapping.tolist()


def natural_system_to_dict(d: NaturalSystem, embed_base: bool = True) -> dict[str, Any]:
    """Convert a natural system to its file data.

    Args:
        d:
            The natural system.
        embed_base:
            Whether to include the category the system lives on.

    Returns:
        The data.
    """
    c = d.base
    data: dict[str, Any] = dict(
        groups={
            c.morphism_name(f): group_to_dict(group) for f, group in enumerate(d.groups)
        },
        push={_join(*c.names(*key)): _hom_to_list(hom) for key, hom in d.push.items()},
        pull={_join(*c.names(*key)): _hom_to_list(hom) for key, hom in d.pull.items()},
    )
    if embed_base:
        data["category"] = category_to_dict(c)
    return data


def natural_system_from_dict(
    data: dict[str, Any], base: FiniteCategory | None = None
) -> NaturalSystem:
    """Convert file data to a natural system.

    Args:
        data:
            The data.
        base:
            The category the system lives on. If None then it is read from the data.

    Returns:
        The natural system.

    Raises:
        MalformedFile:
            If the data is not shaped like a natural system.
        StructuralError:
            If the tables are inconsistent.
    """
    if base is None:
        base = category_from_dict(_section(data, "category"))
    groups_data = _table(data, "groups")
    try:
        groups = tuple(
            group_from_dict(groups_data[m.name]) for m in base.morphisms
        )
    except (KeyError, TypeError) as e:
        raise MalformedFile(f"A group of the natural system is missing: {e!r}")

    def maps(section: str) -> dict[tuple[int, int], GroupHom]:
        table = dict()
        for key, value in _table(data, section).items():
            outer, inner = (base.mor(name) for name in _split(key, 2))
            if not base.composable(outer, inner):
                raise StructuralError(f"The {section} key {key!r} is not composable.")

            # `h_*` starts at `D_f` for the key (h, f), and `g^*` at `D_f` for (f, g)
            src = inner if section == "push" else outer
            table[(outer, inner)] = GroupHom(
                src=groups[src],
                dst=groups[base.compose(outer, inner)],
                mapping=np.array(_int_list(value, f"{section} {key}")),
            )
        return table

    return NaturalSystem(
        base=base, groups=groups, push=maps("push"), pull=maps("pull")
    )


def pretrack_to_dict(p: PreTrack) -> dict[str, Any]:
    """Convert a pre-track category to its file data."""
    return dict(
        name=p.name,
        source=category_to_dict(p.pi.src),
        target=category_to_dict(p.pi.dst),
        pi=dict(p.pi.mapping),
        G=natural_system_to_dict(p.system, embed_base=False),
    )


def pretrack_from_dict(data: dict[str, Any]) -> PreTrack:
    """Convert file data to a pre-track category.

    Raises:
        MalformedFile:
            If the data is not shaped like a pre-track category.
        StructuralError:
            If the tables are inconsistent.
    """
    source = category_from_dict(_section(data, "source"))
    target = category_from_dict(_section(data, "target"))
    mapping = _table(data, "pi")
    pi = QuotientFunctor(
        src=source,
        dst=target,
        mapping={str(key): str(value) for key, value in mapping.items()},
    )
    system = natural_system_from_dict(_section(data, "G"), base=source)
    return PreTrack(pi=pi, system=system, name=data.get("name", ""))


def cocycle_to_dict(z: CocycleTriple, embed_pretrack: bool = True) -> dict[str, Any]:
    """Convert a cocycle triple to its file data.

    Args:
        z:
            The triple.
        embed_pretrack:
            Whether to include the pre-track category.

    Returns:
        The data.
    """
    c = z.pre.base
    data: dict[str, Any] = dict(
        xi={_join(*c.names(*key)): value for key, value in z.xi.items()},
        chi={
            _join(*c.names(x, y)) + "|" + _join(*c.names(a, b)): value
            for (x, y, a, b), value in z.chi.items()
        },
        phi={_join(*c.names(*key)): _hom_to_list(hom) for key, hom in z.phi.items()},
    )
    if embed_pretrack:
        data["pretrack"] = pretrack_to_dict(z.pre)
    return data


def cocycle_from_dict(
    p: PreTrack | None, data: dict[str, Any]
) -> CocycleTriple:
    """Convert file data to a cocycle triple.

    Args:
        p:
            The pre-track category. If None then it is read from the data.
        data:
            The data.

    Returns:
        The triple.

    Raises:
        MalformedFile:
            If the data is not shaped like a cocycle triple.
        StructuralError:
            If the tables are inconsistent.
    """
    if p is None:
        p = pretrack_from_dict(_section(data, "pretrack"))
    c = p.base
    xi = {
        tuple(c.mor(name) for name in _split(key, 3)): _int(value, f"xi {key}")
        for key, value in _table(data, "xi").items()
    }
    chi = dict()
    for key, value in _table(data, "chi").items():
        left, right = _split_bar(key, 2, 2)
        chi[tuple(c.mor(name) for name in left + right)] = _int(value, f"chi {key}")
    phi = dict()
    for key, value in _table(data, "phi").items():
        g, f = (c.mor(name) for name in _split(key, 2))
        phi[(g, f)] = GroupHom(
            src=p.group(g),
            dst=p.group(f),
            mapping=np.array(_int_list(value, f"phi {key}")),
        )
    return CocycleTriple(pre=p, xi=xi, chi=chi, phi=phi)  # type: ignore[arg-type]


def coboundary_to_dict(cob: Coboundary) -> dict[str, Any]:
    """Convert a coboundary to its file data, with its pre-track category."""
    c = cob.pre.base
    return dict(
        pretrack=pretrack_to_dict(cob.pre),
        zeta={_join(*c.names(*key)): value for key, value in cob.zeta.items()},
    )


def coboundary_from_dict(
    p: PreTrack | None, data: dict[str, Any]
) -> Coboundary:
    """Convert file data to a coboundary.

    Raises:
        MalformedFile:
            If the data is not shaped like a coboundary.
    """
    if p is None:
        p = pretrack_from_dict(_section(data, "pretrack"))
    c = p.base
    zeta = {
        tuple(c.mor(name) for name in _split(key, 2)): _int(value, f"zeta {key}")
        for key, value in _table(data, "zeta").items()
    }
    return Coboundary(pre=p, zeta=zeta)  # type: ignore[arg-type]


def track_choice_to_dict(c: FiniteCategory, h: TrackChoice) -> dict[str, Any]:
    """Convert a choice of tracks to its file data."""
    return dict(
        choice={_join(*c.names(*key)): local for key, local in h.choice.items()},
        seed=h.seed,
    )


def track_choice_from_dict(c: FiniteCategory, data: dict[str, Any]) -> TrackChoice:
    """Convert file data to a choice of tracks.

    Raises:
        MalformedFile:
            If the data is not shaped like a choice of tracks.
    """
    choice = {
        tuple(c.mor(name) for name in _split(key, 2)): _int(value, f"choice {key}")
        for key, value in _table(data, "choice").items()
    }
    seed = data.get("seed")
    return TrackChoice(
        choice=choice,  # type: ignore[arg-type]
        seed=None if seed is None else _int(seed, "seed"),
    )


def track_to_dict(x: PiGTrack) -> dict[str, Any]:
    """Convert a (pi, G)-track category to its file data."""
    t = x.track
    c = t.underlying

    def key(*morphisms: int) -> str:
        return _join(*c.names(*morphisms))

    return dict(
        pretrack=pretrack_to_dict(x.pre),
        tracks={key(*pair): num for pair, num in t.tracks.items()},
        vcomp={key(*k): table.tolist() for k, table in t.vcomp.items()},
        vneg={key(*k): table.tolist() for k, table in t.vneg.items()},
        vzero={c.morphism_name(f): local for f, local in t.vzero.items()},
        lwhisk={
            key(a) + "|" + key(f, g): table.tolist()
            for (a, f, g), table in t.lwhisk.items()
        },
        rwhisk={
            key(f, g) + "|" + key(b): table.tolist()
            for (f, g, b), table in t.rwhisk.items()
        },
        sigma={c.morphism_name(f): table.tolist() for f, table in x.sigma.items()},
    )


def track_from_dict(data: dict[str, Any]) -> PiGTrack:
    """Convert file data to a (pi, G)-track category.

    Raises:
        MalformedFile:
            If the data is not shaped like a (pi, G)-track category.
        StructuralError:
            If the tables are inconsistent.
    """
    p = pretrack_from_dict(_section(data, "pretrack"))
    c = p.base

    def ids(text: str, size: int) -> tuple[int, ...]:
        return tuple(c.mor(name) for name in _split(text, size))

    tracks = {
        ids(k, 2): _int(v, f"tracks {k}") for k, v in _table(data, "tracks").items()
    }
    vcomp = {
        ids(k, 3): np.array(_int_matrix(v, f"vcomp {k}"))
        for k, v in _table(data, "vcomp").items()
    }
    vneg = {
        ids(k, 2): np.array(_int_list(v, f"vneg {k}"))
        for k, v in _table(data, "vneg").items()
    }
    vzero = {
        c.mor(k): _int(v, f"vzero {k}") for k, v in _table(data, "vzero").items()
    }
    lwhisk = dict()
    for k, v in _table(data, "lwhisk").items():
        left, right = _split_bar(k, 1, 2)
        lwhisk[ids(_join(*left, *right), 3)] = np.array(_int_list(v, f"lwhisk {k}"))
    rwhisk = dict()
    for k, v in _table(data, "rwhisk").items():
        left, right = _split_bar(k, 2, 1)
        rwhisk[ids(_join(*left, *right), 3)] = np.array(_int_list(v, f"rwhisk {k}"))
    sigma = {
        c.mor(k): np.array(_int_list(v, f"sigma {k}"))
        for k, v in _table(data, "sigma").items()
    }
    track = TrackCategory(
        underlying=c,
        tracks=tracks,  # type: ignore[arg-type]
        vcomp=vcomp,  # type: ignore[arg-type]
        vneg=vneg,  # type: ignore[arg-type]
        vzero=vzero,
        lwhisk=lwhisk,  # type: ignore[arg-type]
        rwhisk=rwhisk,  # type: ignore[arg-type]
    )
    return PiGTrack(track=track, pre=p, sigma=sigma)


def to_envelope_data(structure: Any) -> tuple[StructureKind, dict[str, Any]]:
    """The kind and file data of any structure.

    Raises:
        StructuralError:
            If the structure cannot be written to a file.
    """
    match structure:
        case FiniteGroup():
            return StructureKind.GROUP, group_to_dict(structure)
        case FiniteCategory():
            return StructureKind.CATEGORY, category_to_dict(structure)
        case NaturalSystem():
            return StructureKind.NATURAL_SYSTEM, natural_system_to_dict(structure)
        case PreTrack():
            return StructureKind.PRETRACK, pretrack_to_dict(structure)
        case CocycleTriple():
            return StructureKind.COCYCLE, cocycle_to_dict(structure)
        case Coboundary():
            return StructureKind.COBOUNDARY, coboundary_to_dict(structure)
        case PiGTrack():
            return StructureKind.TRACK, track_to_dict(structure)
        case _:
            raise StructuralError(
                f"Structures of type {type(structure).__name__} cannot be written."
            )


def from_envelope(envelope: Envelope) -> Any:
    """The structure stored in an envelope.

    Track choices only make sense next to their track category, so they are read
    with `track_choice_from_dict` instead.

    Raises:
        MalformedFile:
            If the data does not fit the kind of the envelope.
        StructuralError:
            If the tables are inconsistent.
    """
    data = envelope.data
    match envelope.kind:
        case StructureKind.GROUP:
            return group_from_dict(data)
        case StructureKind.CATEGORY:
            return category_from_dict(data)
        case StructureKind.NATURAL_SYSTEM:
            return natural_system_from_dict(data)
        case StructureKind.PRETRACK:
            return pretrack_from_dict(data)
        case StructureKind.COCYCLE:
            return cocycle_from_dict(None, data)
        case StructureKind.COBOUNDARY:
            return coboundary_from_dict(None, data)
        case StructureKind.TRACK:
            return track_from_dict(data)
        case _:
            raise MalformedFile(
                f"Files of kind {envelope.kind.value} do not hold a single structure."
            )


def dump_structure(structure: Any) -> str:
    """The canonical text of any structure."""
    kind, data = to_envelope_data(structure)
    return dumps(kind=kind, data=data)


def load_structure(text: str) -> Any:
    """Parse the structure stored in a text."""
    return from_envelope(loads(text))
