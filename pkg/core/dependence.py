"""Dependence between arbitrary objects of one system.

``b`` depends on ``a`` when some function f on a's attained values sends
a's value in every state to b's value in that state. The strict reading
also demands Val(a, s, p) <-> Val(b, s, f(p)) for every attained p.
"""

import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import networkx as nx

from .config import FORMAT_VERSION
from .errors import DifferentSystems
from .objects import ArbitraryObject, ParticularObject
from .universe import Universe, val, value_range

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DependenceWitness:
    source: ArbitraryObject
    target: ArbitraryObject
    mapping: Mapping[ParticularObject, ParticularObject]
    strict: bool

    @property
    def is_bijective(self):
        return len(set(self.mapping.values())) == len(self.mapping)

    def inverse(self):
        if not self.is_bijective:
            raise ValueError("only a bijective witness has an inverse")
        inverted = {image: value for value, image in self.mapping.items()}
        return DependenceWitness(self.target, self.source, MappingProxyType(inverted), self.strict)

    def compose(self, other: "DependenceWitness"):
        """Given self: a -> b and other: b -> c, the witness a -> c (other after self)."""
        if other.source != self.target:
            raise ValueError("witnesses do not chain")
        composed = {value: other.mapping[image] for value, image in self.mapping.items()}
        return DependenceWitness(self.source, other.target, MappingProxyType(composed), False)

    def to_dict(self):
        return {
            "from": self.source.label,
            "to": self.target.label,
            "map": {str(value): str(image) for value, image in sorted(self.mapping.items())},
            "strict": self.strict,
        }


def _shared_system(u: Universe, a: ArbitraryObject, b: ArbitraryObject):
    system_a = u.system_of_object(a)
    system_b = u.system_of_object(b)
    if system_a.canonical_id != system_b.canonical_id:
        raise DifferentSystems(f"{a.label} and {b.label} belong to different systems and share no states")
    return system_a


def depends(u: Universe, a: ArbitraryObject, b: ArbitraryObject, strict: bool = False):
    """Return the witness that ``b`` depends on ``a``, or None."""
    system = _shared_system(u, a, b)
    states = system.states()

    induced = {}
    for s in states:
        value, image = val(u, a, s), val(u, b, s)
        if induced.setdefault(value, image) != image:
            logger.debug(f"{b.label} does not depend on {a.label}: {value} maps to {induced[value]} and {image}")
            return None

    if strict:
        for s in states:
            for p in value_range(u, a):
                if (val(u, a, s) == p) != (val(u, b, s) == induced[p]):
                    logger.debug(f"Strict dependence of {b.label} on {a.label} fails at value {p}")
                    return None

    return DependenceWitness(a, b, MappingProxyType(dict(sorted(induced.items()))), strict)


def mutual_dependence(u: Universe, a: ArbitraryObject, b: ArbitraryObject) -> bool:
    return depends(u, a, b) is not None and depends(u, b, a) is not None


def dependence_graph(u: Universe, system) -> nx.DiGraph:
    """Weak dependence among the objects of ``system``: an edge a -> b when b depends on a."""
    system = u.system(system.canonical_id)
    graph = nx.DiGraph(system=system.canonical_id)
    objects = system.objects()
    for obj in objects:
        graph.add_node(obj, label=obj.label)
    for a in objects:
        for b in objects:
            witness = depends(u, a, b)
            if witness is not None:
                graph.add_edge(a, b, witness=witness)
    logger.info(f"Dependence graph of {system.short_id}: {graph.number_of_nodes()} nodes, "
                f"{graph.number_of_edges()} edges")
    return graph


def _quoted(text):
    escaped = str(text).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def dependence_to_dot(graph: nx.DiGraph) -> str:
    lines = [f'digraph {_quoted(graph.graph.get("system", ""))} {{', "node[shape=box];"]
    for node in sorted(graph.nodes):
        lines.append(f"{_quoted(node.label)};")
    for a, b in sorted(graph.edges):
        mapping = graph.edges[a, b]["witness"].mapping
        label = ", ".join(f"{value}->{image}" for value, image in mapping.items())
        lines.append(f"{_quoted(a.label)} -> {_quoted(b.label)} [label={_quoted(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dependence_to_json(graph: nx.DiGraph) -> dict:
    return {
        "format": FORMAT_VERSION,
        "system": graph.graph.get("system"),
        "nodes": [node.label for node in sorted(graph.nodes)],
        "adjacency": {
            node.label: [target.label for target in sorted(graph.successors(node))]
            for node in sorted(graph.nodes)
        },
        "witnesses": [graph.edges[a, b]["witness"].to_dict() for a, b in sorted(graph.edges)],
    }


def is_ur_object(u: Universe, a: ArbitraryObject) -> bool:
    system = u.system_of_object(a)
    for b in system.objects():
        if b == a:
            continue
        if depends(u, b, a) is not None or depends(u, a, b) is not None:
            return False
    return True


def ur_objects(u: Universe, system):
    return [obj for obj in u.system(system.canonical_id).objects() if is_ur_object(u, obj)]
