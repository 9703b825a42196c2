"""Finite truncated trees of natural-number sequences.

A node is a tuple of naturals; ``()`` is the root.  Trees are bounded in
depth (node length) and branching (entry values).
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import InvalidRequest, MalformedPredicate

__all__ = [
    "FiniteTree",
    "MembershipTable",
    "RepairReport",
    "normalize",
    "longest_path",
    "is_ill_at_truncation",
    "from_predicate",
    "all_sequences",
    "seq_to_str",
    "str_to_seq",
]

Seq = tuple[int, ...]


def seq_to_str(s: Seq) -> str:
    return "".join(map(str, s))


def str_to_seq(text: str) -> Seq:
    if not text.isdigit() and text != "":
        raise InvalidRequest(f"sequence {text!r} must be a digit string")
    return tuple(int(ch) for ch in text)


def all_sequences(depth: int, branching: int) -> Iterable[Seq]:
    for n in range(depth + 1):
        yield from itertools.product(range(branching), repeat=n)


def _check_bounds(nodes, depth, branching):
    if depth < 0 or branching < 1:
        raise InvalidRequest("depth must be >= 0 and branching >= 1")
    for s in nodes:
        if len(s) > depth or any(not 0 <= x < branching for x in s):
            raise InvalidRequest(f"sequence {seq_to_str(s)!r} is outside the depth/branching bounds")


@dataclass(frozen=True)
class MembershipTable:
    """Characteristic function on all sequences within the bounds, stored as its 1-set."""

    depth: int
    branching: int
    ones: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ones", frozenset(tuple(s) for s in self.ones))
        _check_bounds(self.ones, self.depth, self.branching)

    def __call__(self, s: Seq) -> int:
        return int(tuple(s) in self.ones)

    def to_dict(self) -> dict:
        return {"depth": self.depth, "branching": self.branching,
                "ones": sorted(map(seq_to_str, self.ones), key=lambda t: (len(t), t))}

    @classmethod
    def from_dict(cls, doc: dict) -> MembershipTable:
        return cls(doc["depth"], doc["branching"], frozenset(str_to_seq(s) for s in doc["ones"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> MembershipTable:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class FiniteTree:
    nodes: frozenset
    depth_bound: int
    branching_bound: int

    def __post_init__(self):
        nodes = frozenset(tuple(s) for s in self.nodes)
        _check_bounds(nodes, self.depth_bound, self.branching_bound)
        for s in nodes:
            if s and s[:-1] not in nodes:
                raise InvalidRequest(f"node {seq_to_str(s)!r} has no parent in the tree")
        object.__setattr__(self, "nodes", nodes)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.nodes

    def __len__(self):
        return len(self.nodes)

    def children(self, s: Seq) -> list[Seq]:
        return [s + (n,) for n in range(self.branching_bound) if s + (n,) in self.nodes]

    @cached_property
    def heights(self) -> dict[Seq, int]:
        """Length of the longest downward path below each node."""
        h: dict[Seq, int] = {}
        for s in sorted(self.nodes, key=len, reverse=True):
            kids = self.children(s)
            h[s] = 1 + max(h[k] for k in kids) if kids else 0
        return h

    @property
    def height(self) -> int:
        return self.heights.get((), -1)

    def table(self) -> MembershipTable:
        return MembershipTable(self.depth_bound, self.branching_bound, self.nodes)


@dataclass(frozen=True)
class RepairReport:
    clean: bool
    deleted: tuple[Seq, ...] = ()


def normalize(tbl: MembershipTable) -> tuple[FiniteTree, RepairReport]:
    """Largest prefix-closed part of the 1-set: drop every node with a 0-valued ancestor."""
    keep = set()
    deleted = []
    for s in sorted(tbl.ones, key=lambda t: (len(t), t)):
        if all(s[:k] in tbl.ones for k in range(len(s))):
            keep.add(s)
        else:
            deleted.append(s)
    tree = FiniteTree(frozenset(keep), tbl.depth, tbl.branching)
    return tree, RepairReport(not deleted, tuple(deleted))


def longest_path(tree: FiniteTree) -> Seq:
    """Lexicographically least node among those of maximal length."""
    if not tree.nodes:
        raise InvalidRequest("longest_path of an empty tree")
    top = max(len(s) for s in tree.nodes)
    return min(s for s in tree.nodes if len(s) == top)


def is_ill_at_truncation(tree: FiniteTree) -> bool:
    return bool(tree.nodes) and len(longest_path(tree)) == tree.depth_bound


_PRED = re.compile(r"^\s*(\w[\w-]*)\s*(?:\((.*)\))?\s*$")


def from_predicate(pred: str, depth: int, branching: int) -> MembershipTable:
    """Fixture tables: ``all``, ``single-path(010)``, ``comb(k)``, ``random(seed, density)``.

    ``comb(k)`` is the all-zero spine with, at every spine node, a tooth that
    starts with a 1 and continues with zeros for ``k`` nodes in total.
    """
    m = _PRED.match(pred)
    if not m:
        raise MalformedPredicate(f"cannot parse predicate {pred!r}")
    name, args = m.group(1), m.group(2)
    argv = [a.strip().strip("\"'") for a in args.split(",")] if args else []
    if depth < 0 or branching < 1:
        raise MalformedPredicate("depth must be >= 0 and branching >= 1")

    if name == "all" and not argv:
        ones = set(all_sequences(depth, branching))
    elif name == "single-path" and len(argv) == 1:
        path = str_to_seq(argv[0])
        if len(path) > depth or any(x >= branching for x in path):
            raise MalformedPredicate(f"path {argv[0]!r} does not fit the bounds")
        ones = {path[:k] for k in range(len(path) + 1)}
    elif name == "comb" and len(argv) == 1 and argv[0].isdigit():
        k = int(argv[0])
        if branching < 2 and k > 0:
            raise MalformedPredicate("comb teeth need branching >= 2")
        ones = set()
        for i in range(depth + 1):
            ones.add((0,) * i)
            for j in range(min(k, depth - i)):
                ones.add((0,) * i + (1,) + (0,) * j)
    elif name == "random" and len(argv) == 2:
        try:
            seed, density = int(argv[0]), float(argv[1])
        except ValueError:
            raise MalformedPredicate(f"bad random arguments in {pred!r}") from None
        if not 0.0 <= density <= 1.0:
            raise MalformedPredicate("density must lie in [0, 1]")
        rng = random.Random(seed)
        ones = {s for s in all_sequences(depth, branching) if not s or rng.random() < density}
    else:
        raise MalformedPredicate(f"unknown predicate {pred!r}")
    return MembershipTable(depth, branching, frozenset(ones))
