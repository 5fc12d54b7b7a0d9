"""
Permutation groups on {1..n}: breadth-first enumeration, the point
stabilizer chain G_i (fixing 1..i pointwise), coset representatives of G/G_i
and the extension sets B(rho, i).

Permutations are stored 0-based; text and JSON use 1-based points.
"""

import json
import logging
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import GroupParseError, GroupTooLarge

logger = logging.getLogger(__name__)

DEFAULT_GROUP_CAP = 1_000_000

_CYCLE = re.compile(r"\(([^()]*)\)")


class Perm:
    """A bijection of {0..n-1}; ``images[i]`` is the image of i."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise GroupParseError(f"{[i + 1 for i in images]} is not a permutation")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Perm":
        """Disjoint-cycle notation such as ``(1 2 3)(4 5)``; ``()`` is the identity."""
        stripped = re.sub(r"\s+", " ", text.strip())
        if _CYCLE.sub("", stripped).strip():
            raise GroupParseError(f"malformed cycle notation {text!r}")
        images = list(range(n))
        seen = set()
        for body in _CYCLE.findall(stripped):
            tokens = body.replace(",", " ").split()
            try:
                points = [int(t) - 1 for t in tokens]
            except ValueError as e:
                raise GroupParseError(f"non-integer point in {text!r}") from e
            for a in points:
                if not 0 <= a < n or a in seen:
                    raise GroupParseError(f"bad or repeated point {a + 1} in {text!r}")
                seen.add(a)
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, spec, n: int) -> "Perm":
        """Cycle text or a 1-based image list."""
        if isinstance(spec, str):
            return cls.from_cycles(spec, n)
        try:
            images = [int(v) - 1 for v in spec]
        except (TypeError, ValueError) as e:
            raise GroupParseError(f"cannot read permutation {spec!r}") from e
        if len(images) != n:
            raise GroupParseError(f"image list {spec!r} does not have length {n}")
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        # (self * other)(i) = self(other(i))
        return Perm(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm"):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def act(self, point: Sequence) -> tuple:
        """sigma(x) with sigma(x)_i = x_{sigma(i)}."""
        return tuple(point[j] for j in self.images)

    def cycles(self) -> str:
        seen = set()
        out = []
        for start in range(self.n):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
        return "".join(out) or "()"

    def __repr__(self):
        return f"Perm({self.cycles()})"


class PermGroup:
    """Subgroup of S_n generated by ``generators``; elements enumerated lazily."""

    def __init__(self, n: int, generators: Sequence[Perm] = (), name: Optional[str] = None,
                 cap: int = DEFAULT_GROUP_CAP):
        for g in generators:
            if g.n != n:
                raise GroupParseError(f"generator {g} acts on {g.n} points, expected {n}")
        self.n = n
        self.generators = tuple(generators)
        self.name = name
        self.cap = cap
        self._elements: Optional[Tuple[Perm, ...]] = None

    @classmethod
    def from_descriptor(cls, descriptor, cap: int = DEFAULT_GROUP_CAP) -> "PermGroup":
        """``{"n": 5, "generators": ["(1 2 3 4 5)"]}`` as a dict or JSON text."""
        if isinstance(descriptor, str):
            try:
                descriptor = json.loads(descriptor)
            except json.JSONDecodeError as e:
                raise GroupParseError(f"group descriptor is not JSON: {e}") from e
        try:
            n = int(descriptor["n"])
            gens = [Perm.parse(g, n) for g in descriptor.get("generators", [])]
        except (KeyError, TypeError, ValueError) as e:
            raise GroupParseError(f"invalid group descriptor: {e}") from e
        return cls(n, gens, name=descriptor.get("name"), cap=cap)

    def to_descriptor(self) -> dict:
        out = {"n": self.n, "generators": [g.cycles() for g in self.generators]}
        if self.name:
            out["name"] = self.name
        return out

    @property
    def elements(self) -> Tuple[Perm, ...]:
        if self._elements is None:
            self._elements = self._enumerate()
        return self._elements

    def _enumerate(self) -> Tuple[Perm, ...]:
        identity = Perm.identity(self.n)
        found = {identity}
        queue = deque([identity])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = g * s
                if h not in found:
                    found.add(h)
                    if len(found) > self.cap:
                        raise GroupTooLarge(
                            f"group exceeds the cap of {self.cap} elements", cap=self.cap
                        )
                    queue.append(h)
        logger.debug(f"enumerated group of order {len(found)} on {self.n} points")
        return tuple(sorted(found))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, perm: Perm) -> bool:
        return perm in set(self.elements)

    def is_transitive(self) -> bool:
        return {g(0) for g in self.elements} == set(range(self.n)) if self.n else True

    def conjugate(self, pi: Perm) -> "PermGroup":
        """pi G pi^-1: the same automorphisms written for the labeling before ``pi``."""
        inv = pi.inverse()
        return PermGroup(
            self.n, [pi * g * inv for g in self.generators], name=self.name, cap=self.cap
        )

    def __repr__(self):
        label = self.name or ", ".join(g.cycles() for g in self.generators) or "1"
        return f"PermGroup({label}; n={self.n})"


def enumerate_group(generators: Sequence[Perm], n: Optional[int] = None,
                    cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    if n is None:
        if not generators:
            raise GroupParseError("cannot infer n from an empty generator list")
        n = generators[0].n
    group = PermGroup(n, generators, cap=cap)
    group.elements
    return group


@dataclass(frozen=True)
class StabChain:
    """
    Point stabilizers G_0 >= G_1 >= ... >= G_n of a group. ``prefixes[i]`` maps
    each attainable image prefix (sigma(1), ..., sigma(i)) to the sorted images
    sigma(i+1) that extend it; the left cosets of G_i are exactly these prefixes.
    """

    group: PermGroup
    degrees: Tuple[int, ...]
    prefixes: Tuple[Dict[tuple, Tuple[int, ...]], ...] = field(repr=False)
    representatives: Tuple[Tuple[Perm, ...], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.group.n

    def stabilizer(self, i: int) -> List[Perm]:
        """G_i: elements fixing 1..i."""
        return [g for g in self.group.elements if all(g(j) == j for j in range(i))]

    def coset_representatives(self, i: int) -> Tuple[Perm, ...]:
        """Lex-least element of every left coset rho G_i."""
        return self.representatives[i]

    def extensions(self, prefix: tuple) -> Tuple[int, ...]:
        return self.prefixes[len(prefix)].get(tuple(prefix), ())

    def factor(self, sigma: Perm, i: int) -> Tuple[Perm, Perm]:
        """sigma = rho * tau with rho the chosen representative and tau in G_i."""
        key = sigma.images[:i]
        rho = next(r for r in self.representatives[i] if r.images[:i] == key)
        return rho, rho.inverse() * sigma


def stab_chain(group: PermGroup) -> StabChain:
    n = group.n
    prefixes: List[Dict[tuple, set]] = [dict() for _ in range(n)]
    reps: List[Dict[tuple, Perm]] = [dict() for _ in range(n + 1)]
    for g in group.elements:
        for i in range(n):
            prefixes[i].setdefault(g.images[:i], set()).add(g.images[i])
        for i in range(n + 1):
            key = g.images[:i]
            if key not in reps[i] or g < reps[i][key]:
                reps[i][key] = g
    degrees = tuple(
        len(reps[i + 1]) // len(reps[i]) for i in range(n)
    )
    frozen_prefixes = tuple(
        {k: tuple(sorted(v)) for k, v in level.items()} for level in prefixes
    )
    representatives = tuple(
        tuple(sorted(level.values())) for level in reps
    )
    return StabChain(group, degrees, frozen_prefixes, representatives)


def b_set(rho: Perm, i: int, chain: StabChain, roots: Sequence) -> list:
    """
    {sigma(x)_i : sigma(x)_j = rho(x)_j for j < i} minus rho(x)_i, for 1-based
    ``i``; with pairwise distinct roots this only depends on rho(1..i-1).
    """
    prefix = rho.images[: i - 1]
    own = rho.images[i - 1]
    return [roots[k] for k in chain.extensions(prefix) if k != own]
