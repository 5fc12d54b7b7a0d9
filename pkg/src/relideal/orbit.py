"""
Vanishing ideals of group orbits.

For a point x with pairwise distinct coordinates and a permutation group G
acting by sigma(x)_i = x_{sigma(i)}, the orbit X = {sigma(x)} has a lex
Groebner basis g_1..g_n that is written down directly from Lagrange factors
along the tree of image prefixes (sigma(1), ..., sigma(i)); no elimination is
needed.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .exactring import ModRing, Ring, ring_of
from .multipoly import MultiPoly, unit_monomial
from .permgrp import Perm, PermGroup, StabChain, b_set, stab_chain
from .unipoly import UniPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitConfig:
    point: Tuple
    group: PermGroup
    chain: StabChain
    ring: Ring

    @classmethod
    def build(cls, point: Sequence, group: PermGroup, ring: Optional[Ring] = None,
              chain: Optional[StabChain] = None) -> "OrbitConfig":
        ring = ring or ring_of(point[0])
        point = tuple(ring(c) for c in point)
        if len(point) != group.n:
            raise ValueError(f"point of length {len(point)} for a group on {group.n} points")
        if isinstance(ring, ModRing):
            distinct = len({c.residue % ring.p for c in point}) == len(point)
        else:
            distinct = len(set(point)) == len(point)
        if not distinct:
            raise ValueError("orbit point coordinates must be pairwise distinct")
        return cls(point, group, chain or stab_chain(group), ring)

    @property
    def n(self) -> int:
        return len(self.point)

    def orbit(self) -> List[Tuple]:
        return [g.act(self.point) for g in self.group.elements]


def _lagrange_factor(cfg: OrbitConfig, others, own) -> UniPoly:
    # prod_{y in others} (T - y) / (own - y)
    ring = cfg.ring
    num = UniPoly.from_roots(others, ring)
    den = ring.one
    for y in others:
        den = den * (own - y)
    return num * ring.inverse(den)


def separator(rho: Perm, cfg: OrbitConfig) -> MultiPoly:
    """Polynomial on the order ideal that is 1 at rho(x) and 0 elsewhere on the orbit."""
    n = cfg.n
    h = MultiPoly.one(cfg.ring, n)
    for i in range(1, n + 1):
        others = b_set(rho, i, cfg.chain, cfg.point)
        if others:
            own = cfg.point[rho(i - 1)]
            factor = _lagrange_factor(cfg, others, own)
            h = h * MultiPoly.from_univariate(factor, i, n)
    return h


def _weighted_sum(block, d: int, point, ring: Ring, nvars: int) -> MultiPoly:
    acc = MultiPoly.zero(ring, nvars)
    for prefix, product in block:
        acc = acc + product.scale(point[prefix[-1]] ** d)
    return acc


def _parallel_sum(items, d, point, ring, nvars, threads: int) -> MultiPoly:
    if threads <= 1 or len(items) < 2 * threads:
        return _weighted_sum(items, d, point, ring, nvars)
    size = -(-len(items) // threads)
    blocks = [items[k:k + size] for k in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(pool.map(lambda b: _weighted_sum(b, d, point, ring, nvars), blocks))
    total = MultiPoly.zero(ring, nvars)
    for part in partials:
        total = total + part
    return total


def orbit_ideal_basis(cfg: OrbitConfig, upto: Optional[int] = None,
                      collapse_cosets: bool = True, threads: int = 1) -> List[MultiPoly]:
    """
    g_1..g_k (k = ``upto`` or n) with
    g_i = T_i^{d_i} - sum over cosets rho G_i of rho(x)_i^{d_i} * prod_{j<=i} L_{rho,j}(T_j).
    With ``collapse_cosets=False`` the sum runs over all of G with full separators.
    """
    n, ring, chain, point = cfg.n, cfg.ring, cfg.chain, cfg.point
    upto = n if upto is None else upto
    depth = upto if collapse_cosets else n
    degrees = chain.degrees

    levels: List[List[Tuple[tuple, MultiPoly]]] = [[((), MultiPoly.one(ring, n))]]
    for i in range(1, depth + 1):
        t0 = time.perf_counter()
        nodes = []
        for prefix, product in levels[-1]:
            ext = chain.extensions(prefix)
            for k in ext:
                if len(ext) == 1:
                    nodes.append((prefix + (k,), product))
                    continue
                others = [point[j] for j in ext if j != k]
                factor = MultiPoly.from_univariate(_lagrange_factor(cfg, others, point[k]), i, n)
                nodes.append((prefix + (k,), product * factor))
        levels.append(nodes)
        logger.debug(f"level {i}: {len(nodes)} cosets in {time.perf_counter() - t0:.3f}s")

    basis = []
    for i in range(1, upto + 1):
        t0 = time.perf_counter()
        d = degrees[i - 1]
        items = levels[i] if collapse_cosets else levels[n]
        if collapse_cosets:
            weighted = items
        else:
            # Full separators; the weight still reads coordinate i of sigma(x).
            weighted = [(prefix[:i], product) for prefix, product in items]
        lead = MultiPoly._raw(ring, n, {unit_monomial(n, i - 1, d): ring.one})
        g = lead - _parallel_sum(weighted, d, point, ring, n, threads)
        basis.append(g)
        logger.info(f"g{i} interpolated in {time.perf_counter() - t0:.3f}s")
    return basis
