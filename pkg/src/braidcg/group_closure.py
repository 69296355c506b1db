"""Enumeration of finite matrix groups over Z/mZ.

Elements are held as a numpy array of shape (N, d, d) sorted by canonical key,
so two closures of the same generators always produce identical arrays.  The
breadth-first search multiplies whole frontiers at once and deduplicates on
byte keys.
"""

from __future__ import annotations

import itertools
import json
import hashlib
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .matrix import ModularMatrix, residue_width

log = logging.getLogger(__name__)

DEFAULT_CAP = 10_000_000
CACHE_VERSION = 1
PROBE_MAX_Q = 6


class GroupTooLarge(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"closure exceeded cap of {cap} elements")
        self.cap = cap


class ProbeNotExhaustive(RuntimeError):
    pass


def _dtype(m: int) -> np.dtype:
    return np.dtype({1: ">u1", 2: ">u2", 4: ">u4"}[residue_width(m)])


def _keys(arr: np.ndarray, m: int) -> list[bytes]:
    """Residue bytes (the variable part of ``ModularMatrix.key``) per element."""
    n = arr.shape[0]
    if n == 0:
        return []
    flat = np.ascontiguousarray(arr.reshape(n, -1).astype(_dtype(m)))
    return flat.view(np.dtype((np.void, flat.shape[1] * flat.itemsize))).ravel().tolist()


def _to_array(mats: Sequence[ModularMatrix], d: int) -> np.ndarray:
    if not mats:
        return np.zeros((0, d, d), dtype=np.int64)
    return np.array([m.rows for m in mats], dtype=np.int64).reshape(len(mats), d, d)


@dataclass(frozen=True, eq=False)
class FiniteMatrixGroup:
    modulus: int
    dim: int
    elements: np.ndarray = field(repr=False)
    generators: tuple[ModularMatrix, ...] = ()

    def __post_init__(self) -> None:
        self.elements.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def __len__(self) -> int:
        return self.order

    @cached_property
    def index(self) -> dict[bytes, int]:
        return {k: i for i, k in enumerate(_keys(self.elements, self.modulus))}

    def matrix(self, i: int) -> ModularMatrix:
        return ModularMatrix(self.modulus, self.elements[i].tolist())

    def __iter__(self):
        for i in range(self.order):
            yield self.matrix(i)

    def identity(self) -> ModularMatrix:
        return ModularMatrix.identity(self.dim, self.modulus)

    def index_of(self, M: ModularMatrix) -> int | None:
        return self.index.get(_keys(_to_array([M], self.dim), self.modulus)[0])

    def element_keys(self) -> list[bytes]:
        return _keys(self.elements, self.modulus)


def _inverse_array(g: ModularMatrix) -> np.ndarray:
    return np.array(g.inverse().rows, dtype=np.int64)


def _validate(gens: Sequence[ModularMatrix], modulus: int | None, dim: int | None):
    if gens:
        modulus = gens[0].modulus if modulus is None else modulus
        dim = gens[0].dim if dim is None else dim
    if modulus is None or dim is None:
        raise ValueError("modulus and dim required for an empty generator list")
    for g in gens:
        if g.modulus != modulus or g.dim != dim:
            raise ValueError("generators must share modulus and dimension")
        if not g.is_invertible():
            raise ValueError(f"generator is not invertible mod {modulus}:\n{g}")
    return modulus, dim


def close(
    gens: Sequence[ModularMatrix],
    cap: int = DEFAULT_CAP,
    *,
    modulus: int | None = None,
    dim: int | None = None,
    cache_dir: str | Path | None = None,
) -> FiniteMatrixGroup:
    """Subgroup of GL(d, Z/mZ) generated by ``gens``.

    Raises ``GroupTooLarge`` once more than ``cap`` elements are found.
    ``modulus`` and ``dim`` are only needed when ``gens`` is empty.
    """
    gens = list(gens)
    m, d = _validate(gens, modulus, dim)
    if cache_dir is not None:
        cached = _cache_load(Path(cache_dir), m, d, gens)
        if cached is not None:
            if cached.order > cap:
                raise GroupTooLarge(cap)
            return cached

    steps = [np.array(g.rows, dtype=np.int64) for g in gens]
    steps += [_inverse_array(g) for g in gens]
    ident = np.eye(d, dtype=np.int64)[None]
    seen = set(_keys(ident, m))
    chunks = [ident]
    frontier = ident
    while frontier.shape[0] and steps:
        new_chunks = []
        for s in steps:
            prod = np.matmul(frontier, s) % m
            keys = _keys(prod, m)
            fresh = []
            for i, k in enumerate(keys):
                if k not in seen:
                    seen.add(k)
                    fresh.append(i)
            if fresh:
                new_chunks.append(prod[fresh])
            if len(seen) > cap:
                raise GroupTooLarge(cap)
        frontier = np.concatenate(new_chunks) if new_chunks else frontier[:0]
        chunks.append(frontier)
    elements = np.concatenate(chunks)
    order = np.argsort(np.array(_keys(elements, m), dtype=object), kind="stable")
    group = FiniteMatrixGroup(m, d, np.ascontiguousarray(elements[order]), tuple(gens))
    if cache_dir is not None:
        _cache_store(Path(cache_dir), group)
    return group


def contains(G: FiniteMatrixGroup, M: ModularMatrix) -> bool:
    if M.modulus != G.modulus or M.dim != G.dim:
        raise ValueError("modulus or dimension mismatch")
    return G.index_of(M) is not None


# -- structure invariants ---------------------------------------------------


@dataclass(frozen=True)
class StructureInvariants:
    order: int
    abelian: bool
    exponent: int
    order_histogram: dict[int, int]
    center_order: int
    commutator_order: int

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "exponent": self.exponent,
            "order_histogram": {str(k): v for k, v in sorted(self.order_histogram.items())},
            "center_order": self.center_order,
            "commutator_order": self.commutator_order,
        }


def element_orders(G: FiniteMatrixGroup) -> np.ndarray:
    E = G.elements
    m = G.modulus
    ident = np.eye(G.dim, dtype=np.int64)
    orders = np.zeros(G.order, dtype=np.int64)
    cur = E.copy()
    pending = np.arange(G.order)
    k = 1
    while pending.size:
        done = np.all(cur == ident, axis=(1, 2))
        orders[pending[done]] = k
        pending = pending[~done]
        cur = np.matmul(cur[~done], E[pending]) % m
        k += 1
        if k > G.order + 1:
            raise RuntimeError("element order exceeds group order; set is not a group")
    return orders


def _generating_set(G: FiniteMatrixGroup) -> list[np.ndarray]:
    if G.generators:
        return [np.array(g.rows, dtype=np.int64) for g in G.generators]
    return [G.elements[i] for i in range(G.order)]


def center_order(G: FiniteMatrixGroup) -> int:
    E = G.elements
    mask = np.ones(G.order, dtype=bool)
    for s in _generating_set(G):
        mask &= np.all((E @ s) % G.modulus == (s @ E) % G.modulus, axis=(1, 2))
    return int(mask.sum())


def commutator_subgroup(G: FiniteMatrixGroup, cap: int = DEFAULT_CAP) -> FiniteMatrixGroup:
    """Normal closure of the generator commutators."""
    m, d = G.modulus, G.dim
    gens = list(G.generators) or list(G)
    inv = [g.inverse() for g in gens]
    comms: dict[bytes, ModularMatrix] = {}
    for (a, ai), (b, bi) in itertools.combinations(zip(gens, inv), 2):
        c = ai @ bi @ a @ b
        if not c.is_identity():
            comms.setdefault(c.key(), c)
    N = close(list(comms.values()), cap, modulus=m, dim=d)
    while True:
        extra = []
        for g, gi in zip(gens, inv):
            for c in list(comms.values()):
                x = gi @ c @ g
                if not contains(N, x) and x.key() not in comms:
                    extra.append(x)
        if not extra:
            return N
        for x in extra:
            comms.setdefault(x.key(), x)
        N = close(list(comms.values()), cap, modulus=m, dim=d)


def structure_invariants(G: FiniteMatrixGroup) -> StructureInvariants:
    orders = element_orders(G)
    hist = Counter(int(o) for o in orders)
    exponent = math.lcm(*hist) if hist else 1
    comm = commutator_subgroup(G).order
    return StructureInvariants(
        order=G.order,
        abelian=comm == 1,
        exponent=exponent,
        order_histogram=dict(sorted(hist.items())),
        center_order=center_order(G),
        commutator_order=comm,
    )


# -- complements and isomorphisms ------------------------------------------


def _is_subset(K: FiniteMatrixGroup, G: FiniteMatrixGroup) -> bool:
    return all(k in G.index for k in K.element_keys())


def complement_search(
    G: FiniteMatrixGroup, K: FiniteMatrixGroup, q: int
) -> FiniteMatrixGroup | None:
    """Subgroup H of order q with H meet K trivial, searched over <a, b> for a, b in G.

    A found H is always a genuine complement.  A negative answer is only
    conclusive for q <= 6, where every candidate is two-generated; for larger
    q it raises ``ProbeNotExhaustive`` instead of reporting none.
    """
    if (K.modulus, K.dim) != (G.modulus, G.dim):
        raise ValueError("modulus or dimension mismatch")
    if G.order != q * K.order:
        raise ValueError(f"|G| = {G.order} is not q*|K| = {q}*{K.order}")
    if not _is_subset(K, G):
        raise ValueError("K is not contained in G")
    m, d = G.modulus, G.dim
    if q == 1:
        return close([], modulus=m, dim=d)
    orders = element_orders(G)
    candidates = [i for i in range(G.order) if q % int(orders[i]) == 0]
    seen: set[tuple[bytes, ...]] = set()
    K_keys = set(K.element_keys())
    for a, b in itertools.combinations_with_replacement(candidates, 2):
        try:
            H = close([G.matrix(a), G.matrix(b)], cap=q)
        except GroupTooLarge:
            continue
        if H.order != q:
            continue
        keys = tuple(H.element_keys())
        if keys in seen:
            continue
        seen.add(keys)
        meet = [k for k in keys if k in K_keys]
        if len(meet) == 1:
            log.debug("complement found, generated by elements %d, %d", a, b)
            return H
    if q > PROBE_MAX_Q:
        raise ProbeNotExhaustive(
            f"pair-generated search is not exhaustive for q={q} > {PROBE_MAX_Q}"
        )
    return None


def _words_from_identity(G: FiniteMatrixGroup, gens: Sequence[ModularMatrix]):
    """BFS spanning tree of G over ``gens``: (element index, parent index, generator)."""
    start = G.index_of(G.identity())
    tree = {start: None}
    order = [start]
    queue = [start]
    while queue:
        nxt = []
        for i in queue:
            x = G.matrix(i)
            for gi, g in enumerate(gens):
                j = G.index_of(x @ g)
                if j not in tree:
                    tree[j] = (i, gi)
                    order.append(j)
                    nxt.append(j)
        queue = nxt
    return tree, order


def find_isomorphism(
    G1: FiniteMatrixGroup, G2: FiniteMatrixGroup, limit: int = 100
) -> dict[int, int] | None:
    """An explicit isomorphism G1 -> G2 as an index map, or None.

    Backtracks over images of G1's generators; exhaustive, so gated to
    groups with at most ``limit`` elements.
    """
    if G1.order != G2.order:
        return None
    if G1.order > limit:
        raise ValueError(f"exact isomorphism search gated to |G| <= {limit}")
    gens = list(G1.generators)
    tree, bfs = _words_from_identity(G1, gens)
    if len(tree) != G1.order:
        raise ValueError("G1 generators do not generate G1")
    o1 = element_orders(G1)
    o2 = element_orders(G2)
    gen_orders = [int(o1[G1.index_of(g)]) for g in gens]
    pools = [[j for j in range(G2.order) if o2[j] == go] for go in gen_orders]
    ident2 = G2.index_of(G2.identity())
    for images in itertools.product(*pools):
        img = [G2.matrix(j) for j in images]
        phi = {bfs[0]: ident2}
        mats = {bfs[0]: G2.identity()}
        for i in bfs[1:]:
            parent, gi = tree[i]
            mats[i] = mats[parent] @ img[gi]
            phi[i] = G2.index_of(mats[i])
        if len(set(phi.values())) != G1.order:
            continue
        ok = True
        for i in range(G1.order):
            x = G1.matrix(i)
            for gi, g in enumerate(gens):
                j = G1.index_of(x @ g)
                if G2.index_of(mats[i] @ img[gi]) != phi[j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return phi
    return None


# -- disk cache ---------------------------------------------------------------


def _cache_path(cache_dir: Path, m: int, d: int, gens: Iterable[ModularMatrix]) -> Path:
    h = hashlib.sha256()
    h.update(f"{m}:{d}".encode())
    for g in gens:
        h.update(g.key())
    return cache_dir / f"closure-m{m}-d{d}-{h.hexdigest()[:24]}.bin"


def _cache_store(cache_dir: Path, G: FiniteMatrixGroup) -> None:
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = _cache_path(cache_dir, G.modulus, G.dim, G.generators)
    header = {
        "version": CACHE_VERSION,
        "m": G.modulus,
        "d": G.dim,
        "count": G.order,
        "width": residue_width(G.modulus),
        "generators": [g.key().hex() for g in G.generators],
    }
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode() + b"\n")
        fh.write(b"".join(G.element_keys()))
    tmp.replace(path)


def _cache_load(
    cache_dir: Path, m: int, d: int, gens: Sequence[ModularMatrix]
) -> FiniteMatrixGroup | None:
    path = _cache_path(cache_dir, m, d, gens)
    if not path.exists():
        return None
    with open(path, "rb") as fh:
        header = json.loads(fh.readline())
        body = fh.read()
    if (
        header.get("version") != CACHE_VERSION
        or header["m"] != m
        or header["d"] != d
        or header["generators"] != [g.key().hex() for g in gens]
    ):
        log.warning("ignoring stale cache file %s", path)
        return None
    arr = np.frombuffer(body, dtype=_dtype(m)).astype(np.int64)
    if arr.size != header["count"] * d * d:
        log.warning("ignoring truncated cache file %s", path)
        return None
    return FiniteMatrixGroup(m, d, arr.reshape(-1, d, d).copy(), tuple(gens))
