"""Stiefel-Whitney numbers, full SW profiles, and the bordism decisions.

Two closed manifolds of the same dimension are unoriented-bordant exactly
when all of their Stiefel-Whitney numbers agree, and a manifold bounds when
they all vanish.  A profile is the vector of SW numbers indexed by the
partitions of the dimension in descending lexicographic order.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .gf2ring import Gf2Poly, mul
from .manifolds import (
    DescriptorError,
    ManifoldExpr,
    cohomology_model,
    dimension,
    evaluate_pairing,
    parse,
    sw_graded,
)

log = logging.getLogger(__name__)

Partition = tuple[int, ...]


@lru_cache(maxsize=None)
def partition_count(n: int, largest: int | None = None) -> int:
    """Number of partitions of ``n`` with every part at most ``largest``."""
    if largest is None or largest > n:
        largest = n
    if n == 0:
        return 1
    return sum(partition_count(n - k, k) for k in range(1, largest + 1))


def _partitions(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=64)
def partitions(d: int) -> tuple[Partition, ...]:
    """All partitions of ``d`` as non-increasing tuples, descending lexicographic."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return tuple(_partitions(d, d))


def sw_number(M: ManifoldExpr, omega: Partition) -> int:
    """<w_{i_1} ... w_{i_k}, [M]> for the partition ``omega``."""
    omega = tuple(omega)
    if sum(omega) != dimension(M):
        raise ValueError(f"partition {omega} has weight {sum(omega)}, but dim {M} = {dimension(M)}")
    prod = cohomology_model(M).ring.one()
    for i in omega:
        prod = mul(prod, sw_graded(M, i))
        if not prod:
            return 0
    return evaluate_pairing(M, prod)


@dataclass(frozen=True)
class SwProfile:
    dim: int
    bits: str

    def __post_init__(self):
        if len(self.bits) != partition_count(self.dim) or set(self.bits) - {"0", "1"}:
            raise ValueError(f"bad profile bits for dim {self.dim}: {self.bits!r}")

    @property
    def partitions(self) -> tuple[Partition, ...]:
        return partitions(self.dim)

    def is_zero(self) -> bool:
        return "1" not in self.bits

    def __getitem__(self, omega: Partition) -> int:
        return int(self.bits[self.partitions.index(tuple(omega))])

    def nonzero(self) -> list[Partition]:
        return [w for w, b in zip(self.partitions, self.bits) if b == "1"]

    def mismatches(self, other: SwProfile) -> list[Partition]:
        if self.dim != other.dim:
            raise ValueError("profiles of different dimensions")
        return [w for w, x, y in zip(self.partitions, self.bits, other.bits) if x != y]


def _compute_profile(M: ManifoldExpr) -> SwProfile:
    # Walk the partition tree in canonical order so each prefix product is
    # computed once; a vanishing prefix zeroes its whole subtree.
    d = dimension(M)
    ring = cohomology_model(M).ring
    classes = [None] + [sw_graded(M, i) for i in range(1, d + 1)]
    bits: list[str] = []

    def walk(prod: Gf2Poly, remaining: int, largest: int):
        if remaining == 0:
            bits.append("1" if evaluate_pairing(M, prod) else "0")
            return
        for k in range(min(remaining, largest), 0, -1):
            nxt = mul(prod, classes[k])
            if nxt:
                walk(nxt, remaining - k, k)
            else:
                bits.append("0" * partition_count(remaining - k, k))

    walk(ring.one(), d, d)
    return SwProfile(d, "".join(bits))


_memo: dict[ManifoldExpr, SwProfile] = {}
_memo_lock = threading.Lock()


def sw_profile(M: ManifoldExpr) -> SwProfile:
    prof = _memo.get(M)
    if prof is None:
        prof = _compute_profile(M)
        with _memo_lock:
            _memo.setdefault(M, prof)
    return prof


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def bounds(M: ManifoldExpr) -> bool:
    return sw_profile(M).is_zero()


def bordant(M: ManifoldExpr, N: ManifoldExpr) -> bool:
    """Profile equality; manifolds of different dimensions are never bordant here."""
    if dimension(M) != dimension(N):
        return False
    return sw_profile(M) == sw_profile(N)


def mismatched_partitions(M: ManifoldExpr, N: ManifoldExpr) -> list[Partition]:
    if dimension(M) != dimension(N):
        return []
    return sw_profile(M).mismatches(sw_profile(N))


def profile_to_json(M: ManifoldExpr, prof: SwProfile | None = None) -> dict:
    prof = prof or sw_profile(M)
    return {
        "manifold": str(M),
        "dim": prof.dim,
        "partitions": [list(w) for w in prof.partitions],
        "bits": prof.bits,
    }


class ProfileCache:
    """Append-only JSON-lines file of computed profiles.

    Entries are checked on load (descriptor re-parses, dimension agrees,
    bit count matches); anything malformed is skipped with a warning.
    """

    def __init__(self, path: str | os.PathLike):
        self.path = os.fspath(path)
        self.known: set[str] = set()

    def load(self) -> int:
        if not os.path.exists(self.path):
            return 0
        loaded = 0
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    M = parse(rec["manifold"])
                    prof = SwProfile(int(rec["dim"]), rec["bits"])
                    if prof.dim != dimension(M):
                        raise ValueError("dimension does not match descriptor")
                except (ValueError, KeyError, TypeError, DescriptorError) as exc:
                    log.warning("%s:%d: ignoring corrupt cache entry (%s)", self.path, lineno, exc)
                    continue
                with _memo_lock:
                    _memo.setdefault(M, prof)
                self.known.add(str(M))
                loaded += 1
        return loaded

    def save(self) -> int:
        """Append every memoized profile not already in the file."""
        with _memo_lock:
            items = sorted(((str(M), p) for M, p in _memo.items()), key=lambda t: t[0])
        new = [(name, p) for name, p in items if name not in self.known]
        if not new:
            return 0
        with open(self.path, "a", encoding="utf-8") as fh:
            for name, p in new:
                fh.write(json.dumps({"manifold": name, "dim": p.dim, "bits": p.bits}) + "\n")
                self.known.add(name)
        return len(new)
