"""Built-in small groups, addressable by name."""
from __future__ import annotations

import itertools
from functools import lru_cache

from .groups import FiniteGroup, build_group

CATALOG_NAMES = ("Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z6", "S3", "D4", "Q8", "D6", "Z8", "Z2xZ4")


def cyclic(n: int, name: str = "") -> FiniteGroup:
    return build_group([[(i + j) % n for j in range(n)] for i in range(n)], name or f"Z{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str = "") -> FiniteGroup:
    """(a, b) is labelled a·|B| + b."""
    m = B.order
    pairs = [(a, b) for a in A.elements for b in B.elements]
    table = [[A.mul(a1, a2) * m + B.mul(b1, b2) for (a2, b2) in pairs] for (a1, b1) in pairs]
    return build_group(table, name or f"{A.name}x{B.name}")


def dihedral(n: int, name: str = "") -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; r^k s^e is labelled k + n·e."""
    def mul(x, y):
        a, e = x % n, x // n
        b, f = y % n, y // n
        k = (a + (b if e == 0 else -b)) % n
        return k + n * ((e + f) % 2)
    size = 2 * n
    return build_group([[mul(x, y) for y in range(size)] for x in range(size)], name or f"D{n}")


def symmetric(k: int, name: str = "") -> FiniteGroup:
    """Permutations in lexicographic order; product is composition p∘q."""
    perms = list(itertools.permutations(range(k)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return build_group(table, name or f"S{k}")


def quaternion(name: str = "Q8") -> FiniteGroup:
    # units 1,i,j,k -> 0..3; element u with sign s is labelled 2u + s
    unit_mul = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }

    def mul(x, y):
        u, s = divmod(x, 2)
        v, t = divmod(y, 2)
        w, sign = unit_mul[(u, v)]
        neg = (s + t + (sign < 0)) % 2
        return 2 * w + neg
    return build_group([[mul(x, y) for y in range(8)] for x in range(8)], name)


@lru_cache(maxsize=None)
def get(name: str) -> FiniteGroup:
    builders = {
        "Z1": lambda: cyclic(1),
        "Z2": lambda: cyclic(2),
        "Z3": lambda: cyclic(3),
        "Z4": lambda: cyclic(4),
        "Z6": lambda: cyclic(6),
        "Z8": lambda: cyclic(8),
        "Z2xZ2": lambda: direct_product(cyclic(2), cyclic(2)),
        "Z2xZ4": lambda: direct_product(cyclic(2), cyclic(4)),
        "S3": lambda: symmetric(3),
        "D4": lambda: dihedral(4),
        "D6": lambda: dihedral(6),
        "Q8": lambda: quaternion(),
    }
    if name not in builders:
        raise KeyError(f"unknown catalog group {name!r}; known: {', '.join(CATALOG_NAMES)}")
    return builders[name]()
