import logging
from functools import lru_cache

from algebra import Algebra, AlgebraError, direct_sum, make_algebra

# Table order; names are the ASCII-safe public identifiers.
CATALOG_NAMES = (
    "A_{0,1}",
    "A_{0,1}^2",
    "A_{1,2}",
    "A_{0,1}^3",
    "A_{1,2}+A_{0,1}",
    "A_{1,3}",
    "A_{0,1}^4",
    "A_{1,2}+A_{0,1}^2",
    "A_{1,3}+A_{0,1}",
    "A_{1,2}+A_{1,2}",
    "A_{1,4}",
    "A_{2,4}",
)

ABELIAN_NAMES = ("A_{0,1}", "A_{0,1}^2", "A_{0,1}^3", "A_{0,1}^4")

# Hard-coded products {(i, j): {k: c}}; commutative pairs are listed both ways.
_PRODUCTS = {
    "A_{0,1}": (1, {}),
    "A_{0,1}^2": (2, {}),
    "A_{1,2}": (2, {(1, 1): {2: 1}}),
    "A_{0,1}^3": (3, {}),
    "A_{1,2}+A_{0,1}": (3, {(1, 1): {2: 1}}),
    "A_{1,3}": (3, {(1, 1): {2: 1}, (3, 3): {2: 1}}),
    "A_{0,1}^4": (4, {}),
    "A_{1,2}+A_{0,1}^2": (4, {(1, 1): {2: 1}}),
    "A_{1,3}+A_{0,1}": (4, {(1, 1): {2: 1}, (3, 3): {2: 1}}),
    "A_{1,2}+A_{1,2}": (4, {(1, 1): {2: 1}, (3, 3): {4: 1}}),
    "A_{1,4}": (4, {(1, 1): {2: 1}, (1, 3): {4: 1}, (3, 1): {4: 1}}),
    "A_{2,4}": (4, {(1, 1): {2: 1}, (3, 4): {2: 1}, (4, 3): {2: 1}}),
}


def _hard_coded(name: str) -> Algebra:
    dim, products = _PRODUCTS[name]
    return make_algebra(name, dim, products)


def _composite(name: str) -> Algebra | None:
    """Rebuild a composite entry from its summands, or None for indecomposable entries."""
    a01 = _hard_coded("A_{0,1}")
    a12 = _hard_coded("A_{1,2}")
    a13 = _hard_coded("A_{1,3}")
    recipes = {
        "A_{0,1}^2": lambda: direct_sum(a01, a01),
        "A_{0,1}^3": lambda: direct_sum(direct_sum(a01, a01), a01),
        "A_{0,1}^4": lambda: direct_sum(direct_sum(direct_sum(a01, a01), a01), a01),
        "A_{1,2}+A_{0,1}": lambda: direct_sum(a12, a01),
        "A_{1,2}+A_{0,1}^2": lambda: direct_sum(direct_sum(a12, a01), a01),
        "A_{1,3}+A_{0,1}": lambda: direct_sum(a13, a01),
        "A_{1,2}+A_{1,2}": lambda: direct_sum(a12, a12),
    }
    recipe = recipes.get(name)
    return Algebra(name, recipe().tensor) if recipe else None


@lru_cache(maxsize=1)
def catalog() -> tuple[Algebra, ...]:
    """
    All Mock-Lie algebras of dimension at most 4 over the rationals, in table order.

    Composite entries are rebuilt with direct_sum and must match their hard-coded tensors.
    """
    entries = []
    for name in CATALOG_NAMES:
        entry = _hard_coded(name)
        rebuilt = _composite(name)
        if rebuilt is not None and rebuilt.tensor != entry.tensor:
            raise AlgebraError(f"direct-sum construction of {name} disagrees with its table entry")
        entries.append(entry)
    logging.debug(f"Catalog built with {len(entries)} entries")
    return tuple(entries)


def catalog_entry(name: str) -> Algebra:
    for entry in catalog():
        if entry.name == name:
            return entry
    raise AlgebraError(f"unknown catalog entry '{name}'. Known entries: {', '.join(CATALOG_NAMES)}")


def abelian_names() -> tuple[str, ...]:
    return ABELIAN_NAMES


def non_abelian_names() -> tuple[str, ...]:
    return tuple(name for name in CATALOG_NAMES if name not in ABELIAN_NAMES)
