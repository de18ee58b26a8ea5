import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Mapping, Sequence

from exact_arith import FieldDescriptor, FieldMismatchError, Scalar, reinterpret
from linalg import ExactMatrix, Vector, inverse, kernel_basis, rank
from structs import AlgebraInvariants, AxiomReport


class AlgebraError(ValueError):
    """Raised for malformed structure tensors, bad indices and unknown catalog names."""


@dataclass(frozen=True)
class StructureTensor:
    """
    Structure constants c_{ij}^k of e_i . e_j = sum_k c_{ij}^k e_k.

    Indices are 1-based. Only nonzero coefficients are stored; absent keys mean zero.
    """
    dim: int
    coeffs: Mapping[tuple[int, int, int], Scalar]
    field: FieldDescriptor
    _by_pair: dict = dataclass_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.dim < 0:
            raise AlgebraError(f"negative dimension {self.dim}")
        cleaned = {}
        for key, value in self.coeffs.items():
            if len(key) != 3 or not all(1 <= idx <= self.dim for idx in key):
                raise AlgebraError(f"structure constant index {key} outside [1, {self.dim}]")
            value = self.field.scalar(value)
            if value.value != 0:
                cleaned[tuple(key)] = value
        cleaned = dict(sorted(cleaned.items()))
        by_pair: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
        for (i, j, k), c in cleaned.items():
            by_pair.setdefault((i, j), []).append((k, c))
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "_by_pair", by_pair)

    def __hash__(self):
        return hash((self.dim, self.field, tuple(self.coeffs.items())))

    def coefficient(self, i: int, j: int, k: int) -> Scalar:
        return self.coeffs.get((i, j, k), self.field.zero())

    def pair_terms(self, i: int, j: int) -> list[tuple[int, Scalar]]:
        """Nonzero (k, c_{ij}^k) terms of e_i . e_j."""
        return self._by_pair.get((i, j), [])

    def pairs(self) -> list[tuple[int, int]]:
        return list(self._by_pair)


@dataclass(frozen=True)
class Algebra:
    name: str
    tensor: StructureTensor

    def __post_init__(self):
        if not self.name:
            raise AlgebraError("algebra name must be nonempty")

    @property
    def dim(self) -> int:
        return self.tensor.dim

    @property
    def field(self) -> FieldDescriptor:
        return self.tensor.field

    def is_abelian(self) -> bool:
        return not self.tensor.coeffs


def make_algebra(name: str, dim: int, products: Mapping[tuple[int, int], Mapping[int, object]],
                 field: FieldDescriptor | None = None) -> Algebra:
    """Build an algebra from {(i, j): {k: coefficient}} with 1-based indices."""
    field = field or FieldDescriptor.rationals()
    coeffs = {(i, j, k): field.scalar(c) for (i, j), terms in products.items() for k, c in terms.items()}
    return Algebra(name, StructureTensor(dim, coeffs, field))


def zero_vector(a: Algebra) -> Vector:
    return (a.field.zero(),) * a.dim


def basis_vector(a: Algebra, i: int) -> Vector:
    _check_index(a, i)
    zero, one = a.field.zero(), a.field.one()
    return tuple(one if k == i else zero for k in range(1, a.dim + 1))


def _check_index(a: Algebra, *indices: int):
    for idx in indices:
        if not 1 <= idx <= a.dim:
            raise AlgebraError(f"basis index {idx} outside [1, {a.dim}] for {a.name}")


def _check_vector(a: Algebra, x: Sequence[Scalar]):
    if len(x) != a.dim:
        raise AlgebraError(f"vector of length {len(x)} does not match dim {a.dim} of {a.name}")
    for s in x:
        if s.field != a.field:
            raise FieldMismatchError(f"coefficient {s} is not in {a.field}")


def multiply(a: Algebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    """Bilinear extension of the structure tensor: sum_{i,j} x_i y_j c_{ij}^k."""
    _check_vector(a, x)
    _check_vector(a, y)
    out = list(zero_vector(a))
    for (i, j, k), c in a.tensor.coeffs.items():
        xi, yj = x[i - 1], y[j - 1]
        if xi.value != 0 and yj.value != 0:
            out[k - 1] = out[k - 1] + xi * yj * c
    return tuple(out)


def jacobiator(a: Algebra, i: int, j: int, k: int) -> Vector:
    """[[e_i, e_j], e_k] + [[e_k, e_i], e_j] + [[e_j, e_k], e_i]"""
    _check_index(a, i, j, k)
    ei, ej, ek = basis_vector(a, i), basis_vector(a, j), basis_vector(a, k)
    terms = (
        multiply(a, multiply(a, ei, ej), ek),
        multiply(a, multiply(a, ek, ei), ej),
        multiply(a, multiply(a, ej, ek), ei),
    )
    return tuple(p + q + r for p, q, r in zip(*terms))


def check_axioms(a: Algebra) -> AxiomReport:
    """
    Check commutativity and the Jacobi identity on basis elements.

    Witnesses are the lexicographically first failing index tuples:
    (i, j, k) with c_{ij}^k != c_{ji}^k, and (i, j, k, l) where l is the first
    nonzero component of jacobiator(i, j, k).
    """
    n = a.dim
    commutative_witness = None
    for i, j, k in product(range(1, n + 1), repeat=3):
        if a.tensor.coefficient(i, j, k) != a.tensor.coefficient(j, i, k):
            commutative_witness = (i, j, k)
            break

    jacobi_witness = None
    for i, j, k in product(range(1, n + 1), repeat=3):
        defect = jacobiator(a, i, j, k)
        nonzero = next((l for l, v in enumerate(defect, start=1) if v.value != 0), None)
        if nonzero is not None:
            jacobi_witness = (i, j, k, nonzero)
            break

    report = AxiomReport(
        commutative=commutative_witness is None,
        jacobi=jacobi_witness is None,
        commutative_witness=commutative_witness,
        jacobi_witness=jacobi_witness,
    )
    if not report.mock_lie:
        logging.info(f"{a.name} is not Mock-Lie: commutative witness {commutative_witness}, "
                     f"jacobi witness {jacobi_witness}")
    return report


def direct_sum(a: Algebra, b: Algebra, name: str | None = None) -> Algebra:
    """A on indices 1..dim(a), B shifted by dim(a); cross products vanish."""
    if a.field != b.field:
        raise FieldMismatchError(f"cannot add {a.field} and {b.field} algebras")
    shift = a.dim
    coeffs = dict(a.tensor.coeffs)
    for (i, j, k), c in b.tensor.coeffs.items():
        coeffs[(i + shift, j + shift, k + shift)] = c
    return Algebra(name or f"{a.name}+{b.name}", StructureTensor(a.dim + b.dim, coeffs, a.field))


def change_basis(a: Algebra, p: ExactMatrix, name: str | None = None) -> Algebra:
    """
    Transport the product along the invertible map with matrix p.

    The result has product x o y = p((p^-1 x) . (p^-1 y)), so its derivations are
    exactly {p D p^-1 : D in Der(a)}.
    """
    if p.shape != (a.dim, a.dim):
        raise AlgebraError(f"base change of shape {p.shape} does not fit dim {a.dim}")
    q = inverse(p)
    images = [q.column(i) for i in range(a.dim)]
    coeffs = {}
    for i, j in product(range(a.dim), repeat=2):
        prod_ij = multiply(a, images[i], images[j])
        transported = [sum((p[r, c] * prod_ij[c] for c in range(a.dim)), a.field.zero()) for r in range(a.dim)]
        for k, c in enumerate(transported, start=1):
            if c.value != 0:
                coeffs[(i + 1, j + 1, k)] = c
    return Algebra(name or f"{a.name}^P", StructureTensor(a.dim, coeffs, a.field))


def with_field(a: Algebra, field: FieldDescriptor) -> Algebra:
    """Reinterpret integer structure constants in another field."""
    if field == a.field:
        return a
    coeffs = {key: reinterpret(c, field) for key, c in a.tensor.coeffs.items()}
    return Algebra(a.name, StructureTensor(a.dim, coeffs, field))


def cube_defect(a: Algebra, x: Sequence[Scalar]) -> Vector:
    """(x.x).x, which vanishes in every Mock-Lie algebra outside characteristic 3."""
    return multiply(a, multiply(a, x, x), x)


def jordan_defect(a: Algebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    """(x.y).(x.x) - x.(y.(x.x)); Mock-Lie algebras satisfy the Jordan identity."""
    xx = multiply(a, x, x)
    left = multiply(a, multiply(a, x, y), xx)
    right = multiply(a, x, multiply(a, y, xx))
    return tuple(u - v for u, v in zip(left, right))


def invariants(a: Algebra) -> AlgebraInvariants:
    from derivations import derivation_basis

    n = a.dim
    products = [multiply(a, basis_vector(a, i), basis_vector(a, j))
                for i, j in product(range(1, n + 1), repeat=2)]
    square = ExactMatrix(len(products), n, [x for v in products for x in v], a.field)

    # x annihilates everything iff sum_j x_j c_{ji}^k = 0 for every i, k.
    rows = [[a.tensor.coefficient(j, i, k) for j in range(1, n + 1)]
            for i, k in product(range(1, n + 1), repeat=2)]
    annihilator = ExactMatrix(len(rows), n, [x for r in rows for x in r], a.field)

    return AlgebraInvariants(
        dim=n,
        dim_square=rank(square),
        dim_annihilator=len(kernel_basis(annihilator)),
        dim_der=derivation_basis(a).dim,
    )
