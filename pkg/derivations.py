import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import config
from algebra import Algebra, StructureTensor, basis_vector, check_axioms, multiply, with_field
from catalog import catalog_entry, non_abelian_names
from exact_arith import FieldDescriptor, FieldError, FieldMismatchError, Scalar
from linalg import (ExactMatrix, ShapeError, Vector, apply, block_diagonal, canonical_basis, inverse,
                    kernel_basis, matmul, span_contains, sub, subspace_equal)
from parametric import ParametricFamily, parameter_name
from reference_families import reference_family
from structs import VerificationReport


class ClosureError(RuntimeError):
    """A bracket of two computed derivations fell outside Der(L); signals a solver bug."""


class SolverConsistencyError(RuntimeError):
    """A kernel vector of the Leibniz system failed the direct Leibniz check."""


class OracleTooLargeError(ValueError):
    """The exhaustive enumeration would exceed config.ORACLE_MAX_MATRICES candidates."""


@dataclass(frozen=True)
class DerivationSpace:
    """
    Der(L) as a linear subspace of n x n matrices.

    Matrices follow the column convention d(e_j) = sum_i d_{ij} e_i. The basis,
    flattened row-major, is the nonzero part of an RREF.
    """
    algebra_dim: int
    basis: tuple[ExactMatrix, ...]
    field: FieldDescriptor

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[Vector]:
        return [d.flatten() for d in self.basis]

    def contains(self, d: ExactMatrix) -> bool:
        return span_contains(self.vectors(), d.flatten())

    def coordinates(self, d: ExactMatrix) -> Vector | None:
        """Coordinates of d in the basis, or None when d lies outside the space."""
        vectors = self.vectors()
        # RREF rows: each basis vector is 1 at its own pivot and 0 at the others.
        pivots = [next(idx for idx, x in enumerate(v) if x.value != 0) for v in vectors]
        flat = d.flatten()
        coords = tuple(flat[p] for p in pivots)
        zero = self.field.zero()
        rebuilt = [sum((c * v[idx] for c, v in zip(coords, vectors)), zero) for idx in range(len(flat))]
        return coords if tuple(rebuilt) == flat else None


def _check_derivation_shape(a: Algebra, d: ExactMatrix):
    if d.shape != (a.dim, a.dim):
        raise ShapeError(f"matrix of shape {d.shape} cannot act on {a.name} (dim {a.dim})")
    if d.field != a.field:
        raise FieldMismatchError(f"matrix over {d.field} cannot act on {a.name} over {a.field}")


def leibniz_defect(a: Algebra, d: ExactMatrix, i: int, j: int) -> Vector:
    """
    d([e_i, e_j]) - [d(e_i), e_j] - [e_i, d(e_j)] with 1-based indices.

    Column convention: d(e_j) is the j-th column of d.
    """
    _check_derivation_shape(a, d)
    ei, ej = basis_vector(a, i), basis_vector(a, j)
    image = apply(d, multiply(a, ei, ej))
    left = multiply(a, d.column(i - 1), ej)
    right = multiply(a, ei, d.column(j - 1))
    return tuple(x - y - z for x, y, z in zip(image, left, right))


def is_derivation(a: Algebra, d: ExactMatrix) -> bool:
    """Leibniz rule on every basis pair, which is equivalent to the full rule by bilinearity."""
    _check_derivation_shape(a, d)
    for i, j in product(range(1, a.dim + 1), repeat=2):
        if any(x.value != 0 for x in leibniz_defect(a, d, i, j)):
            return False
    return True


def constraint_matrix(a: Algebra, all_pairs: bool = False) -> ExactMatrix:
    """
    Linearized Leibniz constraints in the unknowns d_{rs}.

    Rows are indexed by (i, j, k) with i <= j (every ordered pair when all_pairs is set)
    and k in [1, n]; column (r-1)*n + (s-1) holds the coefficient of d_{rs} in the k-th
    component of leibniz_defect(a, d, i, j).
    """
    n = a.dim
    t = a.tensor
    pairs = [(i, j) for i, j in product(range(1, n + 1), repeat=2) if all_pairs or i <= j]
    entries = []
    for i, j in pairs:
        for k in range(1, n + 1):
            for r, s in product(range(1, n + 1), repeat=2):
                c = t.coefficient(r, j, k) if s == i else a.field.zero()
                value = (t.coefficient(i, j, s) if r == k else a.field.zero()) - c
                if s == j:
                    value = value - t.coefficient(i, r, k)
                entries.append(value)
    return ExactMatrix(len(pairs) * n, n * n, entries, a.field)


def derivation_basis(a: Algebra) -> DerivationSpace:
    """
    Exact basis of Der(a), canonical under row-major RREF.

    Raises:
        SolverConsistencyError: when a basis matrix fails is_derivation.
    """
    commutative = check_axioms(a).commutative if a.tensor.coeffs else True
    system = constraint_matrix(a, all_pairs=not commutative)
    kernel = kernel_basis(system)
    n = a.dim
    basis = tuple(ExactMatrix.from_vector(v, n, n, a.field) for v in canonical_basis(kernel))
    for d in basis:
        if not is_derivation(a, d):
            raise SolverConsistencyError(f"kernel vector of {a.name} fails the Leibniz rule: {d}")
    logging.debug(f"Der({a.name}): {system.rows}x{system.cols} system, dim {len(basis)}")
    return DerivationSpace(n, basis, a.field)


def bracket(d1: ExactMatrix, d2: ExactMatrix) -> ExactMatrix:
    """Commutator d1 d2 - d2 d1."""
    if d1.shape != d2.shape or d1.rows != d1.cols:
        raise ShapeError(f"cannot bracket {d1.shape} with {d2.shape}")
    return sub(matmul(d1, d2), matmul(d2, d1))


def der_structure_constants(a: Algebra, space: DerivationSpace | None = None) -> StructureTensor:
    """
    Lie structure constants of Der(a) in its canonical basis.

    Raises:
        ClosureError: when a bracket of basis derivations is outside the span.
    """
    space = space or derivation_basis(a)
    coeffs = {}
    for p, q in product(range(space.dim), repeat=2):
        commutator = bracket(space.basis[p], space.basis[q])
        coords = space.coordinates(commutator)
        if coords is None:
            logging.error(f"Closure violated in Der({a.name}) for basis pair ({p + 1}, {q + 1})")
            raise ClosureError(f"[D_{p + 1}, D_{q + 1}] is not a derivation of {a.name}")
        for r, c in enumerate(coords, start=1):
            if c.value != 0:
                coeffs[(p + 1, q + 1, r)] = c
    return StructureTensor(space.dim, coeffs, space.field)


def render_parametric(space: DerivationSpace) -> ParametricFamily:
    """
    Display Der(L) as one matrix of linear forms.

    Coordinates are read column by column (the images d(e_1), d(e_2), ... in turn, each
    top to bottom); each parameter is the first coordinate not fixed by earlier ones
    and takes its name d{r}{s} from that position.
    """
    n = space.algebra_dim
    order = [(r, s) for s in range(n) for r in range(n)]
    permuted = [tuple(d[r, s] for r, s in order) for d in space.basis]
    rows = canonical_basis(permuted)
    names = []
    for row in rows:
        lead = next(idx for idx, x in enumerate(row) if x.value != 0)
        r, s = order[lead]
        names.append(parameter_name(r + 1, s + 1, n))
    grid = [[{} for _ in range(n)] for _ in range(n)]
    for name, row in zip(names, rows):
        for (r, s), x in zip(order, row):
            if x.value != 0:
                grid[r][s][name] = x
    return ParametricFamily(n, tuple(tuple(row) for row in grid), tuple(names), space.field)


def block_diagonal_derivation(d1: ExactMatrix, d2: ExactMatrix) -> ExactMatrix:
    """A derivation of A (+) B built from derivations of A and of B."""
    return block_diagonal(d1, d2)


def conjugate_space(space: DerivationSpace, p: ExactMatrix) -> DerivationSpace:
    """{P D P^-1 : D in space}, canonicalized."""
    q = inverse(p)
    n = space.algebra_dim
    moved = [matmul(matmul(p, d), q).flatten() for d in space.basis]
    basis = tuple(ExactMatrix.from_vector(v, n, n, space.field) for v in canonical_basis(moved))
    return DerivationSpace(n, basis, space.field)


def enumerate_derivations(a: Algebra) -> list[ExactMatrix]:
    """
    Exhaustive oracle: test every n x n matrix over a prime field with is_derivation.

    Independent of the constraint solver; only practical for tiny p and n.
    """
    if not a.field.is_prime_field:
        raise FieldError("exhaustive enumeration needs a prime field")
    p, n = a.field.modulus, a.dim
    candidates = p ** (n * n)
    if candidates > config.ORACLE_MAX_MATRICES:
        raise OracleTooLargeError(f"{candidates} candidate matrices exceed ORACLE_MAX_MATRICES={config.ORACLE_MAX_MATRICES}")
    residues = [Scalar(x, a.field) for x in range(p)]
    found = []
    for entries in product(residues, repeat=n * n):
        d = ExactMatrix(n, n, entries, a.field)
        if is_derivation(a, d):
            found.append(d)
    logging.info(f"Exhaustive search over {candidates} matrices found {len(found)} derivations of {a.name}")
    return found


def _require_catalog_field(field: FieldDescriptor):
    if field.characteristic in (2, 3):
        raise FieldError(f"catalog verification needs characteristic other than 2 or 3, got {field}")


def verify_against_reference(catalog_name: str, field: FieldDescriptor | None = None) -> VerificationReport:
    """
    Compare the solver's Der(L) with the published family for a non-abelian catalog entry.

    The computed space is ground truth: each basis matrix passed the Leibniz check. On a
    mismatch the report carries a matrix lying in exactly one of the two spaces.
    """
    field = field or FieldDescriptor.rationals()
    _require_catalog_field(field)
    family = reference_family(catalog_name, field)
    algebra = with_field(catalog_entry(catalog_name), field)
    computed = derivation_basis(algebra).vectors()
    published = [m.flatten() for m in family.basis()]

    equal = subspace_equal(computed, published)
    witness, side = None, None
    if not equal:
        n = algebra.dim
        outside = next((v for v in computed if not span_contains(published, v)), None)
        if outside is not None:
            witness, side = ExactMatrix.from_vector(outside, n, n, field), "computed"
        else:
            outside = next(v for v in published if not span_contains(computed, v))
            witness, side = ExactMatrix.from_vector(outside, n, n, field), "reference"
        logging.warning(f"{catalog_name}: Der(L) differs from the reference family, witness in {side} space")
    else:
        logging.info(f"{catalog_name}: Der(L) equals the reference family (dim {len(computed)})")

    return VerificationReport(
        catalog_name=catalog_name,
        computed_dim=len(computed),
        reference_dim=family.dimension,
        spaces_equal=equal,
        discrepancy=witness,
        discrepancy_side=side,
    )


def verify_catalog(field: FieldDescriptor | None = None, max_workers: int | None = None,
                   names: Sequence[str] | None = None) -> list[VerificationReport]:
    """Verify every non-abelian entry; results come back in catalog order."""
    field = field or FieldDescriptor.rationals()
    _require_catalog_field(field)
    names = list(names or non_abelian_names())
    workers = max_workers or config.VERIFY_MAX_WORKERS
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="CatalogVerifier") as executor:
        reports = list(executor.map(lambda name: verify_against_reference(name, field), names))
    mismatches = [r.catalog_name for r in reports if not r.spaces_equal]
    if mismatches:
        logging.warning(f"Catalog verification mismatches: {mismatches}")
    else:
        logging.info(f"All {len(reports)} catalog entries verified")
    return reports
