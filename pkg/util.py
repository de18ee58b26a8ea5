import logging
import random
from fractions import Fraction

import config
from exact_arith import FieldDescriptor, Scalar
from linalg import ExactMatrix, Vector, rank


def make_rng(seed: int | None = None) -> random.Random:
    """
    Get a private random generator.

    Args:
        seed (int): Seed, config.RANDOM_SEED when omitted
    """
    return random.Random(config.RANDOM_SEED if seed is None else seed)


def random_scalar(rng: random.Random, field: FieldDescriptor, bound: int | None = None) -> Scalar:
    """
    Draw a scalar.

    Over the rationals the numerator lies in [-bound, bound] and the denominator in [1, bound];
    over GF(p) the residue is uniform.
    """
    if field.is_prime_field:
        return field.scalar(rng.randrange(field.modulus))
    bound = bound or config.RANDOM_ENTRY_BOUND
    return field.scalar(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))


def random_vector(rng: random.Random, field: FieldDescriptor, n: int, bound: int | None = None) -> Vector:
    return tuple(random_scalar(rng, field, bound) for _ in range(n))


def random_matrix(rng: random.Random, field: FieldDescriptor, rows: int, cols: int,
                  bound: int | None = None) -> ExactMatrix:
    return ExactMatrix(rows, cols, [random_scalar(rng, field, bound) for _ in range(rows * cols)], field)


def random_invertible_matrix(rng: random.Random, field: FieldDescriptor, n: int,
                             bound: int | None = None, max_attempts: int = 100) -> ExactMatrix:
    """Rejection-sample a full-rank n x n matrix."""
    for attempt in range(1, max_attempts + 1):
        m = random_matrix(rng, field, n, n, bound)
        if rank(m) == n:
            if attempt > 1:
                logging.debug(f"Invertible {n}x{n} matrix found after {attempt} draws")
            return m
    raise RuntimeError(f"no invertible {n}x{n} matrix over {field} after {max_attempts} draws")
