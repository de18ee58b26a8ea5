from dataclasses import dataclass
from typing import Optional

from linalg import ExactMatrix


@dataclass(frozen=True)
class AxiomReport:
    commutative: bool
    jacobi: bool
    commutative_witness: Optional[tuple[int, int, int]] = None
    jacobi_witness: Optional[tuple[int, int, int, int]] = None

    @property
    def mock_lie(self) -> bool:
        return self.commutative and self.jacobi


@dataclass(frozen=True)
class AlgebraInvariants:
    dim: int
    dim_square: int
    dim_annihilator: int
    dim_der: int


@dataclass(frozen=True)
class VerificationReport:
    catalog_name: str
    computed_dim: int
    reference_dim: int
    spaces_equal: bool
    discrepancy: Optional[ExactMatrix] = None
    # "computed" when the witness lies in Der(L) only, "reference" for the opposite case
    discrepancy_side: Optional[str] = None
