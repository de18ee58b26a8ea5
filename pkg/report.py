"""
JSON report documents.

Scalars are written as canonical strings ("5/6", "-1"), matrices as row-major
arrays of those strings, and keys are sorted so equal inputs give byte-identical
output.
"""
import json
from typing import Any

import config
from algebra import Algebra
from derivations import DerivationSpace, render_parametric
from linalg import ExactMatrix
from structs import AlgebraInvariants, AxiomReport, VerificationReport

REPORT_FORMAT = 1


def matrix_rows(m: ExactMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.as_rows()]


def axiom_report_dict(report: AxiomReport) -> dict[str, Any]:
    return {
        "commutative": report.commutative,
        "jacobi": report.jacobi,
        "witness": {
            "commutative": list(report.commutative_witness) if report.commutative_witness else None,
            "jacobi": list(report.jacobi_witness) if report.jacobi_witness else None,
        },
    }


def derivation_dict(space: DerivationSpace) -> dict[str, Any]:
    return {
        "dim": space.dim,
        "basis": [matrix_rows(d) for d in space.basis],
        "parametric": render_parametric(space).as_strings(),
    }


def verification_dict(report: VerificationReport) -> dict[str, Any]:
    return {
        "name": report.catalog_name,
        "computed_dim": report.computed_dim,
        "paper_dim": report.reference_dim,
        "equal": report.spaces_equal,
        "witness": matrix_rows(report.discrepancy) if report.discrepancy is not None else None,
        "witness_side": report.discrepancy_side,
    }


def fingerprint_dict(inv: AlgebraInvariants) -> dict[str, int]:
    return {
        "dim": inv.dim,
        "dim_square": inv.dim_square,
        "dim_annihilator": inv.dim_annihilator,
        "dim_der": inv.dim_der,
    }


def build_report(algebra: Algebra, axioms: AxiomReport | None = None, der: DerivationSpace | None = None,
                 verification: VerificationReport | None = None,
                 invariants: AlgebraInvariants | None = None) -> dict[str, Any]:
    """Assemble the report for one algebra; sections that were not computed are left out."""
    doc: dict[str, Any] = {
        "format": REPORT_FORMAT,
        "algebra": algebra.name,
        "field": algebra.field.label(),
        "dim": algebra.dim,
    }
    if axioms is not None:
        doc["axioms"] = axiom_report_dict(axioms)
    if der is not None:
        doc["der"] = derivation_dict(der)
    if verification is not None:
        doc["verification"] = verification_dict(verification)
    if invariants is not None:
        doc["fingerprint"] = fingerprint_dict(invariants)
    return doc


def to_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=config.JSON_INDENT, ensure_ascii=False) + "\n"
