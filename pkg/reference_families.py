"""
Published derivation matrices for the non-abelian catalog entries.

Entries are transcribed literally in display form, including the coupled entries
of A_{1,4}. Verification compares subspaces, so a transcription slip shows up as a
concrete witness matrix rather than a silent mismatch.
"""
from exact_arith import FieldDescriptor
from parametric import ParametricFamily


class ReferenceFamilyError(KeyError):
    """Raised for unknown names and for the abelian entries, which have no published family."""


_FAMILIES: dict[str, list[list[str]]] = {
    "A_{1,2}": [
        ["d11", "0"],
        ["d21", "2d11"],
    ],
    "A_{1,2}+A_{0,1}": [
        ["d11", "0", "0"],
        ["d21", "2d11", "d23"],
        ["d31", "0", "d33"],
    ],
    "A_{1,3}": [
        ["d33", "0", "-d31"],
        ["d21", "2d33", "d23"],
        ["d31", "0", "d33"],
    ],
    "A_{1,2}+A_{0,1}^2": [
        ["d11", "0", "0", "0"],
        ["d21", "2d11", "d23", "d24"],
        ["d31", "0", "d33", "d34"],
        ["d41", "0", "d43", "d44"],
    ],
    "A_{1,3}+A_{0,1}": [
        ["d33", "0", "-d31", "0"],
        ["d21", "2d33", "d23", "d24"],
        ["d31", "0", "d33", "0"],
        ["d41", "0", "d43", "d44"],
    ],
    "A_{1,2}+A_{1,2}": [
        ["d11", "0", "0", "0"],
        ["d21", "2d11", "d23", "0"],
        ["0", "0", "d33", "0"],
        ["d41", "0", "d43", "2d33"],
    ],
    "A_{1,4}": [
        ["d44-d33", "0", "0", "0"],
        ["d21", "2d44-2d33", "d23", "0"],
        ["d31", "0", "d33", "0"],
        ["d41", "2d31", "d43", "d44"],
    ],
    "A_{2,4}": [
        ["d11", "0", "-d41", "-d31"],
        ["d21", "2d11", "d23", "d24"],
        ["d31", "0", "2d11-d44", "0"],
        ["d41", "0", "0", "d44"],
    ],
}


def reference_names() -> tuple[str, ...]:
    return tuple(_FAMILIES)


def reference_family(catalog_name: str, field: FieldDescriptor | None = None) -> ParametricFamily:
    """
    The published family of derivation matrices for a non-abelian catalog entry.

    Raises:
        ReferenceFamilyError: for abelian entries and unknown names.
    """
    grid = _FAMILIES.get(catalog_name)
    if grid is None:
        raise ReferenceFamilyError(
            f"no reference family for '{catalog_name}'; expected one of {', '.join(_FAMILIES)}"
        )
    return ParametricFamily.from_strings(grid, field or FieldDescriptor.rationals())
