"""Worked example catalog: four rational inner functions with documented
closed-form facts.

Each entry carries the defining polynomial, a list of documented quantities
(singularity data, Blaschke parts, weights, masses, saturation) used as test
fixtures, and, where a complete sums-of-squares decomposition is documented,
that decomposition.  Facts store complex scalars as [re, im] pairs so the
whole catalog round-trips through JSON.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .agler import AglerPieces, SosPiece
from .errors import DomainError
from .polynomials import UniPoly
from .rif import BiPolyN1, Rif, validate

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class CatalogEntry:
    """One named example: polynomial, prose description, documented facts."""

    name: str
    description: str
    poly: BiPolyN1
    facts: tuple
    sos_fixture: AglerPieces | None = None

    def build(self) -> Rif:
        return validate(self.poly)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "description": self.description,
            "rif": self.poly.to_json(),
            "facts": list(self.facts),
        }
        if self.sos_fixture is not None:
            out["sos_fixture"] = self.sos_fixture.to_json()
        return out


def _fave() -> CatalogEntry:
    # p = 2 - z1 - z2, the simplest degree-(1,1) case: one boundary zero at
    # (1, 1) with singular value -1, and sigma_{-1} splits half-and-half
    # into a horizontal and a vertical unit-mass line.
    poly = BiPolyN1(UniPoly([2.0, -1.0]), UniPoly([-1.0]), 1)
    facts = (
        {"quantity": "phi_at_origin", "value": [0.0, 0.0],
         "note": "reflection has no constant term"},
        {"quantity": "singularity", "tau": [1.0, 0.0], "lambda": [1.0, 0.0],
         "alpha": [-1.0, 0.0], "mult": 2, "note": "single boundary zero at (1, 1)"},
        {"quantity": "line_derivative", "tau": [1.0, 0.0], "value": [-2.0, 0.0],
         "note": "slope of phi in z1 along the singular line"},
        {"quantity": "line_mass", "alpha": [-1.0, 0.0], "tau": [1.0, 0.0],
         "mass": 0.5, "note": "reciprocal of the line derivative modulus"},
        {"quantity": "weight_constant", "alpha": [-1.0, 0.0], "value": 0.5,
         "note": "flat curve weight"},
        {"quantity": "blaschke", "alpha": [-1.0, 0.0], "constant": [1.0, 0.0],
         "zeros": [], "note": "curve degree drops to zero"},
        {"quantity": "blaschke", "alpha": [1.0, 0.0], "constant": [1.0, 0.0],
         "zeros": [[0.0, 0.0]], "note": "generic full degree"},
        {"quantity": "total_mass", "alpha": [-1.0, 0.0], "value": 1.0,
         "note": "probability measure since phi(0) = 0"},
        {"quantity": "total_mass", "alpha": [1.0, 0.0], "value": 1.0,
         "note": "probability measure since phi(0) = 0"},
        {"quantity": "saturated", "value": True,
         "note": "resultant is -2 (z - 1)^2, both roots on the circle"},
        {"quantity": "extreme", "alpha": [1.0, 0.0], "status": "extreme",
         "note": "generic alpha, saturated, degree-preserving reflection"},
        {"quantity": "extreme", "alpha": [-1.0, 0.0], "status": "not_extreme",
         "note": "exceptional alpha"},
    )
    fixture = AglerPieces(
        Q=UniPoly([_SQRT2, -_SQRT2]),
        R=(SosPiece(UniPoly([_SQRT2]), UniPoly([-_SQRT2])),),
        provenance="documented decomposition",
    )
    return CatalogEntry(
        "fave",
        "degree (1,1): p = 2 - z1 - z2; one singularity at (1,1), "
        "exceptional value -1, measure splits into two equal line pieces",
        poly, facts, fixture,
    )


def _amy() -> CatalogEntry:
    # p = (1 - z1)^2 + 3(1 - z1) - z2 (1 + z1) + 1 - z1, collected:
    # p1 = 4 - 3 z1 + z1^2, p2 = -(1 + z1); quadruple boundary contact at
    # (1, 1) with the same exceptional value -1 but a nonflat curve weight.
    poly = BiPolyN1(UniPoly([4.0, -3.0, 1.0]), UniPoly([-1.0, -1.0]), 2)
    facts = (
        {"quantity": "phi_at_origin", "value": [0.0, 0.0],
         "note": "reflection has no constant term"},
        {"quantity": "singularity", "tau": [1.0, 0.0], "lambda": [1.0, 0.0],
         "alpha": [-1.0, 0.0], "mult": 4, "note": "order-two boundary contact at (1, 1)"},
        {"quantity": "line_derivative", "tau": [1.0, 0.0], "value": [-2.0, 0.0],
         "note": "slope of phi in z1 along the singular line"},
        {"quantity": "line_mass", "alpha": [-1.0, 0.0], "tau": [1.0, 0.0],
         "mass": 0.5, "note": "reciprocal of the line derivative modulus"},
        {"quantity": "blaschke", "alpha": [-1.0, 0.0], "constant": [1.0, 0.0],
         "zeros": [[0.0, 0.0]], "note": "curve part is the anti-diagonal"},
        {"quantity": "weight_at", "alpha": [-1.0, 0.0], "zeta": [-1.0, 0.0],
         "value": 1.0, "note": "quarter of |1 - zeta|^2 at zeta = -1"},
        {"quantity": "weight_at", "alpha": [-1.0, 0.0], "zeta": [0.0, 1.0],
         "value": 0.5, "note": "quarter of |1 - zeta|^2 at zeta = i"},
        {"quantity": "total_mass", "alpha": [-1.0, 0.0], "value": 1.0,
         "note": "probability measure since phi(0) = 0"},
        {"quantity": "saturated", "value": True,
         "note": "resultant is -4 (z - 1)^4, all roots on the circle"},
    )
    fixture = AglerPieces(
        Q=UniPoly([2.0, -4.0, 2.0]),
        R=(
            SosPiece(UniPoly([2.0, -2.0]), UniPoly([-2.0, 2.0])),
            SosPiece(UniPoly([2.0 * _SQRT2]), UniPoly([0.0, -2.0 * _SQRT2])),
        ),
        provenance="documented decomposition",
    )
    return CatalogEntry(
        "amy",
        "degree (2,1): p1 = 4 - 3 z1 + z1^2, p2 = -(1 + z1); quadruple "
        "boundary contact at (1,1), exceptional value -1, weight (1/4)|1 - zeta|^2",
        poly, facts, fixture,
    )


def _amy_variant() -> CatalogEntry:
    # p = 2 - z1 z2 - z1^2 z2.  Same level-set support as a rotation of the
    # previous entry for alpha = -1, but the weights differ: support equality
    # does not determine the measure.
    poly = BiPolyN1(UniPoly([2.0]), UniPoly([0.0, -1.0, -1.0]), 2)
    facts = (
        {"quantity": "phi_at_origin", "value": [-0.5, 0.0],
         "note": "nonzero, so sigma_alpha is not a probability measure"},
        {"quantity": "singularity", "tau": [1.0, 0.0], "lambda": [1.0, 0.0],
         "alpha": [-1.0, 0.0], "mult": 2, "note": "single boundary zero at (1, 1)"},
        {"quantity": "line_derivative", "tau": [1.0, 0.0], "value": [-0.5, 0.0],
         "note": "shallow slope, hence the heavy line"},
        {"quantity": "line_mass", "alpha": [-1.0, 0.0], "tau": [1.0, 0.0],
         "mass": 2.0, "note": "reciprocal of the line derivative modulus"},
        {"quantity": "weight_constant", "alpha": [-1.0, 0.0], "value": 1.0,
         "note": "flat curve weight, twice the fave value"},
        {"quantity": "blaschke", "alpha": [-1.0, 0.0], "constant": [1.0, 0.0],
         "zeros": [[0.0, 0.0]], "note": "same curve as amy at this alpha"},
        {"quantity": "total_mass", "alpha": [-1.0, 0.0], "value": 3.0,
         "note": "curve mass 1 plus line mass 2"},
        {"quantity": "saturated", "value": False,
         "note": "resultant degree drops below 2n"},
        {"quantity": "extreme", "alpha": [1.0, 0.0], "status": "undetermined",
         "note": "phi(0) is nonzero, outside the certified criteria"},
    )
    return CatalogEntry(
        "amy-variant",
        "degree (2,1): p = 2 - z1 z2 - z1^2 z2; shares the alpha = -1 level "
        "set with amy up to rotation but the weights differ, showing support "
        "does not determine the measure",
        poly, facts, None,
    )


def _deg31() -> CatalogEntry:
    # p1 = 4, p2 = -(1 - z1 + 3 z1^2 + z1^3): two boundary zeros with
    # distinct exceptional values, -1 at tau = 1 and +1 at tau = -1.
    poly = BiPolyN1(UniPoly([4.0]), UniPoly([-1.0, 1.0, -3.0, -1.0]), 3)
    inv_sqrt3 = 1.0 / math.sqrt(3.0)
    facts = (
        {"quantity": "phi_at_origin", "value": [-0.25, 0.0],
         "note": "nonzero, masses differ between the two exceptional values"},
        {"quantity": "singularity", "tau": [1.0, 0.0], "lambda": [1.0, 0.0],
         "alpha": [-1.0, 0.0], "mult": 2, "note": "simple boundary contact at (1, 1)"},
        {"quantity": "singularity", "tau": [-1.0, 0.0], "lambda": [1.0, 0.0],
         "alpha": [1.0, 0.0], "mult": 4, "note": "order-two boundary contact at (-1, 1)"},
        {"quantity": "line_derivative", "tau": [1.0, 0.0], "value": [-1.0, 0.0],
         "note": "unit slope at tau = 1"},
        {"quantity": "line_derivative", "tau": [-1.0, 0.0], "value": [-2.0, 0.0],
         "note": "slope -2 at tau = -1"},
        {"quantity": "line_mass", "alpha": [-1.0, 0.0], "tau": [1.0, 0.0],
         "mass": 1.0, "note": "full unit line mass"},
        {"quantity": "line_mass", "alpha": [1.0, 0.0], "tau": [-1.0, 0.0],
         "mass": 0.5, "note": "half line mass at the other exceptional value"},
        {"quantity": "blaschke", "alpha": [-1.0, 0.0], "constant": [1.0, 0.0],
         "zeros": [[0.0, inv_sqrt3], [0.0, -inv_sqrt3]],
         "note": "(3 z^2 + 1) / (z^2 + 3)"},
        {"quantity": "blaschke", "alpha": [1.0, 0.0], "constant": [1.0, 0.0],
         "zeros": [[0.2, 0.4], [0.2, -0.4]],
         "note": "(5 z^2 - 2 z + 1) / (z^2 - 2 z + 5)"},
        {"quantity": "weight_at", "alpha": [-1.0, 0.0], "zeta": [1.0, 0.0],
         "value": 1.0, "note": "weight does not vanish at the removed point"},
        {"quantity": "weight_at", "alpha": [1.0, 0.0], "zeta": [-1.0, 0.0],
         "value": 0.0, "note": "weight vanishes at the higher-order contact"},
        {"quantity": "total_mass", "alpha": [-1.0, 0.0], "value": 5.0 / 3.0,
         "note": "(1 - 1/16) / |-(1) + 1/4|^2"},
        {"quantity": "total_mass", "alpha": [1.0, 0.0], "value": 0.6,
         "note": "(1 - 1/16) / |1 + 1/4|^2"},
        {"quantity": "saturated", "value": True,
         "note": "resultant has all six roots on the circle"},
        {"quantity": "extreme", "alpha": [0.0, 1.0], "status": "undetermined",
         "note": "phi(0) is nonzero, outside the certified criteria"},
    )
    return CatalogEntry(
        "deg31",
        "degree (3,1): p1 = 4, p2 = -(1 - z1 + 3 z1^2 + z1^3); two "
        "singularities with distinct exceptional values -1 and +1 and "
        "asymmetric line masses",
        poly, facts, None,
    )


_ENTRIES = None


def entries() -> dict[str, CatalogEntry]:
    global _ENTRIES
    if _ENTRIES is None:
        built = (_fave(), _amy(), _amy_variant(), _deg31())
        _ENTRIES = {e.name: e for e in built}
    return _ENTRIES


def names() -> list[str]:
    return list(entries().keys())


def get(name: str) -> CatalogEntry:
    try:
        return entries()[name]
    except KeyError:
        raise DomainError(
            f"unknown catalog entry {name!r}; available: {', '.join(names())}"
        ) from None
