"""Conversion of moment sets to the JSON and CSV documents printed by the CLI.

Moment magnitudes exceed ``2**53``, so JSON carries them as decimal strings;
central moments are exact ``"numerator/denominator"`` strings.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any
from typing import Dict
from typing import Mapping
from typing import Optional
from typing import Tuple

from jsonschema import ValidationError
from jsonschema import validate

from .errors import InternalInconsistencyError
from .model import MomentSet
from .model import moment_keys

__all__ = [
    "MOMENT_DOCUMENT_SCHEMA",
    "fraction_to_str",
    "moment_document",
    "moments_to_json",
    "moments_to_csv",
]

MOMENT_DOCUMENT_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "patternProperties": {
        "^m[0-9]{2}$": {"type": "string", "pattern": "^-?[0-9]+$"},
        "^mu[0-9]{2}$": {"type": "string", "pattern": "^-?[0-9]+/[1-9][0-9]*$"},
    },
    "additionalProperties": False,
    "required": ["m00"],
}

CentralMoments = Mapping[Tuple[int, int], Fraction]


def fraction_to_str(value: Fraction) -> str:
    """Return ``value`` as ``"num/den"``; integers keep the ``/1``."""
    return f"{value.numerator}/{value.denominator}"


def moment_document(
    ms: MomentSet, central: Optional[CentralMoments] = None
) -> Dict[str, str]:
    """Return the flat ``{"m{p}{q}": ..., "mu{p}{q}": ...}`` document.

    Keys follow canonical moment order; central moments follow the raw ones.

    Raises:
        InternalInconsistencyError: If the document violates
            :data:`MOMENT_DOCUMENT_SCHEMA`.
    """
    document = {f"m{p}{q}": str(value) for p, q, value in ms.entries()}
    if central is not None:
        for p, q in moment_keys(ms.order):
            document[f"mu{p}{q}"] = fraction_to_str(central[(p, q)])
    try:
        validate(instance=document, schema=MOMENT_DOCUMENT_SCHEMA)
    except ValidationError as exc:
        raise InternalInconsistencyError(f"moment document is malformed: {exc.message}") from exc
    return document


def moments_to_json(ms: MomentSet, central: Optional[CentralMoments] = None) -> str:
    """Serialise moments to an indented JSON object followed by a newline."""
    return json.dumps(moment_document(ms, central), indent=2) + "\n"


def moments_to_csv(ms: MomentSet, central: Optional[CentralMoments] = None) -> str:
    """Serialise moments as ``p,q,value`` rows, plus ``central`` when given."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["p", "q", "value"] + (["central"] if central is not None else [])
    writer.writerow(header)
    for p, q, value in ms.entries():
        row = [p, q, value]
        if central is not None:
            row.append(fraction_to_str(central[(p, q)]))
        writer.writerow(row)
    return buffer.getvalue()
