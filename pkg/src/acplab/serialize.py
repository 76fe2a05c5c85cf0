"""Versioned JSON documents for presentations, algebras, witnesses, composites.

Schema family (all documents carry a "schema" tag):

  acplab/presentation-v1
      orders: [int]           generator orders, empty for plain coefficient
      basis: [str]            basis labels
      unit: [scalar]          coordinates of 1
      structure_constants:    dense n x n x n array of scalars
      sigma: [matrix]         one dense n x n matrix per generator
  acplab/crossed-product-v1
      extension: presentation document (inline)
      twists: r x r array of coordinate vectors
      powers: r coordinate vectors
  acplab/witness-v1
      algebra: crossed-product document (inline, so files are self-contained)
      exponent: [int]
      coeff: coordinate vector
      solutions: [coordinate vector]
  acplab/composite-v1
      base, coefficients, composite: presentation documents
      embed: dense (dim composite) x (dim base) matrix
      rel_gal: list of dense square matrices

Scalars are strings "p" or "p/q" in lowest terms.  Dumps sort keys and use
a fixed indent, so re-serializing identical data is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .crossed_product import CocycleData, CrossedProductAlgebra, StrongDegeneracyWitness
from .errors import FormatError
from .extension_lab import CompositeExtension, build_tensor_extension
from .field_core import GaloisExtensionPresentation

PRESENTATION_SCHEMA = "acplab/presentation-v1"
ALGEBRA_SCHEMA = "acplab/crossed-product-v1"
WITNESS_SCHEMA = "acplab/witness-v1"
COMPOSITE_SCHEMA = "acplab/composite-v1"
ELEMENTS_SCHEMA = "acplab/elements-v1"


def _scalar(x) -> str:
    return str(Fraction(x))


def _parse_scalar(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad scalar literal {s!r}") from exc


def _coords(vec):
    return [_scalar(x) for x in vec]


def _matrix(mat):
    return [[_scalar(x) for x in row] for row in mat]


# ---------------------------------------------------------------------- #
# presentations


def presentation_to_doc(p: GaloisExtensionPresentation) -> dict:
    return {
        "schema": PRESENTATION_SCHEMA,
        "name": p.name,
        "orders": list(p.orders),
        "basis": list(p.basis_labels),
        "unit": _coords(p.unit_coords),
        "structure_constants": [[_coords(p.structure_constants[i][j])
                                 for j in range(p.dim)] for i in range(p.dim)],
        "sigma": [_matrix(s) for s in p.sigma],
    }


def presentation_from_doc(doc: dict) -> GaloisExtensionPresentation:
    _expect(doc, PRESENTATION_SCHEMA)
    try:
        sc = [[[_parse_scalar(x) for x in vec] for vec in row]
              for row in doc["structure_constants"]]
        return GaloisExtensionPresentation(
            tuple(doc["orders"]),
            tuple(doc["basis"]),
            sc,
            [_parse_scalar(x) for x in doc["unit"]],
            [[[_parse_scalar(x) for x in row] for row in mat]
             for mat in doc["sigma"]],
            name=doc.get("name", ""),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"malformed presentation document: {exc}") from exc


def _same_presentation(p: GaloisExtensionPresentation, doc: dict) -> bool:
    mine = presentation_to_doc(p)
    return all(mine[k] == doc.get(k)
               for k in ("orders", "unit", "structure_constants", "sigma"))


# ---------------------------------------------------------------------- #
# algebras


def algebra_to_doc(alg: CrossedProductAlgebra) -> dict:
    return {
        "schema": ALGEBRA_SCHEMA,
        "name": alg.ext.name,
        "extension": presentation_to_doc(alg.ext),
        "twists": [[_coords(u.coords) for u in row] for row in alg.data.twists],
        "powers": [_coords(b.coords) for b in alg.data.powers],
    }


def cocycle_data_from_doc(doc: dict, ext=None):
    """(extension, data) parsed from an algebra document, without building
    or validating the algebra; pass ext to bind the data onto an
    already-loaded presentation with identical tables."""
    _expect(doc, ALGEBRA_SCHEMA)
    try:
        if ext is None:
            ext = presentation_from_doc(doc["extension"])
        elif not _same_presentation(ext, doc["extension"]):
            raise FormatError("document extension differs from the provided one")
        twists = tuple(tuple(ext.element([_parse_scalar(x) for x in vec])
                             for vec in row) for row in doc["twists"])
        powers = tuple(ext.element([_parse_scalar(x) for x in vec])
                       for vec in doc["powers"])
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"malformed algebra document: {exc}") from exc
    return ext, CocycleData(twists, powers)


def algebra_from_doc(doc: dict, ext=None) -> CrossedProductAlgebra:
    """Rebuild (and revalidate) the algebra from its document."""
    ext, data = cocycle_data_from_doc(doc, ext)
    return CrossedProductAlgebra(ext, data)


# ---------------------------------------------------------------------- #
# witnesses


def witness_to_doc(alg: CrossedProductAlgebra, w: StrongDegeneracyWitness) -> dict:
    return {
        "schema": WITNESS_SCHEMA,
        "algebra": algebra_to_doc(alg),
        "exponent": list(w.exponent),
        "coeff": _coords(w.coeff.coords),
        "solutions": [_coords(x.coords) for x in w.solutions],
    }


def witness_from_doc(doc: dict, algebra: CrossedProductAlgebra | None = None):
    """(algebra, witness); pass algebra to bind onto an existing instance."""
    _expect(doc, WITNESS_SCHEMA)
    try:
        alg = algebra if algebra is not None \
            else algebra_from_doc(doc["algebra"])
        if algebra is not None and not _same_presentation(
                algebra.ext, doc["algebra"]["extension"]):
            raise FormatError("witness was recorded over a different extension")
        ext = alg.ext
        w = StrongDegeneracyWitness(
            tuple(doc["exponent"]),
            ext.element([_parse_scalar(x) for x in doc["coeff"]]),
            tuple(ext.element([_parse_scalar(x) for x in vec])
                  for vec in doc["solutions"]),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"malformed witness document: {exc}") from exc
    return alg, w


# ---------------------------------------------------------------------- #
# composites


def composite_to_doc(comp: CompositeExtension) -> dict:
    return {
        "schema": COMPOSITE_SCHEMA,
        "name": comp.composite.name,
        "base": presentation_to_doc(comp.base),
        "coefficients": presentation_to_doc(comp.ext_field),
        "composite": presentation_to_doc(comp.composite),
        "embed": _matrix(comp.embed),
        "rel_gal": [_matrix(t) for t in comp.rel_gal],
    }


def composite_from_doc(doc: dict, base=None) -> CompositeExtension:
    _expect(doc, COMPOSITE_SCHEMA)
    try:
        if base is None:
            base = presentation_from_doc(doc["base"])
        elif not _same_presentation(base, doc["base"]):
            raise FormatError("composite was recorded over a different base")
        ext_field = presentation_from_doc(doc["coefficients"])
        composite = presentation_from_doc(doc["composite"])
        embed = [[_parse_scalar(x) for x in row] for row in doc["embed"]]
        rel_gal = [[[_parse_scalar(x) for x in row] for row in mat]
                   for mat in doc["rel_gal"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"malformed composite document: {exc}") from exc
    return build_tensor_extension(base, ext_field, composite, embed, rel_gal)


# ---------------------------------------------------------------------- #
# candidate element lists


def elements_to_doc(elements) -> dict:
    return {
        "schema": ELEMENTS_SCHEMA,
        "elements": [_coords(x.coords) for x in elements],
    }


def elements_from_doc(doc: dict, ext) -> list:
    _expect(doc, ELEMENTS_SCHEMA)
    try:
        return [ext.element([_parse_scalar(x) for x in vec])
                for vec in doc["elements"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"malformed element list: {exc}") from exc


# ---------------------------------------------------------------------- #
# files


def _expect(doc, schema):
    if not isinstance(doc, dict) or doc.get("schema") != schema:
        raise FormatError(f"expected schema {schema}, got "
                          f"{doc.get('schema') if isinstance(doc, dict) else type(doc)}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def save(path, doc: dict):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def load_document(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "schema" not in doc:
        raise FormatError(f"{path} carries no schema tag")
    return doc
