"""Exact workbench for abelian crossed product algebras.

Construct crossed products from explicitly presented abelian Galois
extensions, derive and audit their scalar tables, check and search
degeneracy witnesses, reduce twisted polynomials into the generic model,
work the graded/valued skeleton, and descend witnesses along composites
of coprime degree.  All arithmetic is exact rational arithmetic.
"""

__version__ = "0.1.0"
