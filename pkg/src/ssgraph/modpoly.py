"""Classical modular polynomials as an independent cross-check oracle.

Data files carry one symmetric polynomial each as integer triples.  Format:

    ell <L>
    i j c        # coefficient of X^i Y^j, upper triangle only (i >= j)

Symmetry is restored on load, so lookups see the full coefficient table.
Tables for ell in {2, 3, 5} ship with the package; larger ones can be
supplied at runtime from the same format.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Tuple

from .ff import FieldElement
from .poly import Polynomial, roots_in_field

PACKAGED_LEVELS = (2, 3, 5)


@dataclass(frozen=True)
class ModularPolynomial:
    """A symmetric integer polynomial Phi(X, Y) of level ell."""

    ell: int
    coeffs: Tuple[Tuple[int, int, int], ...]  # sorted (i, j, c), full table

    @classmethod
    def from_text(cls, text: str, source: str = "<text>") -> "ModularPolynomial":
        ell = None
        upper: Dict[Tuple[int, int], int] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if ell is None:
                if len(parts) != 2 or parts[0] != "ell":
                    raise ValueError(
                        f"{source}:{lineno}: expected header 'ell <L>', "
                        f"got {raw!r}")
                ell = int(parts[1])
                if ell < 2:
                    raise ValueError(f"{source}:{lineno}: level must be >= 2")
                continue
            if len(parts) != 3:
                raise ValueError(
                    f"{source}:{lineno}: expected 'i j c', got {raw!r}")
            i, j, c = (int(t) for t in parts)
            if i < j:
                raise ValueError(
                    f"{source}:{lineno}: triples must satisfy i >= j "
                    f"(upper triangle), got ({i}, {j})")
            if not (0 <= j and i <= ell + 1):
                raise ValueError(
                    f"{source}:{lineno}: exponent ({i}, {j}) outside "
                    f"[0, ell+1] = [0, {ell + 1}]")
            if (i, j) in upper:
                raise ValueError(
                    f"{source}:{lineno}: duplicate entry for ({i}, {j})")
            if c != 0:
                upper[(i, j)] = c
        if ell is None:
            raise ValueError(f"{source}: missing 'ell <L>' header")
        if upper.get((ell + 1, 0)) != 1:
            raise ValueError(
                f"{source}: coefficient of X^{ell + 1} must be 1 "
                "(monic of degree ell+1 in each variable)")
        full = dict(upper)
        for (i, j), c in upper.items():
            if i != j:
                full[(j, i)] = c
        table = tuple(sorted((i, j, c) for (i, j), c in full.items()))
        return cls(ell=ell, coeffs=table)

    @classmethod
    def load_file(cls, path: str) -> "ModularPolynomial":
        with open(path, "r", encoding="ascii") as fh:
            return cls.from_text(fh.read(), source=path)

    @classmethod
    def packaged(cls, ell: int) -> "ModularPolynomial":
        if ell not in PACKAGED_LEVELS:
            raise ValueError(
                f"no packaged table for level {ell}; available: "
                f"{PACKAGED_LEVELS} (pass a file for other levels)")
        text = (resources.files("ssgraph.data")
                .joinpath(f"modpoly_{ell}.txt").read_text("ascii"))
        return cls.from_text(text, source=f"modpoly_{ell}.txt")

    def degree_in_each(self) -> int:
        return self.ell + 1

    def evaluate_at(self, j: FieldElement) -> Polynomial:
        """Phi(j, X) as a univariate polynomial over the field of j."""
        ctx = j.ctx
        n = self.ell + 2
        powers = [ctx.one()]
        for _ in range(self.ell + 1):
            powers.append(powers[-1] * j)
        cols = [ctx.zero() for _ in range(n)]
        for i, jdx, c in self.coeffs:
            cols[jdx] = cols[jdx] + powers[i] * c
        return Polynomial(ctx, cols)

    def root_multiset(self, j: FieldElement) -> List[Tuple[FieldElement, int]]:
        """Roots of Phi(j, X) in j's field, with multiplicities."""
        return roots_in_field(self.evaluate_at(j))
