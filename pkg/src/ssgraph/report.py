"""Neighborhood reports shared by the geometric and quaternion engines.

A report records everything we assert about the edges leaving one vertex:
loop count, distinct neighbors with edge multiplicities, and which
neighbors already live over the prime field.  The geometric engine fills
``j`` slots with serialized j-invariants; the quaternion engine only
knows ideal classes, so it uses opaque class labels instead.  Reports
from the two engines are compared through :meth:`NeighborhoodReport.profile`,
which forgets vertex identities and keeps the numerical shape.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

ENGINE_GEOMETRIC = "geometric"
ENGINE_QUATERNION = "quaternion"
_ENGINES = (ENGINE_GEOMETRIC, ENGINE_QUATERNION)


@dataclass(frozen=True)
class Neighbor:
    """One distinct neighbor together with its edge multiplicity."""

    j: str
    multiplicity: int
    in_prime_field: bool

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "multiplicity": self.multiplicity,
            "in_prime_field": self.in_prime_field,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Neighbor":
        return cls(
            j=str(d["j"]),
            multiplicity=int(d["multiplicity"]),
            in_prime_field=bool(d["in_prime_field"]),
        )


@dataclass(frozen=True)
class NeighborhoodReport:
    """Loops and neighbors of a single vertex in the ell-isogeny graph.

    ``loops + sum(multiplicities) == ell + 1`` always holds: a vertex of
    the supersingular ell-isogeny graph has out-degree ell+1 counted with
    multiplicity, and the loops are exactly the edges returning to the
    start vertex.
    """

    p: int
    ell: int
    vertex_j: str
    loops: int
    neighbors: tuple[Neighbor, ...]
    engine: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "neighbors", tuple(self.neighbors))
        self.validate()

    # -- derived quantities -------------------------------------------------

    @property
    def distinct_count(self) -> int:
        """Number of distinct neighbors (the vertex itself not included)."""
        return len(self.neighbors)

    @property
    def fp_count(self) -> int:
        """How many distinct neighbors are defined over the prime field."""
        return sum(1 for nb in self.neighbors if nb.in_prime_field)

    def multiplicity_profile(self) -> tuple[int, ...]:
        return tuple(sorted(nb.multiplicity for nb in self.neighbors))

    def profile(self) -> tuple[int, tuple[int, ...], int, int]:
        """Identity-free shape used to compare the two engines.

        Returns ``(loops, sorted multiplicities, distinct_count, fp_count)``.
        The quaternion engine cannot name j-invariants, so this is the
        strongest comparison available across engines.
        """
        return (self.loops, self.multiplicity_profile(),
                self.distinct_count, self.fp_count)

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        if self.engine not in _ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.loops < 0:
            raise ValueError("negative loop count")
        if any(nb.multiplicity <= 0 for nb in self.neighbors):
            raise ValueError("neighbor multiplicities must be positive")
        names = [nb.j for nb in self.neighbors]
        if len(set(names)) != len(names):
            raise ValueError("duplicate neighbor identities")
        if self.vertex_j in names:
            raise ValueError("vertex listed among its own neighbors")
        total = self.loops + sum(nb.multiplicity for nb in self.neighbors)
        if total != self.ell + 1:
            raise ValueError(
                f"degree mismatch: loops + multiplicities = {total}, "
                f"expected ell + 1 = {self.ell + 1}"
            )

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "ell": self.ell,
            "vertex_j": self.vertex_j,
            "loops": self.loops,
            "neighbors": [nb.to_dict() for nb in self.neighbors],
            "distinct_count": self.distinct_count,
            "fp_count": self.fp_count,
            "engine": self.engine,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "NeighborhoodReport":
        report = cls(
            p=int(d["p"]),
            ell=int(d["ell"]),
            vertex_j=str(d["vertex_j"]),
            loops=int(d["loops"]),
            neighbors=tuple(Neighbor.from_dict(nd) for nd in d["neighbors"]),
            engine=str(d["engine"]),
        )
        for key in ("distinct_count", "fp_count"):
            if key in d and int(d[key]) != getattr(report, key):
                raise ValueError(f"inconsistent {key} in serialized report")
        return report

    @classmethod
    def from_json(cls, text: str) -> "NeighborhoodReport":
        return cls.from_dict(json.loads(text))


def csv_rows(reports: Iterable[NeighborhoodReport]) -> list[str]:
    """Flatten reports into CSV lines, one line per distinct neighbor.

    Loop-only vertices still get a row (with empty neighbor columns) so
    that every report is visible in the output.
    """
    rows = ["p,ell,vertex_j,engine,loops,distinct_count,fp_count,"
            "neighbor_j,multiplicity,in_prime_field"]
    for rep in reports:
        head = (f"{rep.p},{rep.ell},{rep.vertex_j},{rep.engine},"
                f"{rep.loops},{rep.distinct_count},{rep.fp_count}")
        if not rep.neighbors:
            rows.append(head + ",,,")
            continue
        for nb in rep.neighbors:
            rows.append(
                head + f",{nb.j},{nb.multiplicity},{str(nb.in_prime_field).lower()}"
            )
    return rows


def text_block(rep: NeighborhoodReport) -> str:
    """Human-oriented rendering used by the CLI's text format."""
    lines = [
        f"vertex j = {rep.vertex_j}  (p={rep.p}, ell={rep.ell}, engine={rep.engine})",
        f"  loops: {rep.loops}",
    ]
    for nb in rep.neighbors:
        tag = " [Fp]" if nb.in_prime_field else ""
        lines.append(f"  -> {nb.j}  x{nb.multiplicity}{tag}")
    lines.append(
        f"  distinct: {rep.distinct_count}, over prime field: {rep.fp_count}"
    )
    return "\n".join(lines)
