"""Case selection: which group, which rank, which subgroup of the center."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .center import CenterGroup, center_of, subgroups_of
from .roots import FAMILIES, RootSystem, build_root_system, check_family_rank

DEFAULT_RANK_CAP = {"A": 11, "B": 9, "C": 9, "D": 9}
HARD_RANK_CAP = 16
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
FIXED_RANK = {"E6": 6, "E7": 7}


class CaseError(ValueError):
    """Malformed case text; ``position`` is a 0-based column in ``text``."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at column {position + 1} of {text!r})"
        super().__init__(message)


@dataclass(frozen=True)
class CaseSpec:
    family: str
    rank: int
    subgroup: str = "full"

    @property
    def name(self) -> str:
        return self.family if self.family.startswith("E") else f"{self.family}{self.rank}"

    def root_system(self) -> RootSystem:
        return build_root_system(self.family, self.rank)

    def group(self) -> CenterGroup:
        return parse_subgroup(self.root_system(), self.subgroup)

    def to_dict(self) -> dict:
        return {"family": self.family, "rank": self.rank, "subgroup": self.subgroup}

    @classmethod
    def from_dict(cls, d: dict) -> "CaseSpec":
        return cls(d["family"], int(d["rank"]), d["subgroup"])


_CYCLIC = re.compile(r"cyclic:(\d*)(.*)")
_ZN = re.compile(r"Z(\d*)(.*)")


def parse_subgroup(rs: RootSystem, text: str) -> CenterGroup:
    """Resolve a subgroup label against the center of ``rs``.

    Accepted: ``full``, ``trivial``, ``cyclic:N`` (A family, N divides r+1),
    ``ZN`` for a cyclic subgroup of order N (``Z2`` in D odd is generated by
    ``z^2``), and ``z1``, ``z2``, ``z1z2``, ``Z2xZ2`` in D even.
    """
    full = center_of(rs)
    subs = {s.label: s for s in subgroups_of(full)}
    t = text.strip()
    if not t:
        raise CaseError("empty subgroup label", text, 0)
    if t == "full":
        return full
    if t in subs:
        return subs[t]
    m = _CYCLIC.fullmatch(t)
    if m:
        digits, rest = m.groups()
        if not digits:
            raise CaseError("expected an integer after 'cyclic:'", text, len("cyclic:"))
        if rest:
            raise CaseError(f"unexpected {rest!r}", text, len("cyclic:") + len(digits))
        if rs.family != "A":
            raise CaseError(f"cyclic:N applies to the A family, not {rs.family}", text, 0)
        n = int(digits)
        if n < 1 or (rs.rank + 1) % n:
            raise CaseError(f"{n} does not divide {rs.rank + 1}", text, len("cyclic:"))
        return subs["trivial" if n == 1 else f"Z{n}"]
    if full.orders == (2, 2) and t.lower() in ("z2xz2", "z1", "z2", "z1z2"):
        return subs["Z2xZ2" if t.lower() == "z2xz2" else t.lower()]
    m = _ZN.fullmatch(t)
    if m and m.group(1):
        digits, rest = m.groups()
        if rest:
            raise CaseError(f"unexpected {rest!r}", text, 1 + len(digits))
        raise CaseError(f"{rs.name} has no subgroup of order {digits}; "
                        f"choose from {', '.join(['full'] + list(subs))}", text, 1)
    raise CaseError(f"unknown subgroup label; choose from {', '.join(['full'] + list(subs))}",
                    text, 0)


def resolve_rank(family: str, rank: int | None, cap: int | None = None) -> int:
    """Validate ``rank`` for ``family`` against the rank cap."""
    if family not in FAMILIES:
        raise CaseError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if family in FIXED_RANK:
        fixed = FIXED_RANK[family]
        if rank is not None and rank != fixed:
            raise CaseError(f"{family} has rank {fixed}, got {rank}")
        return fixed
    if rank is None:
        raise CaseError(f"--rank is required for family {family}")
    limit = DEFAULT_RANK_CAP[family] if cap is None else cap
    if limit > HARD_RANK_CAP:
        raise CaseError(f"rank cap {limit} exceeds {HARD_RANK_CAP}")
    if rank > limit:
        raise CaseError(f"{family}{rank} exceeds the rank cap {limit}; raise it with --max-rank")
    try:
        check_family_rank(family, rank)
    except ValueError as exc:
        raise CaseError(str(exc)) from None
    return rank


def all_cases(max_rank: int | None = None) -> list[CaseSpec]:
    """Every subgroup of every center, classical ranks up to the cap, in a fixed order."""
    if max_rank is not None and max_rank > HARD_RANK_CAP:
        raise CaseError(f"rank cap {max_rank} exceeds {HARD_RANK_CAP}")
    out = []
    for family in FAMILIES:
        if family in FIXED_RANK:
            ranks = [FIXED_RANK[family]]
        else:
            top = DEFAULT_RANK_CAP[family] if max_rank is None else max_rank
            ranks = range(MIN_RANK[family], top + 1)
        for r in ranks:
            rs = build_root_system(family, r)
            for sub in subgroups_of(center_of(rs)):
                out.append(CaseSpec(family, r, sub.label))
    return out
