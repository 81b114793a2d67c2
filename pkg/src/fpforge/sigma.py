"""Finitely described assignments of covers to integer heights, and the
finiteness-property decisions they determine.

A cover registry holds the covers a specification may reference: constructed
entries carry voltage data and recomputable homology certificates, declared
entries carry certified-by-hand homology with a provenance note.  A sigma
specification then names an entry for every height through a finite
description: finitely many exceptions, eventually-periodic tails, a sparse
power-tower rule, or a prime-indexed congruence rule whose members carry
height-dependent torsion symbolically.

The decision procedures only ever consult which entries occur at infinitely
many heights, so verdicts are independent of the deterministic round-robin
schedule that realizes recurrent tails.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from math import isqrt
from typing import Mapping, Sequence

from .covers import CoverComplex, VoltageAssignment, build_cover, normal_generators
from .groups import SpanningTreeWords, coset_enumerate
from .homology import (
    HomologySummary,
    RingSpec,
    _is_prime,
    field_summary_from_integral,
    reduced_homology,
)


class SigmaError(ValueError):
    """Raised for malformed specifications or unmet decision hypotheses."""


class MissingCertificateError(SigmaError):
    """Raised when a decision needs homology data the registry does not certify."""


# ---------------------------------------------------------------------------
# Registry


@dataclass(frozen=True, eq=True)
class CoverRegistryEntry:
    """One cover of the base complex, with the data the decisions consume.

    ``certified_up_to`` bounds the degrees the homology certificates cover:
    an integer N certifies degrees < N, the string "all" certifies every
    degree (automatic for constructed entries, whose complexes are finite).
    The quotient flags assert properties of the deck quotient group; they are
    inputs with provenance, not computed facts.
    """

    id: str
    kind: str  # "constructed" | "declared"
    degree: int | str  # covering degree, or "infinite"
    homology: Mapping[str, HomologySummary]
    certified_up_to: int | str
    simply_connected: bool | None
    quotient_is_finite: bool
    quotient_fp_certified: bool = False
    quotient_finitely_presented: bool = True
    note: str = ""
    voltage: VoltageAssignment | None = None

    def __post_init__(self):
        if self.kind not in ("constructed", "declared"):
            raise SigmaError(f"unknown entry kind {self.kind!r}")
        if self.kind == "constructed" and self.voltage is None:
            raise SigmaError(f"constructed entry {self.id!r} needs voltage data")
        if self.kind == "declared" and not self.note:
            raise SigmaError(f"declared entry {self.id!r} needs a provenance note")

    def homology_over(self, ring: RingSpec) -> HomologySummary:
        if ring.key in self.homology:
            return self.homology[ring.key]
        if ring.is_field and "Z" in self.homology:
            return field_summary_from_integral(self.homology["Z"], ring)
        raise MissingCertificateError(
            f"entry {self.id!r} has no homology certificate over {ring}"
        )

    def covers_degrees_below(self, k: int | str) -> bool:
        if self.certified_up_to == "all":
            return True
        if k == "FP":
            return False
        return isinstance(self.certified_up_to, int) and self.certified_up_to >= k

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "degree": self.degree,
            "homology": [s.to_json_dict() for _, s in sorted(self.homology.items())],
            "certified_up_to": self.certified_up_to,
            "simply_connected": self.simply_connected,
            "quotient_is_finite": self.quotient_is_finite,
            "quotient_fp_certified": self.quotient_fp_certified,
            "quotient_finitely_presented": self.quotient_finitely_presented,
            "note": self.note,
            "voltage": self.voltage.to_json_dict() if self.voltage else None,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "CoverRegistryEntry":
        summaries = [HomologySummary.from_json_dict(s) for s in data.get("homology", [])]
        return cls(
            id=data["id"],
            kind=data["kind"],
            degree=data["degree"],
            homology={s.ring.key: s for s in summaries},
            certified_up_to=data["certified_up_to"],
            simply_connected=data.get("simply_connected"),
            quotient_is_finite=data["quotient_is_finite"],
            quotient_fp_certified=data.get("quotient_fp_certified", False),
            quotient_finitely_presented=data.get("quotient_finitely_presented", True),
            note=data.get("note", ""),
            voltage=VoltageAssignment.from_json_dict(data["voltage"]) if data.get("voltage") else None,
        )


def materialize(entry: CoverRegistryEntry) -> CoverComplex:
    if entry.voltage is None:
        raise SigmaError(f"entry {entry.id!r} has no voltage data to build")
    return build_cover(entry.voltage)


def constructed_entry(
    id: str,
    voltage: VoltageAssignment,
    *,
    quotient_is_finite: bool = True,
    note: str = "",
    simple_connectivity_budget: int = 4000,
) -> CoverRegistryEntry:
    """Build a cover, compute its integral certificate, and wrap it as an entry.

    Simple connectivity is certified by coset enumeration when it completes at
    index one; a nonzero first homology certifies the negative; otherwise the
    field is left undetermined.
    """
    cover = build_cover(voltage)
    summary = reduced_homology(cover.total, RingSpec.Z())
    simply_connected: bool | None
    if not summary.is_trivial_in(1):
        simply_connected = False
    else:
        index = coset_enumerate(SpanningTreeWords(cover.total).presentation(), (), simple_connectivity_budget)
        simply_connected = True if index == 1 else None
    return CoverRegistryEntry(
        id=id,
        kind="constructed",
        degree=voltage.degree,
        homology={"Z": summary},
        certified_up_to="all",
        simply_connected=simply_connected,
        quotient_is_finite=quotient_is_finite,
        note=note,
        voltage=voltage,
    )


def declared_entry(
    id: str,
    *,
    degree: int | str,
    ranks: Sequence[int],
    torsion: Sequence[Sequence[int]],
    certified_up_to: int | str,
    simply_connected: bool | None,
    quotient_is_finite: bool,
    note: str,
    quotient_fp_certified: bool = False,
    quotient_finitely_presented: bool = True,
) -> CoverRegistryEntry:
    summary = HomologySummary(RingSpec.Z(), tuple(ranks), tuple(tuple(t) for t in torsion))
    return CoverRegistryEntry(
        id=id,
        kind="declared",
        degree=degree,
        homology={"Z": summary},
        certified_up_to=certified_up_to,
        simply_connected=simply_connected,
        quotient_is_finite=quotient_is_finite,
        quotient_fp_certified=quotient_fp_certified,
        quotient_finitely_presented=quotient_finitely_presented,
        note=note,
    )


def validate_registry(registry: Mapping[str, CoverRegistryEntry]) -> list[str]:
    """Recompute constructed certificates and sanity-check declared ones."""
    problems = []
    for eid, entry in sorted(registry.items()):
        if entry.id != eid:
            problems.append(f"{eid}: key does not match entry id {entry.id!r}")
        if entry.kind == "constructed":
            cover = materialize(entry)
            if not cover.total.is_connected():
                problems.append(f"{eid}: constructed cover is disconnected")
            if entry.degree != entry.voltage.degree:
                problems.append(f"{eid}: stored degree disagrees with voltage degree")
            fresh = reduced_homology(cover.total, RingSpec.Z())
            stored = entry.homology.get("Z")
            if stored != fresh:
                problems.append(f"{eid}: stored integral certificate disagrees with recomputation")
            for key, summary in entry.homology.items():
                if key == "Z":
                    continue
                if summary != reduced_homology(cover.total, RingSpec.parse(key)):
                    problems.append(f"{eid}: stored {key} certificate disagrees with recomputation")
        else:
            if "Z" not in entry.homology and not entry.homology:
                problems.append(f"{eid}: declared entry carries no homology data")
    return problems


# ---------------------------------------------------------------------------
# Sigma specifications


@dataclass(frozen=True)
class Tail:
    """Eventually-periodic half-line rule: a constant entry or a recurrent set
    realized round-robin by |height|."""

    kind: str  # "constant" | "recurrent"
    ids: tuple[str, ...]

    @classmethod
    def constant(cls, id: str) -> "Tail":
        return cls("constant", (id,))

    @classmethod
    def recurrent(cls, ids: Sequence[str]) -> "Tail":
        ids = tuple(ids)
        if not ids:
            raise SigmaError("recurrent tail needs at least one entry")
        return cls("recurrent", ids)

    def value_at(self, position: int) -> str:
        if self.kind == "constant":
            return self.ids[0]
        return self.ids[(position - 1) % len(self.ids)]

    def period(self) -> int:
        return 1 if self.kind == "constant" else len(self.ids)

    def to_json_dict(self) -> dict:
        return {self.kind: self.ids[0] if self.kind == "constant" else list(self.ids)}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Tail":
        if "constant" in data:
            return cls.constant(data["constant"])
        return cls.recurrent(data["recurrent"])


@dataclass(frozen=True)
class PowerTowerRule:
    """Sparse positive-height rule: entries sit exactly at the tower heights
    C_i^(2^i); every other positive height gets the default entry.

    ``recurrent`` names the entries that the symbolic extension of the rule
    places at infinitely many heights beyond the finite constant window.
    """

    constants: tuple[int, ...]
    assignments: Mapping[int, str]  # tower index -> entry id
    default: str
    recurrent: tuple[str, ...] = ()

    def __post_init__(self):
        if any(c < 1 for c in self.constants):
            raise SigmaError("tower constants must be positive")
        if any(b <= a for a, b in zip(self.constants, self.constants[1:])):
            raise SigmaError("tower constants must strictly increase")
        for i in self.assignments:
            if not 1 <= i <= len(self.constants):
                raise SigmaError(f"assignment index {i} outside the constant window")

    def heights(self) -> dict[int, int]:
        return {i + 1: c ** (2 ** (i + 1)) for i, c in enumerate(self.constants)}

    def value_at(self, n: int) -> str:
        for i, h in self.heights().items():
            if n == h and i in self.assignments:
                return self.assignments[i]
        return self.default

    def to_json_dict(self) -> dict:
        return {
            "constants": list(self.constants),
            "assignments": sorted([i, e] for i, e in self.assignments.items()),
            "default": self.default,
            "recurrent": sorted(self.recurrent),
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PowerTowerRule":
        return cls(
            tuple(data["constants"]),
            {int(i): e for i, e in data.get("assignments", [])},
            data["default"],
            tuple(data.get("recurrent", [])),
        )


@dataclass(frozen=True)
class PrimeCongruenceRule:
    """Height rule for a prime-indexed congruence family.

    Heights that are primes above two receive the family member for that
    prime (a registered entry when present, otherwise the symbolic id
    ``family_id:p``); every other height receives the default entry.
    Symbolically, the member at prime p has reduced homology concentrated in
    ``torsion_degree`` where it equals (Z/p)^multiplicity, certified for
    degrees below ``certified_up_to``; its deck quotient is finite.
    """

    members: Mapping[int, str]
    default: str
    family_id: str = "Lp"
    torsion_degree: int = 1
    torsion_multiplicity: int = 1
    certified_up_to: int = 2
    members_simply_connected: bool = False

    def __post_init__(self):
        for p in self.members:
            if p <= 2 or not _is_prime(p):
                raise SigmaError(f"family member index {p} must be a prime above two")
        if self.torsion_multiplicity < 1:
            raise SigmaError("family multiplicity must be at least one")

    def applies_at(self, n: int) -> bool:
        return n > 2 and _is_prime(n)

    def value_at(self, n: int) -> str:
        if self.applies_at(n):
            return self.members.get(n, f"{self.family_id}:{n}")
        return self.default

    def to_json_dict(self) -> dict:
        return {
            "members": sorted([p, e] for p, e in self.members.items()),
            "default": self.default,
            "family_id": self.family_id,
            "torsion_degree": self.torsion_degree,
            "torsion_multiplicity": self.torsion_multiplicity,
            "certified_up_to": self.certified_up_to,
            "members_simply_connected": self.members_simply_connected,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PrimeCongruenceRule":
        return cls(
            {int(p): e for p, e in data.get("members", [])},
            data["default"],
            data.get("family_id", "Lp"),
            data.get("torsion_degree", 1),
            data.get("torsion_multiplicity", 1),
            data.get("certified_up_to", 2),
            data.get("members_simply_connected", False),
        )


class SigmaSpec:
    """A finitely described assignment of registry entries to all heights.

    Resolution order at height n: explicit exceptions, the prime rule (both
    signs), the power-tower rule (positive heights), the base entry at zero,
    then the half-line tails.  At most one positive-side mechanism may be
    active, and every referenced id (symbolic family members aside) must be
    registered.
    """

    __slots__ = ("registry", "base_id", "exceptions", "positive_tail", "negative_tail", "power_rule", "prime_rule")

    def __init__(
        self,
        registry: Mapping[str, CoverRegistryEntry],
        base_id: str,
        exceptions: Mapping[int, str] | None = None,
        positive_tail: Tail | None = None,
        negative_tail: Tail | None = None,
        power_rule: PowerTowerRule | None = None,
        prime_rule: PrimeCongruenceRule | None = None,
    ):
        self.registry = dict(registry)
        self.base_id = base_id
        self.exceptions = {int(n): e for n, e in (exceptions or {}).items()}
        self.positive_tail = positive_tail
        self.negative_tail = negative_tail
        self.power_rule = power_rule
        self.prime_rule = prime_rule

        if prime_rule is not None and (positive_tail or negative_tail or power_rule):
            raise SigmaError("a prime rule governs both signs; no tails or tower rule allowed")
        if power_rule is not None and positive_tail is not None:
            raise SigmaError("tower rule and positive tail cannot both be active")
        if prime_rule is None:
            if power_rule is None and positive_tail is None:
                raise SigmaError("positive heights are not covered")
            if negative_tail is None:
                raise SigmaError("negative heights are not covered")
        for eid in self._referenced_ids():
            if eid not in self.registry:
                raise SigmaError(f"referenced entry {eid!r} is not in the registry")

    def _referenced_ids(self) -> set[str]:
        out = {self.base_id}
        out.update(self.exceptions.values())
        for tail in (self.positive_tail, self.negative_tail):
            if tail:
                out.update(tail.ids)
        if self.power_rule:
            out.add(self.power_rule.default)
            out.update(self.power_rule.assignments.values())
            out.update(self.power_rule.recurrent)
        if self.prime_rule:
            out.add(self.prime_rule.default)
            out.update(self.prime_rule.members.values())
        return out

    def recurrent_ids(self) -> set[str]:
        """Entries occurring at infinitely many heights (symbolic family aside)."""
        out: set[str] = set()
        for tail in (self.positive_tail, self.negative_tail):
            if tail:
                out.update(tail.ids)
        if self.power_rule:
            out.add(self.power_rule.default)
            out.update(self.power_rule.recurrent)
        if self.prime_rule:
            out.add(self.prime_rule.default)
        return out

    def value(self, n: int) -> str:
        n = int(n)
        if n in self.exceptions:
            return self.exceptions[n]
        if self.prime_rule is not None:
            return self.prime_rule.value_at(n)
        if n > 0 and self.power_rule is not None:
            return self.power_rule.value_at(n)
        if n == 0:
            return self.base_id
        if n > 0:
            return self.positive_tail.value_at(n)
        return self.negative_tail.value_at(-n)

    def to_json_dict(self) -> dict:
        return {
            "registry": {"entries": [e.to_json_dict() for _, e in sorted(self.registry.items())]},
            "base_id": self.base_id,
            "exceptions": sorted([n, e] for n, e in self.exceptions.items()),
            "positive_tail": self.positive_tail.to_json_dict() if self.positive_tail else None,
            "negative_tail": self.negative_tail.to_json_dict() if self.negative_tail else None,
            "power_rule": self.power_rule.to_json_dict() if self.power_rule else None,
            "prime_rule": self.prime_rule.to_json_dict() if self.prime_rule else None,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping, registry: Mapping[str, CoverRegistryEntry] | None = None) -> "SigmaSpec":
        if registry is None:
            reg_data = data["registry"]
            entries = [CoverRegistryEntry.from_json_dict(e) for e in reg_data["entries"]]
            registry = {e.id: e for e in entries}
        return cls(
            registry,
            data["base_id"],
            {int(n): e for n, e in data.get("exceptions", [])},
            Tail.from_json_dict(data["positive_tail"]) if data.get("positive_tail") else None,
            Tail.from_json_dict(data["negative_tail"]) if data.get("negative_tail") else None,
            PowerTowerRule.from_json_dict(data["power_rule"]) if data.get("power_rule") else None,
            PrimeCongruenceRule.from_json_dict(data["prime_rule"]) if data.get("prime_rule") else None,
        )

    def __repr__(self) -> str:
        return f"SigmaSpec(base={self.base_id!r}, {len(self.registry)} registry entries)"


def sigma_value(s: SigmaSpec, n: int) -> str:
    """Entry id assigned to height n."""
    return s.value(n)


# ---------------------------------------------------------------------------
# Decisions


@dataclass(frozen=True)
class FpVerdict:
    holds: bool
    ring: str
    k: int | str
    witness_entry: str | None = None
    witness_degree: int | None = None

    def __str__(self) -> str:
        label = f"FP_{self.k}({self.ring})" if self.k != "FP" else f"FP({self.ring})"
        if self.holds:
            return f"{label}: YES"
        return f"{label}: NO (entry {self.witness_entry}, degree {self.witness_degree})"

    def to_json_dict(self) -> dict:
        return {
            "property": f"FP_{self.k}" if self.k != "FP" else "FP",
            "ring": self.ring,
            "verdict": "YES" if self.holds else "NO",
            "witness_entry": self.witness_entry,
            "witness_degree": self.witness_degree,
        }


def _check_fp_hypothesis(s: SigmaSpec) -> None:
    for eid in sorted(s._referenced_ids()):
        entry = s.registry[eid]
        if not (entry.quotient_is_finite or entry.quotient_fp_certified):
            raise SigmaError(
                f"entry {eid!r} has no finiteness certificate for its deck quotient"
            )


def fp_decide(s: SigmaSpec, R: RingSpec, k: int | str) -> FpVerdict:
    """Decide the k-th finiteness property over R for the group the spec describes.

    YES exactly when every recurrently occurring entry has vanishing reduced
    homology over R in all degrees below k ("FP" means all degrees).  The NO
    verdict names a witness entry and degree.  Finitely many exceptional
    heights never matter.
    """
    if k != "FP":
        k = int(k)
        if k < 1:
            raise SigmaError("k must be at least 1, or the string 'FP'")
    _check_fp_hypothesis(s)

    for eid in sorted(s.recurrent_ids()):
        entry = s.registry[eid]
        if not entry.covers_degrees_below(k):
            raise MissingCertificateError(
                f"recurrent entry {eid!r} certifies too few degrees for k={k}"
            )
        summary = entry.homology_over(R)
        top = summary.max_degree if k == "FP" else k - 1
        for i in range(top + 1):
            if not summary.is_trivial_in(i):
                return FpVerdict(False, R.key, k, eid, i)

    fam = s.prime_rule
    if fam is not None:
        if k == "FP":
            raise MissingCertificateError("the prime family certifies only finitely many degrees")
        if fam.certified_up_to < k:
            raise MissingCertificateError("the prime family does not certify enough degrees")
        # The family places (Z/p)^m in its torsion degree at every family
        # prime p, so over Z infinitely many heights fail; over F_q only the
        # single height q can, and over Q none do.
        if fam.torsion_degree < k and R.tag == "Z":
            return FpVerdict(False, R.key, k, f"{fam.family_id}:*", fam.torsion_degree)
    return FpVerdict(True, R.key, k)


@dataclass(frozen=True)
class PresentabilityVerdict:
    holds: bool
    witness_entry: str | None = None

    def __str__(self) -> str:
        if self.holds:
            return "finitely presented: YES"
        return f"finitely presented: NO (entry {self.witness_entry})"

    def to_json_dict(self) -> dict:
        return {
            "property": "finitely_presented",
            "verdict": "YES" if self.holds else "NO",
            "witness_entry": self.witness_entry,
        }


def finitely_presented_decide(s: SigmaSpec) -> PresentabilityVerdict:
    """YES exactly when all but finitely many heights carry simply connected covers."""
    for eid in sorted(s._referenced_ids()):
        entry = s.registry[eid]
        if not (entry.quotient_is_finite or entry.quotient_finitely_presented):
            raise SigmaError(f"entry {eid!r} has no finite-presentability certificate for its quotient")
    for eid in sorted(s.recurrent_ids()):
        entry = s.registry[eid]
        if entry.simply_connected is None:
            raise MissingCertificateError(f"entry {eid!r} has undetermined simple connectivity")
        if not entry.simply_connected:
            return PresentabilityVerdict(False, eid)
    if s.prime_rule is not None and not s.prime_rule.members_simply_connected:
        return PresentabilityVerdict(False, f"{s.prime_rule.family_id}:*")
    return PresentabilityVerdict(True)


# ---------------------------------------------------------------------------
# Builders


def sigma_field_example(
    registry: Mapping[str, CoverRegistryEntry],
    *,
    base_id: str = "Lperf",
    member_ids: Mapping[int, str] | None = None,
    family_multiplicity: int = 1,
    family_id: str = "Lp",
) -> SigmaSpec:
    """Prime heights above two get the congruence-family member, all others the base.

    Each prime is used at exactly one height, but the family as a whole
    recurs, which is what separates the integral verdict from the field ones.
    The base must have vanishing first homology over every ring, which is why
    the default is the perfect-fundamental-group stand-in.
    """
    member_ids = dict(member_ids or {})
    rule = PrimeCongruenceRule(
        members=member_ids,
        default=base_id,
        family_id=family_id,
        torsion_degree=1,
        torsion_multiplicity=family_multiplicity,
    )
    return SigmaSpec(registry, base_id, prime_rule=rule)


def sigma_prime_set(
    S: Sequence[int],
    registry: Mapping[str, CoverRegistryEntry],
    *,
    base_id: str = "L",
    sl_id: str = "Lsl",
    member_ids: Mapping[int, str] | None = None,
) -> SigmaSpec:
    """Negative heights get the index-two cover; positive heights cycle through
    the members for the chosen primes (the prime two maps to the base itself).

    An empty prime set sends the positive side to the index-two cover as well.
    """
    member_ids = dict(member_ids or {})
    primes = sorted(set(int(p) for p in S))
    for p in primes:
        if not _is_prime(p):
            raise SigmaError(f"{p} is not prime")
    if not primes:
        positive = Tail.constant(sl_id)
    else:
        ids = []
        for p in primes:
            if p == 2:
                ids.append(member_ids.get(2, base_id))
            else:
                if p not in member_ids:
                    raise SigmaError(f"registry member for prime {p} not supplied")
                ids.append(member_ids[p])
        positive = Tail.recurrent(ids)
    return SigmaSpec(
        registry,
        base_id,
        positive_tail=positive,
        negative_tail=Tail.constant(sl_id),
    )


def _alpha_exceeds(C: int, r: int, d: int) -> bool:
    """C * sqrt(2/(d+1)) > r, decided by integer comparison of squares."""
    return 2 * C * C > r * r * (d + 1)


def choose_constants(d: int, r_bounds: Sequence[int] | None = None, m: int = 1) -> tuple[int, ...]:
    """Lexicographically minimal integers meeting the growth conditions.

    Position n must exceed its predecessor, clear the fixed threshold at
    n = 1, and dominate the loop-length bounds r at positions n-1 and n.
    All comparisons against the irrational scale factor are exact.
    """
    if d < 1 or m < 1:
        raise SigmaError("dimension and count must be positive")
    r = list(r_bounds or [])
    if any(x < 0 for x in r):
        raise SigmaError("loop-length bounds must be nonnegative")
    r += [0] * (m + 1 - len(r))
    out: list[int] = []
    prev = 0
    for n in range(1, m + 1):
        C = prev + 1
        while True:
            ok = _alpha_exceeds(C, r[n - 1], d) and _alpha_exceeds(C, r[n], d)
            if n == 1:
                ok = ok and _alpha_exceeds(C, 3, d)
            if ok:
                break
            C += 1
        out.append(C)
        prev = C
    return tuple(out)


def sigma_power_tower(
    F: Sequence[int],
    constants: Sequence[int],
    registry: Mapping[str, CoverRegistryEntry],
    primes: Sequence[int],
    *,
    base_id: str = "L",
    sl_id: str = "Lsl",
    universal_id: str = "Luniv",
    member_ids: Mapping[int, str] | None = None,
) -> SigmaSpec:
    """Sparse spec with entries only at the tower heights.

    Odd tower indices always carry a member (cycling through the chosen
    primes); even index 2n carries the index-two cover exactly when n is in F.
    Height zero is the base; everything else is the universal-cover entry.
    """
    member_ids = dict(member_ids or {})
    primes = [int(p) for p in primes]
    if not primes:
        raise SigmaError("the tower construction needs a nonempty prime list")
    for p in primes:
        if not _is_prime(p):
            raise SigmaError(f"{p} is not prime")
    constants = tuple(int(c) for c in constants)
    m = len(constants)
    fset = set(int(x) for x in F)

    def entry_for_b(b: int) -> str:
        if b == 1:
            return sl_id
        if b == 2:
            return member_ids.get(2, base_id)
        if b not in member_ids:
            raise SigmaError(f"registry member for prime {b} not supplied")
        return member_ids[b]

    assignments: dict[int, str] = {}
    for i in range(1, m + 1):
        if i % 2 == 1:
            b = primes[((i - 1) // 2) % len(primes)]
            assignments[i] = entry_for_b(b)
        elif i // 2 in fset:
            assignments[i] = entry_for_b(1)
    rule = PowerTowerRule(
        constants=constants,
        assignments=assignments,
        default=universal_id,
        recurrent=tuple(sorted({entry_for_b(p) for p in primes})),
    )
    heights = sorted(rule.heights().values())
    if any(b <= a for a, b in zip(heights, heights[1:])):
        raise SigmaError("tower heights must strictly increase")
    return SigmaSpec(
        registry,
        base_id,
        exceptions={0: base_id},
        power_rule=rule,
        negative_tail=Tail.constant(universal_id),
    )


# ---------------------------------------------------------------------------
# Quantities for the spectrum arguments


def normal_generating_length_bound(c: CoverComplex, budget: int = 4000) -> int:
    """Upper bound for the shortest max-length normal generating set of the cover.

    Zero when the total space is certifiably simply connected (enumeration
    completes at index one); otherwise the longest loop produced by the
    spanning-tree generators.  Always an upper bound for the true minimum.
    """
    if not c.total.is_connected():
        raise SigmaError("the bound needs a connected cover")
    presentation = SpanningTreeWords(c.total).presentation()
    if coset_enumerate(presentation, (), budget) == 1:
        return 0
    loops = normal_generators(c)
    return max((len(p) - 1 for p in loops), default=0)


def min_kernel_length_bound(M: int | float, d: int) -> float:
    """M * sqrt(2/(d+1)), exact when the radicand is a perfect square."""
    if M < 0:
        raise SigmaError("M must be nonnegative")
    if d < 1:
        raise SigmaError("dimension must be positive")
    M = int(M)
    num = 2 * M * M
    den = d + 1
    if num % den == 0:
        root = isqrt(num // den)
        if root * root == num // den:
            return float(root)
    return math.sqrt(num / den)


def _generic_value(spec: SigmaSpec, sign: int, residue: int, prime_above_2: bool, period: int):
    """Value token at any non-explicit height of the given type.

    A type is (sign, |n| mod period, primality above two); away from the
    explicit heights the assignment depends on nothing else.  Symbolic family
    members are tokenized by family id, since two specs agree at every
    non-member prime exactly when their families coincide.
    """
    if spec.prime_rule is not None:
        if prime_above_2:
            return ("symbolic", spec.prime_rule.family_id)
        return ("id", spec.prime_rule.default)
    if sign > 0 and spec.power_rule is not None:
        return ("id", spec.power_rule.default)
    tail = spec.positive_tail if sign > 0 else spec.negative_tail
    if tail.kind == "constant":
        return ("id", tail.ids[0])
    return ("id", tail.ids[(residue - 1) % len(tail.ids)])


def min_disagreement_height(a: SigmaSpec, b: SigmaSpec) -> int | float:
    """Smallest |n| where the two specs assign different entries; inf if equal.

    Explicit heights (exceptions, tower heights, registered family members,
    zero) are evaluated directly.  Every other height is covered by finitely
    many types (sign, residue modulo the joint tail period, primality), whose
    values are compared symbolically; a disagreeing type contributes its
    smallest non-explicit representative.  No unbounded scan is needed even
    when tower heights are astronomically large.
    """
    if a.registry != b.registry:
        raise SigmaError("specs compare only over a common registry")
    explicit: set[int] = {0}
    for s in (a, b):
        explicit.update(s.exceptions)
        if s.power_rule:
            explicit.update(s.power_rule.heights().values())
        if s.prime_rule:
            explicit.update(s.prime_rule.members.keys())
    best: int | float = math.inf
    for n in explicit:
        if a.value(n) != b.value(n):
            best = min(best, abs(n))

    period = 1
    for s in (a, b):
        for tail in (s.positive_tail, s.negative_tail):
            if tail:
                period = math.lcm(period, tail.period())
    cap = 10_000 * period + 10_000
    for sign in (1, -1):
        for residue in range(period):
            for prime_above_2 in ((False,) if sign < 0 else (False, True)):
                va = _generic_value(a, sign, residue, prime_above_2, period)
                vb = _generic_value(b, sign, residue, prime_above_2, period)
                if va == vb:
                    continue
                magnitude = residue if residue else period
                while magnitude <= cap:
                    n = sign * magnitude
                    if n not in explicit and (n > 2 and _is_prime(n)) == prime_above_2:
                        best = min(best, magnitude)
                        break
                    magnitude += period
                # types with no representative below the cap are unrealized
    return best


def example_registry(multiplicity: int = 1) -> dict[str, CoverRegistryEntry]:
    """Desk-scale registry of declared arithmetic stand-ins.

    The base abelianizes to order two, its index-two cover has perfect
    fundamental group, the universal-cover entry is simply connected with a
    finitely presented deck quotient, and each congruence member carries
    p-torsion of the given multiplicity in degree one.
    """
    entries = [
        declared_entry(
            "L",
            degree=1,
            ranks=(0, 0),
            torsion=((), (2,)),
            certified_up_to=2,
            simply_connected=False,
            quotient_is_finite=True,
            note="base complex; fundamental group abelianizes to order two (determinant sign)",
        ),
        declared_entry(
            "Lsl",
            degree=2,
            ranks=(0, 0),
            torsion=((), ()),
            certified_up_to=2,
            simply_connected=False,
            quotient_is_finite=True,
            note="index-two cover with perfect fundamental group; first homology vanishes",
        ),
        declared_entry(
            "Lperf",
            degree=1,
            ranks=(0, 0),
            torsion=((), ()),
            certified_up_to=2,
            simply_connected=False,
            quotient_is_finite=True,
            note="alternative base with perfect fundamental group; first homology vanishes",
        ),
        declared_entry(
            "Luniv",
            degree="infinite",
            ranks=(0, 0),
            torsion=((), ()),
            certified_up_to=2,
            simply_connected=True,
            quotient_is_finite=False,
            quotient_fp_certified=True,
            quotient_finitely_presented=True,
            note="universal cover; deck quotient is an arithmetic group, finitely presented and FP",
        ),
    ]
    for p in (3, 5, 7):
        entries.append(
            declared_entry(
                f"Lp{p}",
                degree=p**3 * (p**2 - 1) * (p**3 - 1),
                ranks=(0, 0),
                torsion=((), (p,) * multiplicity),
                certified_up_to=2,
                simply_connected=False,
                quotient_is_finite=True,
                note=(
                    f"desk-scale congruence-cover stand-in carrying Z/{p} torsion in degree one; "
                    f"the arithmetic original has first homology (Z/{p})^8 by Lee-Szczarba"
                ),
            )
        )
    return {e.id: e for e in entries}


def dump_sigma_spec(s: SigmaSpec) -> str:
    return json.dumps(s.to_json_dict(), sort_keys=True, indent=2) + "\n"


def load_sigma_spec(path) -> SigmaSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return SigmaSpec.from_json_dict(json.load(fh))


def dump_registry(registry: Mapping[str, CoverRegistryEntry]) -> str:
    payload = {"entries": [e.to_json_dict() for _, e in sorted(registry.items())]}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def load_registry(path) -> dict[str, CoverRegistryEntry]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    entries = [CoverRegistryEntry.from_json_dict(e) for e in data["entries"]]
    return {e.id: e for e in entries}
