"""Closed-form bounds on exceptional primes for the family of level s*t^n.

Everything here depends only on (s, t, n): no eigenvalue is needed. The
trusted inputs (level raising at a semistable prime, the large-image
theorems, the weight-2 small-image rule) are recorded as rule identifiers
in each justification trail rather than re-proved; :data:`TRUSTED_RULES`
describes them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import InvalidInputError, OddExponentError
from .numth import (
    Factorization,
    cyclotomic_value,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    multiplicative_order,
    primes_up_to,
    quadratic_residue_symbol,
)

DEFAULT_ELL_MAX = 1000

TRUSTED_RULES = {
    "level-raising": (
        "A mod-ell representation unramified at a prime s that exactly divides the level "
        "forces a_s = +-(s+1) mod ell (level raising/lowering at a semistable prime)."
    ),
    "residual-conductor": (
        "For ell > 3 the residual conductor at t equals the full t-part t^n of the level."
    ),
    "dihedral-shape": (
        "A dihedral residual image for this family must be induced from the quadratic field "
        "ramified only at t, and is unramified at s since dihedral images have no unipotents."
    ),
    "weight-2-small-image": (
        "In weight 2 the projective images A4, S4, A5 cannot occur for ell >= 7."
    ),
    "small-image-ell-5": (
        "For ell = 5 the large t-power ramification rules out A4, S4, A5 (asserted for every "
        "member of the family; derived here only when t^(u-1) exceeds 5)."
    ),
    "non-cm": "Semistability at s rules out complex multiplication for every member.",
}


class Status(str, enum.Enum):
    REDUCIBLE_CANDIDATE = "reducible-candidate"
    DIHEDRAL_CANDIDATE = "dihedral-candidate"
    DIHEDRAL_EXCLUDED = "dihedral-excluded"
    SMALL_IMAGE_EXCLUDED = "small-image-excluded"
    LARGE_GUARANTEED = "large-guaranteed"
    OUT_OF_SCOPE = "out-of-scope"


@dataclass(frozen=True)
class FamilyMember:
    """Level s * t^n, weight 2, trivial character.

    s must be a primitive root mod t^2 (hence mod every t^u, and a
    non-residue mod t); both facts drive the arguments below.
    """

    n: int
    s: int = 2
    t: int = 3

    def __post_init__(self):
        s, t, n = self.s, self.t, self.n
        if not (is_prime(s) and is_prime(t)) or s == t:
            raise InvalidInputError(f"s={s} and t={t} must be distinct primes")
        if t == 2:
            raise InvalidInputError("t must be odd")
        if n < 4:
            raise InvalidInputError(f"level exponent n={n} must be >= 4")
        if multiplicative_order(s, t * t) != euler_phi(t * t):
            raise InvalidInputError(f"s={s} is not a primitive root modulo {t}^2")
        if quadratic_residue_symbol(s, t) != -1:
            raise InvalidInputError(f"s={s} is a square modulo {t}")

    @property
    def level(self) -> int:
        return self.s * self.t**self.n

    @property
    def u(self) -> int:
        if self.n % 2:
            raise OddExponentError(
                f"n={self.n} is odd; the reducible-prime bound is only derived for even n "
                "(a reducible shape chi*psi + psi^-1 has conductor cond(psi)^2, an even power of t)"
            )
        return self.n // 2

    def as_dict(self) -> dict:
        return {"s": self.s, "t": self.t, "n": self.n, "level": self.level}


@dataclass(frozen=True)
class CandidateSet:
    primes: tuple[int, ...]
    complete: bool
    modulus: int  # t^(u-1)
    exponent: int  # 2 * t^(u-1)
    factorizations: tuple[Factorization, ...] = ()

    def __contains__(self, ell: int) -> bool:
        return ell in self.primes

    def __iter__(self):
        return iter(self.primes)


def _reducible_exponent(member: FamilyMember) -> tuple[int, int]:
    m = member.t ** (member.u - 1)
    return m, 2 * m


def reducible_candidates(member: FamilyMember) -> CandidateSet:
    """Primes ell > t, ell != s, with t^(u-1) | ell-1 and ell | s^(2 t^(u-1)) - 1.

    The big number is split into cyclotomic values Phi_d(s), d | 2 t^(u-1),
    before factoring. If some piece cannot be factored the flag
    ``complete`` is False and only certified candidates are listed.
    """
    m, e = _reducible_exponent(member)
    facs = tuple(factorize(cyclotomic_value(d, member.s)) for d in divisors(e))
    found = set()
    for fac in facs:
        for ell in fac.primes:
            if ell > member.t and ell != member.s and (ell - 1) % m == 0:
                found.add(ell)
    return CandidateSet(
        primes=tuple(sorted(found)),
        complete=all(f.complete for f in facs),
        modulus=m,
        exponent=e,
        factorizations=facs,
    )


def is_reducible_candidate(ell: int, member: FamilyMember) -> bool:
    """Membership test straight from the two congruences; needs no factoring."""
    m, e = _reducible_exponent(member)
    return (
        is_prime(ell)
        and ell > member.t
        and ell != member.s
        and (ell - 1) % m == 0
        and pow(member.s, e, ell) == 1
    )


def brute_force_reducible_candidates(member: FamilyMember) -> tuple[int, ...]:
    """Oracle: scan every prime up to s^(2 t^(u-1)) - 1 with modular powering.

    Independent of the factoring path; only practical for u <= 3.
    """
    m, e = _reducible_exponent(member)
    bound = member.s**e - 1
    if bound > 50_000_000:
        raise InvalidInputError(f"brute-force scan to {bound} is too large")
    return tuple(
        ell
        for ell in primes_up_to(bound)
        if ell > member.t and ell != member.s and (ell - 1) % m == 0 and pow(member.s, e, ell) == 1
    )


def dihedral_candidates(member: FamilyMember) -> tuple[int, ...]:
    """Primes ell > 3 where the dihedral argument leaves a gap: ell | s + 1.

    Trace zero at s (s inert in the quadratic field) must equal +-(s+1)
    by level raising, so a dihedral ell divides s + 1.
    """
    if quadratic_residue_symbol(member.s, member.t) != -1:
        raise InvalidInputError(f"s={member.s} is a square mod t={member.t}: dihedral primes are unbounded by this method")
    return tuple(p for p in factorize(member.s + 1).primes if p > 3 and p != member.t)


@dataclass(frozen=True)
class RuleOutcome:
    rule: str
    outcome: str
    detail: str
    trusted: bool = False

    def as_dict(self) -> dict:
        return {"rule": self.rule, "outcome": self.outcome, "detail": self.detail, "trusted": self.trusted}


def small_image_exclusion(ell: int, member: FamilyMember) -> RuleOutcome:
    """Rule out projective images A4, S4, A5 at ell."""
    if ell <= 3 or member.level % ell == 0:
        return RuleOutcome("small-image", Status.OUT_OF_SCOPE.value, f"ell={ell} divides 6N or is <= 3")
    if ell >= 7:
        return RuleOutcome(
            "weight-2-small-image", Status.SMALL_IMAGE_EXCLUDED.value,
            f"ell={ell} >= 7: A4/S4/A5 do not occur in weight 2", trusted=True,
        )
    wild = member.t ** (member.n // 2 - 1)
    if wild > 5:
        return RuleOutcome(
            "small-image-ell-5", Status.SMALL_IMAGE_EXCLUDED.value,
            f"wild inertia order {member.t}^{member.n // 2 - 1} = {wild} > 5, the largest element order in A4/S4/A5",
        )
    return RuleOutcome(
        "small-image-ell-5", Status.SMALL_IMAGE_EXCLUDED.value,
        f"{member.t}^{member.n // 2 - 1} = {wild} <= 5: exclusion taken as a trusted claim for n={member.n}",
        trusted=True,
    )


def density_upper_bound(member: FamilyMember) -> Fraction:
    """Dirichlet density 1/phi(t^(u-1)) of primes = 1 mod t^(u-1), the only possible reducible ones."""
    return Fraction(1, euler_phi(member.t ** (member.u - 1)))


def _conductor_exponent(n: int) -> int:
    return ceil(n / 2)


def field_exponent_lower_bound(ell: int, n: int, t: int = 3) -> int:
    """Order of ell in (Z/t^(c-1))^* / {+-1}, c = ceil(n/2); 1 when c <= 2.

    This is the residue degree at ell of the real subfield of the
    t^(c-1)-th cyclotomic field, a lower bound for the exponent r of the
    projective image PSL2/PGL2(F_{ell^r}).
    """
    if ell in (2, 3) or ell == t or not is_prime(ell):
        raise InvalidInputError(f"ell={ell} must be a prime other than 2, 3, t")
    if n < 4:
        raise InvalidInputError("n must be >= 4")
    c = _conductor_exponent(n)
    if c <= 2:
        return 1
    m = t ** (c - 1)
    order = multiplicative_order(ell, m)
    # -1 lies in <ell> iff ell^(order/2) = -1, which needs an even order.
    if order % 2 == 0 and pow(ell, order // 2, m) == m - 1:
        return order // 2
    return order


def coefficient_degree_lower_bound(n: int, t: int = 3) -> int:
    """Degree of the real subfield of Q(zeta_{t^(c-1)}), c = ceil(n/2)."""
    if n < 4:
        raise InvalidInputError("n must be >= 4")
    c = _conductor_exponent(n)
    return max(euler_phi(t ** (c - 1)) // 2, 1)


@dataclass(frozen=True)
class RealizationPlan:
    ell: int
    r0: int
    n: int
    guaranteed_exponent: int
    s: int = 2
    t: int = 3

    @property
    def level(self) -> int:
        return self.s * self.t**self.n

    @property
    def ramification_note(self) -> str:
        st = self.s * self.t
        return f"extension unramified outside {st}*ell = {st * self.ell}"

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "r0": self.r0,
            "n": self.n,
            "level": self.level,
            "guaranteed_exponent": self.guaranteed_exponent,
            "ramification": self.ramification_note,
        }


def realization_plan(ell: int, r0: int, s: int = 2, t: int = 3, n_max: int = 10_000) -> RealizationPlan:
    """Smallest even n >= 4 with ell not a reducible candidate and field exponent >= r0."""
    if not is_prime(ell) or ell <= 3 or ell in (s, t):
        raise InvalidInputError(f"ell={ell} must be a prime > 3 not dividing the level")
    if r0 < 1:
        raise InvalidInputError("r0 must be >= 1")
    for n in range(4, n_max + 1, 2):
        member = FamilyMember(n=n, s=s, t=t)
        if is_reducible_candidate(ell, member):
            continue
        r = field_exponent_lower_bound(ell, n, t)
        if r >= r0:
            return RealizationPlan(ell=ell, r0=r0, n=n, guaranteed_exponent=r, s=s, t=t)
    raise InvalidInputError(f"no plan found with n <= {n_max}")


@dataclass(frozen=True)
class PrimeEntry:
    ell: int
    status: Status
    justification: tuple[RuleOutcome, ...]

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "status": self.status.value,
            "justification": [r.as_dict() for r in self.justification],
        }


@dataclass(frozen=True)
class ExceptionalReport:
    member: FamilyMember
    ell_max: int
    entries: tuple[PrimeEntry, ...]
    reducible: CandidateSet
    dihedral: tuple[int, ...]
    density_bound: Fraction
    trusted_assumptions: tuple[str, ...] = field(default_factory=tuple)

    @property
    def complete(self) -> bool:
        return self.reducible.complete

    def status_of(self, ell: int) -> Status:
        for e in self.entries:
            if e.ell == ell:
                return e.status
        raise KeyError(ell)

    def flagged(self, status: Status) -> tuple[int, ...]:
        return tuple(e.ell for e in self.entries if e.status is status)

    def trusted_rules_used(self) -> tuple[str, ...]:
        used = {"level-raising", "residual-conductor", "dihedral-shape", "non-cm"}
        for e in self.entries:
            used.update(r.rule for r in e.justification if r.trusted)
        return tuple(sorted(used))

    def as_dict(self) -> dict:
        red = self.reducible
        return {
            "family": self.member.as_dict(),
            "ell_max": self.ell_max,
            "reducible_candidates": list(red.primes),
            "reducible_modulus": red.modulus,
            "reducible_exponent": red.exponent,
            "cyclotomic_pieces": [
                {"d": d, "value": f.n, "factorization": str(f)}
                for d, f in zip(divisors(red.exponent), red.factorizations)
            ],
            "dihedral_candidates": list(self.dihedral),
            "density_bound": str(self.density_bound),
            "flagged": {s.value: list(self.flagged(s)) for s in Status},
            "entries": [e.as_dict() for e in self.entries],
        }


def _classify(ell: int, member: FamilyMember, reducible: CandidateSet, dihedral: tuple[int, ...]) -> PrimeEntry:
    if ell <= 3 or member.level % ell == 0:
        return PrimeEntry(ell, Status.OUT_OF_SCOPE, (
            RuleOutcome("scope", Status.OUT_OF_SCOPE.value, f"ell={ell} <= 3 or divides the level {member.level}"),
        ))
    trail = []
    m = reducible.modulus
    if ell in reducible:
        trail.append(RuleOutcome(
            "reducible-bound", Status.REDUCIBLE_CANDIDATE.value,
            f"{m} | {ell}-1 and {ell} | {member.s}^{reducible.exponent}-1",
        ))
    elif (ell - 1) % m:
        trail.append(RuleOutcome("reducible-bound", "reducible-excluded", f"{m} does not divide {ell}-1"))
    else:
        trail.append(RuleOutcome(
            "reducible-bound", "reducible-excluded", f"{ell} does not divide {member.s}^{reducible.exponent}-1",
        ))
    if ell in dihedral:
        trail.append(RuleOutcome("dihedral-bound", Status.DIHEDRAL_CANDIDATE.value, f"{ell} divides s+1 = {member.s + 1}"))
    else:
        trail.append(RuleOutcome(
            "dihedral-bound", Status.DIHEDRAL_EXCLUDED.value,
            f"trace 0 at s={member.s} clashes with +-{member.s + 1} mod {ell}",
        ))
    trail.append(small_image_exclusion(ell, member))
    if ell in reducible:
        status = Status.REDUCIBLE_CANDIDATE
    elif ell in dihedral:
        status = Status.DIHEDRAL_CANDIDATE
    else:
        status = Status.LARGE_GUARANTEED
    return PrimeEntry(ell, status, tuple(trail))


def family_report(member: FamilyMember, ell_max: int = DEFAULT_ELL_MAX) -> ExceptionalReport:
    """Classify every prime ell <= ell_max for the given family member."""
    member.u  # odd n rejected here
    reducible = reducible_candidates(member)
    dihedral = dihedral_candidates(member)
    entries = tuple(_classify(ell, member, reducible, dihedral) for ell in primes_up_to(ell_max))
    return ExceptionalReport(
        member=member,
        ell_max=ell_max,
        entries=entries,
        reducible=reducible,
        dihedral=dihedral,
        density_bound=density_upper_bound(member),
        trusted_assumptions=tuple(sorted(TRUSTED_RULES)),
    )
