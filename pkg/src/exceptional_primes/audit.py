"""Search for the reducible residual eigensystem at level 2 * 3^n.

A reducible mod-ell representation of the shape chi*psi + psi^-1 (chi the
cyclotomic character, psi of conductor exactly 3^u) has trace
p*psi(p) + psi^-1(p) at every prime p not dividing 3*ell. The audit
compares each mod-ell eigensystem on the new subspace with each such
target up to the Sturm bound.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bounds import FamilyMember, is_reducible_candidate
from .config import limits
from .errors import InvalidInputError, ScaleLimitError
from .modsym.dimensions import sturm_bound
from .modsym.eigen import Eigensystem, eigensystems_mod_ell
from .modsym.space import build_space
from .numth import FFElement, is_prime, primes_up_to
from .numth.characters import DirichletCharacter, character_of_conductor

BAD_PRIME_CAVEAT = (
    "primes dividing 6*ell are skipped apart from the U_2 membership test, so a refutation "
    "holds up to the Sturm bound on the remaining primes only"
)


class Outcome(str, enum.Enum):
    WITNESS_FOUND = "witness-found"
    REFUTED = "refuted-up-to-Sturm"
    NOT_A_CANDIDATE = "not-a-candidate"


@dataclass(frozen=True)
class ReducibilityTarget:
    ell: int
    psi: DirichletCharacter

    @property
    def field(self):
        return self.psi.field

    def ap(self, p: int) -> FFElement:
        if p % 3 == 0 or p % self.ell == 0:
            raise InvalidInputError(f"target trace is undefined at p={p}")
        v = self.psi(p)
        return p * v + v.inverse()

    def determinant(self, p: int) -> FFElement:
        v = self.psi(p)
        return (p * v) * v.inverse()

    @property
    def pair_at_2(self) -> tuple[FFElement, FFElement]:
        v = self.psi(2)
        return 2 * v, v.inverse()

    def as_dict(self) -> dict:
        return {
            "psi_order": self.psi.order(),
            "psi_conductor": self.psi.conductor(),
            "psi_of_2": self.psi(2).to_json(),
            "field_degree": self.field.degree,
            "pair_at_2": [x.to_json() for x in self.pair_at_2],
        }


def _check_ell(ell: int):
    if not is_prime(ell) or ell <= 3:
        raise InvalidInputError(f"ell={ell} must be a prime > 3")


def build_targets(n: int, ell: int) -> list[ReducibilityTarget]:
    """One target per character mod 3^u of exact conductor 3^u and order 2*3^(u-1) or 3^(u-1).

    Full-order characters come first, so they are preferred when reporting a witness.
    """
    _check_ell(ell)
    u = FamilyMember(n).u
    m = 3 ** (u - 1)
    out = []
    for order in (2 * m, m):
        out.extend(ReducibilityTarget(ell, psi) for psi in character_of_conductor(3, u, ell, order))
    return out


def semistable_consistency(target: ReducibilityTarget) -> tuple[bool, str | None]:
    """Whether the eigenvalue pair at 2 is {1, 2} or {-1, -2}; returns (ok, branch)."""
    a, b = target.pair_at_2
    for branch, (x, y) in (("1,2", (1, 2)), ("-1,-2", (-1, -2))):
        if (a == x and b == y) or (a == y and b == x):
            return True, branch
    return False, None


@dataclass
class PairResult:
    eigensystem: int
    target: int
    matched: tuple[int, ...]
    first_mismatch: int | None
    u2_in_pair: bool

    @property
    def witness(self) -> bool:
        return self.first_mismatch is None and self.u2_in_pair


@dataclass
class AuditVerdict:
    n: int
    level: int
    ell: int
    outcome: Outcome
    candidate: bool
    checked_primes: tuple[int, ...] = ()
    matched_primes: tuple[int, ...] = ()
    witness: dict | None = None
    eigensystems: list[Eigensystem] = field(default_factory=list)
    targets: list[ReducibilityTarget] = field(default_factory=list)
    pairs: list[PairResult] = field(default_factory=list)
    caveats: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "level": self.level,
            "ell": self.ell,
            "outcome": self.outcome.value,
            "reducible_candidate": self.candidate,
            "checked_primes": list(self.checked_primes),
            "matched_primes": list(self.matched_primes),
            "witness": self.witness,
            "eigensystem_count": len(self.eigensystems),
            "eigensystems": [e.as_dict() for e in self.eigensystems],
            "targets": [t.as_dict() for t in self.targets],
            "caveats": list(self.caveats),
        }


def _compare(E: Eigensystem, T: ReducibilityTarget, primes) -> tuple[tuple[int, ...], int | None]:
    matched = []
    for p in primes:
        if E.ap[p] != T.ap(p):
            return tuple(matched), p
        matched.append(p)
    return tuple(matched), None


def _member_for_audit(n: int) -> FamilyMember:
    member = FamilyMember(n)
    member.u  # rejects odd n
    cap = limits().audit_n_max
    if n > cap:
        raise ScaleLimitError(
            f"n={n} gives level {member.level}, beyond the audit limit n <= {cap}; "
            "raise EXCEPTIONAL_PRIMES_AUDIT_N_MAX to override"
        )
    return member


def reducibility_audit(n: int, ell: int, force: bool = False) -> AuditVerdict:
    """Audit (n, ell). Non-candidates short-circuit unless ``force`` is set."""
    _check_ell(ell)
    member = _member_for_audit(n)
    N = member.level
    candidate = is_reducible_candidate(ell, member)
    if not candidate and not force:
        return AuditVerdict(n, N, ell, Outcome.NOT_A_CANDIDATE, candidate)
    B = sturm_bound(N)
    systems = eigensystems_mod_ell(build_space(N, ell), B)
    targets = [T for T in build_targets(n, ell) if semistable_consistency(T)[0]]
    primes = tuple(p for p in primes_up_to(B) if (6 * ell) % p)
    pairs = []
    for E in systems:
        for j, T in enumerate(targets):
            matched, miss = _compare(E, T, primes)
            u2 = E.ap[2]
            pairs.append(PairResult(E.index, j, matched, miss, any(u2 == x for x in T.pair_at_2)))
    caveats = [BAD_PRIME_CAVEAT]
    if not candidate:
        caveats.append("forced audit at a prime the closed-form bound already excludes")
    if any(not E.semisimple for E in systems):
        caveats.append("some eigensystem has a non-semisimple Hecke action on its piece")
    hits = sorted((r for r in pairs if r.witness), key=lambda r: (r.target, r.eigensystem))
    verdict = AuditVerdict(
        n, N, ell, Outcome.WITNESS_FOUND if hits else Outcome.REFUTED, candidate,
        checked_primes=primes, eigensystems=systems, targets=targets, pairs=pairs, caveats=caveats,
    )
    if hits:
        first = hits[0]
        E, T = systems[first.eigensystem], targets[first.target]
        verdict.matched_primes = first.matched
        verdict.witness = {
            "eigensystem": first.eigensystem,
            "target": first.target,
            "psi_of_2": T.psi(2).to_json(),
            "psi_order": T.psi.order(),
            "u2": E.ap[2].to_json(),
            "branch": semistable_consistency(T)[1],
            "all_witnesses": [[r.eigensystem, r.target] for r in hits],
        }
        if not candidate:
            caveats.append("witness at a non-candidate prime contradicts the closed-form bound")
    return verdict


def _audit_job(args):
    n, ell, force = args
    return reducibility_audit(n, ell, force=force)


def audit_many(n: int, ells, force: bool = False, workers: int = 1) -> list[AuditVerdict]:
    """Independent audits for several ell; results come back in the order of ``ells``."""
    jobs = [(n, ell, force) for ell in ells]
    if workers <= 1:
        return [_audit_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_audit_job, jobs))


@dataclass
class DihedralReport:
    n: int
    level: int
    ell: int
    checked_primes: tuple[int, ...]
    rows: list[dict]

    @property
    def dihedral_pattern(self) -> list[int]:
        return [r["eigensystem"] for r in self.rows if r["pattern"]]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "level": self.level,
            "ell": self.ell,
            "checked_primes": list(self.checked_primes),
            "eigensystems": self.rows,
            "dihedral_pattern": self.dihedral_pattern,
        }


def dihedral_spotcheck(n: int, ell: int) -> DihedralReport:
    """Check the trace condition a_p = 0 at inert primes p = 2 mod 3 for every eigensystem.

    With 2 exactly dividing the level, an unramified-at-2 representation has
    trace 3*U_2 at Frob_2, which is nonzero for ell > 3; so U_2 != 0 alone
    already rules out a dihedral image.
    """
    _check_ell(ell)
    member = _member_for_audit(n)
    N = member.level
    B = sturm_bound(N)
    systems = eigensystems_mod_ell(build_space(N, ell), B)
    inert = tuple(p for p in primes_up_to(B) if p % 3 == 2 and (6 * ell) % p)
    rows = []
    for E in systems:
        trace2 = 3 * E.ap[2]
        nonzero = [p for p in inert if not E.ap[p].is_zero()]
        rows.append(
            {
                "eigensystem": E.index,
                "trace_frob_2": trace2.to_json(),
                "excluded_by_a2": not trace2.is_zero(),
                "nonzero_inert": nonzero,
                "pattern": trace2.is_zero() and not nonzero,
            }
        )
    return DihedralReport(n, N, ell, inert, rows)
