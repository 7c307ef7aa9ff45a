"""Newform data for cross-checking the modular symbols engine.

Lookup order for a level N: the cache directory, then the fixtures
bundled with the package, then the LMFDB HTTP API. Cache files hold one
JSON document per (level, weight 2) named ``N{level}k2.json``:

    {"level": N, "weight": 2, "source": ..., "timestamp": ...,
     "newforms": [{"label", "level", "weight", "dim", "field_poly",
                   "hecke_bound", "primes", "ap", "ap_charpolys",
                   "source", "timestamp"}, ...]}

``field_poly`` and every entry of ``ap`` list coefficients lowest degree
first; ``ap[i]`` expresses a_p (p = primes[i]) in the power basis of a root
of ``field_poly``. Entries are integers or "num/den" strings.
``ap_charpolys`` (optional) holds the characteristic polynomial of each
a_p over Q, again lowest degree first.
"""

from __future__ import annotations

import json
import os
import time
import urllib.error
import urllib.parse
import urllib.request
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import InvalidInputError, LMFDBUnavailableError, PayloadParseError
from .modsym import linalg as LA
from .modsym.dimensions import sturm_bound
from .modsym.eigen import eigensystems_mod_ell
from .modsym.space import build_space
from .numth import GF, is_prime
from .numth import polynomials as P

FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"
API_ROOT = "https://www.lmfdb.org/api"
ENV_CACHE = "EXCEPTIONAL_PRIMES_CACHE"
ENV_OFFLINE = "EXCEPTIONAL_PRIMES_OFFLINE"


def _num(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    if isinstance(x, str):
        try:
            v = Fraction(x)
        except ValueError:
            raise PayloadParseError("bad rational coefficient", x) from None
        return v.numerator if v.denominator == 1 else v
    raise PayloadParseError("bad coefficient", repr(x))


def _dump_num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


@dataclass(frozen=True)
class NewformRecord:
    label: str
    level: int
    weight: int
    degree: int
    field_poly: tuple
    primes: tuple[int, ...]
    ap: tuple[tuple, ...]
    hecke_bound: int
    source: str = ""
    timestamp: str = ""
    ap_charpolys: tuple[tuple, ...] = field(default=(), compare=True)

    def a(self, p: int) -> tuple:
        try:
            return self.ap[self.primes.index(p)]
        except ValueError:
            raise KeyError(f"a_{p} not stored for {self.label}") from None

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "level": self.level,
            "weight": self.weight,
            "dim": self.degree,
            "field_poly": [_dump_num(c) for c in self.field_poly],
            "hecke_bound": self.hecke_bound,
            "primes": list(self.primes),
            "ap": [[_dump_num(c) for c in a] for a in self.ap],
            "source": self.source,
            "timestamp": self.timestamp,
        }
        if self.ap_charpolys:
            out["ap_charpolys"] = [[_dump_num(c) for c in f] for f in self.ap_charpolys]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "NewformRecord":
        try:
            rec = cls(
                label=str(obj["label"]),
                level=int(obj["level"]),
                weight=int(obj["weight"]),
                degree=int(obj["dim"]),
                field_poly=tuple(_num(c) for c in obj["field_poly"]),
                primes=tuple(int(p) for p in obj["primes"]),
                ap=tuple(tuple(_num(c) for c in a) for a in obj["ap"]),
                hecke_bound=int(obj["hecke_bound"]),
                source=str(obj.get("source", "")),
                timestamp=str(obj.get("timestamp", "")),
                ap_charpolys=tuple(tuple(_num(c) for c in f) for f in obj.get("ap_charpolys", ())),
            )
        except PayloadParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise PayloadParseError(f"malformed newform record ({exc})", json.dumps(obj)[:400]) from None
        if len(rec.ap) != len(rec.primes) or len(rec.field_poly) != rec.degree + 1:
            raise PayloadParseError("inconsistent newform record", json.dumps(obj)[:400])
        return rec


def parse_document(text: str, level: int | None = None) -> list[NewformRecord]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PayloadParseError(f"invalid JSON ({exc.msg})", text) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("newforms"), list):
        raise PayloadParseError("expected an object with a 'newforms' list", text)
    records = [NewformRecord.from_json(r) for r in doc["newforms"]]
    for r in records:
        if (level is not None and r.level != level) or r.weight != 2:
            raise PayloadParseError(f"record {r.label} does not match level {level}, weight 2", text)
    return records


def dump_document(level: int, records: list[NewformRecord], source: str, timestamp: str) -> str:
    doc = {
        "level": level,
        "weight": 2,
        "source": source,
        "timestamp": timestamp,
        "newforms": [r.to_json() for r in records],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


# ------------------------------------------------------------------ network


class LMFDBClient:
    """Sequential, rate-limited JSON client for the public LMFDB API."""

    def __init__(
        self,
        base_url: str = API_ROOT,
        delay: float = 1.0,
        retries: int = 3,
        backoff: float = 2.0,
        timeout: float = 30.0,
        opener=None,
        sleep=time.sleep,
    ):
        self.base_url = base_url.rstrip("/")
        self.delay = delay
        self.retries = retries
        self.backoff = backoff
        self.timeout = timeout
        self._open = opener or urllib.request.urlopen
        self._sleep = sleep
        self._last = None

    def get_json(self, path: str, params: dict):
        url = f"{self.base_url}/{path}/?{urllib.parse.urlencode(params)}"
        wait = max(self.delay, 0.5)
        last_error = None
        for attempt in range(self.retries + 1):
            if self._last is not None and self.delay:
                self._sleep(self.delay)
            self._last = True
            try:
                req = urllib.request.Request(url, headers={"User-Agent": "exceptional-primes/0.1"})
                with self._open(req, timeout=self.timeout) as resp:
                    text = resp.read().decode("utf-8")
            except urllib.error.HTTPError as exc:
                last_error = exc
                if exc.code != 429 and exc.code < 500:
                    raise LMFDBUnavailableError(f"HTTP {exc.code} for {url}") from None
            except (urllib.error.URLError, TimeoutError, OSError) as exc:
                last_error = exc
            else:
                try:
                    return json.loads(text)
                except json.JSONDecodeError as exc:
                    raise PayloadParseError(f"invalid JSON from {url} ({exc.msg})", text) from None
            if attempt < self.retries:
                self._sleep(wait)
                wait *= self.backoff
        raise LMFDBUnavailableError(f"could not reach {url}: {last_error}")

    def newforms(self, N: int, bound: int = 200) -> list[NewformRecord]:
        listing = self.get_json(
            "mf_newforms",
            {"level": N, "weight": 2, "char_order": 1, "_format": "json", "_fields": "label,level,weight,dim,field_poly"},
        )
        rows = _data_rows(listing)
        primes = [p for p in range(2, bound + 1) if is_prime(p)]
        out = []
        for row in sorted(rows, key=lambda r: _label_key(str(r.get("label", "")))):
            nf = _data_rows(
                self.get_json(
                    "mf_hecke_nf",
                    {"label": row.get("label"), "_format": "json",
                     "_fields": "label,ap,hecke_ring_numerators,hecke_ring_denominators"},
                )
            )
            if not nf:
                raise PayloadParseError(f"no Hecke data for {row.get('label')}", json.dumps(row))
            out.append(_record_from_api(row, nf[0], primes))
        return out


def _data_rows(payload):
    if not isinstance(payload, dict) or not isinstance(payload.get("data"), list):
        raise PayloadParseError("expected an object with a 'data' list", json.dumps(payload)[:400])
    return payload["data"]


def _label_key(label: str):
    tail = label.rsplit(".", 1)[-1]
    return (len(tail), tail)


def _record_from_api(row: dict, nf: dict, primes: list[int]) -> NewformRecord:
    """Convert LMFDB rows (Hecke-ring coordinates) into power-basis coefficients."""
    try:
        dim = int(row["dim"])
        fpoly = [int(c) for c in row["field_poly"]] if dim > 1 else [0, 1]
        nums = nf.get("hecke_ring_numerators") or [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
        dens = nf.get("hecke_ring_denominators") or [1] * dim
        ap_raw = nf["ap"]
        ap = []
        for coords in ap_raw[: len(primes)]:
            coords = [coords] if isinstance(coords, int) else coords
            acc = [Fraction(0)] * dim
            for c, num, den in zip(coords, nums, dens):
                for i, x in enumerate(num):
                    acc[i] += Fraction(c) * x / den
            ap.append(tuple(LA.QQ.norm(x) for x in acc))
        return NewformRecord(
            label=str(row["label"]),
            level=int(row["level"]),
            weight=int(row["weight"]),
            degree=dim,
            field_poly=tuple(fpoly),
            primes=tuple(primes[: len(ap)]),
            ap=tuple(ap),
            hecke_bound=primes[len(ap) - 1] if ap else 0,
            source="LMFDB API",
            timestamp=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise PayloadParseError(f"unexpected LMFDB row ({exc})", json.dumps(nf)[:400]) from None


# ------------------------------------------------------------------ lookup


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "exceptional_primes"


def _offline_default() -> bool:
    return os.environ.get(ENV_OFFLINE, "").strip().lower() in ("1", "true", "yes", "on")


def cache_filename(N: int) -> str:
    return f"N{N}k2.json"


def fetch_newforms_with_origin(
    N: int,
    weight: int = 2,
    cache_dir: str | Path | None = None,
    offline: bool | None = None,
    refresh: bool = False,
    client: LMFDBClient | None = None,
) -> tuple[list[NewformRecord], str]:
    """Newform orbits at (N, 2, trivial character) and where they came from: cache, fixture or network."""
    if weight != 2:
        raise InvalidInputError("only weight 2 is supported")
    if N < 1:
        raise InvalidInputError("level must be >= 1")
    cdir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    offline = _offline_default() if offline is None else offline
    path = cdir / cache_filename(N)
    if not refresh:
        if path.exists():
            return parse_document(path.read_text(), N), "cache"
        bundled = FIXTURE_DIR / cache_filename(N)
        if bundled.exists():
            text = bundled.read_text()
            records = parse_document(text, N)
            _write_cache(path, text)
            return records, "fixture"
    if offline:
        raise LMFDBUnavailableError(f"no cached newform data for level {N} and offline mode is on")
    client = client or LMFDBClient()
    records = client.newforms(N)
    stamp = records[0].timestamp if records else time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    _write_cache(path, dump_document(N, records, "LMFDB API", stamp))
    return records, "network"


def fetch_newforms(N: int, weight: int = 2, cache_dir=None, offline=None, refresh=False, client=None):
    return fetch_newforms_with_origin(N, weight, cache_dir, offline, refresh, client)[0]


def _write_cache(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(text)
        tmp.replace(path)
    except OSError as exc:
        warnings.warn(f"could not write cache file {path}: {exc}")


# ------------------------------------------------------------------ validation


def charpoly_mod_ell(record: NewformRecord, p: int, ell: int) -> list[int]:
    """Characteristic polynomial of a_p over F_ell (lowest degree first), via multiplication in F_ell[y]/(f)."""
    K = GF(ell)
    f = [LA.reduce_rational(c, ell) for c in record.field_poly]
    alpha = [LA.reduce_rational(c, ell) for c in record.a(p)]
    d = record.degree
    rows = []
    basis = [1]
    for _ in range(d):
        prod = P.mod(P.trim(P.mul(basis, alpha, K), K), P.trim(f, K), K)
        rows.append([prod[i] if i < len(prod) else 0 for i in range(d)])
        basis = [0] + basis
    return LA.charpoly_mod(rows, ell)


@dataclass
class CrossValidation:
    level: int
    ell: int
    status: str
    primes: tuple[int, ...] = ()
    records: int = 0
    discrepancies: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "ell": self.ell,
            "status": self.status,
            "primes": list(self.primes),
            "records": self.records,
            "discrepancies": self.discrepancies,
            "warnings": self.warnings,
        }


def cross_validate(N: int, ell: int, cache_dir=None, bound: int | None = None) -> CrossValidation:
    """Compare mod-ell eigensystems at level N with stored newform data.

    Primes up to ``bound`` (default: the larger of the Sturm bound and 50)
    are compared. Degree-1 records must reduce to one of the computed eigensystems. For
    every record degree, the characteristic polynomial of T_p on the
    reduced new subspace must equal the square (two signs) of the product
    of the records' a_p characteristic polynomials mod ell.
    """
    if not is_prime(ell) or ell <= 3 or N % ell == 0:
        return CrossValidation(N, ell, "skipped", warnings=[f"ell={ell} excluded: need a prime > 3 not dividing N"])
    try:
        records = fetch_newforms(N, cache_dir=cache_dir, offline=True)
    except LMFDBUnavailableError as exc:
        warnings.warn(str(exc))
        return CrossValidation(N, ell, "skipped", warnings=[str(exc)])
    B = bound if bound is not None else max(sturm_bound(N), 50)
    space = build_space(N, ell)
    systems = eigensystems_mod_ell(space, B)
    primes = tuple(p for p in space.hecke_primes(B) if all(p in r.primes for r in records))
    report = CrossValidation(N, ell, "ok", primes, len(records))
    if sum(2 * r.degree for r in records) != space.dimension:
        report.discrepancies.append(
            {"kind": "dimension", "expected": sum(2 * r.degree for r in records), "found": space.dimension}
        )
    K = GF(ell)
    for p in primes:
        expected = [1]
        for r in records:
            f = charpoly_mod_ell(r, p, ell)
            expected = P.mul(expected, P.mul(f, f, K), K)
        found = LA.charpoly_mod(space.hecke_matrix(p), ell)
        if P.trim(expected, K) != P.trim(found, K):
            report.discrepancies.append({"kind": "charpoly", "p": p, "expected": expected, "found": found})
    rational = [tuple(E.ap[p].to_int() for p in primes) for E in systems if E.degree == 1]
    for r in records:
        if r.degree != 1:
            continue
        reduced = tuple(LA.reduce_rational(r.a(p)[0], ell) for p in primes)
        if reduced not in rational:
            report.discrepancies.append({"kind": "eigensystem", "label": r.label, "expected": list(reduced)})
    if report.discrepancies:
        report.status = "discrepancies"
    return report
