import io
import json
import urllib.error

import pytest

from exceptional_primes.errors import LMFDBUnavailableError, PayloadParseError
from exceptional_primes.lmfdb import (
    FIXTURE_DIR,
    LMFDBClient,
    NewformRecord,
    cache_filename,
    charpoly_mod_ell,
    cross_validate,
    dump_document,
    fetch_newforms,
    fetch_newforms_with_origin,
    parse_document,
)
from exceptional_primes.modsym.space import build_space

AP_11 = [-2, -1, 1, -2, 1, 4, -2, 0, -1, 0]


class FakeResponse(io.BytesIO):
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class FakeOpener:
    """Plays back a queue of responses; exceptions in the queue are raised."""

    def __init__(self, responses):
        self.responses = list(responses)
        self.urls = []

    def __call__(self, req, timeout=None):
        self.urls.append(req.full_url)
        item = self.responses.pop(0)
        if isinstance(item, Exception):
            raise item
        return FakeResponse(json.dumps(item).encode() if not isinstance(item, bytes) else item)


def http_error(code):
    return urllib.error.HTTPError("https://example.invalid", code, "err", {}, None)


LISTING_11 = {"data": [{"label": "11.2.a.a", "level": 11, "weight": 2, "dim": 1, "field_poly": [0, 1]}]}
HECKE_11 = {"data": [{"label": "11.2.a.a", "ap": AP_11}]}


def test_fixture_level_11():
    records, origin = fetch_newforms_with_origin(11)
    assert origin == "fixture"
    (rec,) = records
    assert rec.label == "11.2.a.a" and rec.degree == 1
    assert [rec.a(p)[0] for p in (2, 3, 5)] == [-2, -1, 1]
    assert rec.hecke_bound == 200


def test_fixture_level_162_matches_new_subspace():
    records = fetch_newforms(162)
    assert sum(2 * r.degree for r in records) == build_space(162).new.dimension
    assert [r.label for r in records] == ["162.2.a.a", "162.2.a.b", "162.2.a.c", "162.2.a.d"]


def test_second_fetch_served_from_cache_byte_identical(tmp_path):
    cache = tmp_path / "c"
    first, origin1 = fetch_newforms_with_origin(11, cache_dir=cache)
    text1 = (cache / cache_filename(11)).read_bytes()
    second, origin2 = fetch_newforms_with_origin(11, cache_dir=cache)
    assert (origin1, origin2) == ("fixture", "cache")
    assert first == second
    assert (cache / cache_filename(11)).read_bytes() == text1 == (FIXTURE_DIR / cache_filename(11)).read_bytes()


def test_record_round_trip():
    for N in (11, 23, 54, 162):
        for rec in fetch_newforms(N):
            assert NewformRecord.from_json(json.loads(json.dumps(rec.to_json()))) == rec
        records = fetch_newforms(N)
        text = dump_document(N, records, "s", "t")
        assert parse_document(text, N) == records


def test_offline_without_cache_raises(tmp_path):
    with pytest.raises(LMFDBUnavailableError):
        fetch_newforms(13, cache_dir=tmp_path, offline=True)


def test_malformed_payload_reports_excerpt():
    with pytest.raises(PayloadParseError) as info:
        parse_document('{"newforms": [{"label": "x"}]}')
    assert '"label": "x"' in info.value.excerpt
    with pytest.raises(PayloadParseError):
        parse_document("not json at all")


def test_client_retries_with_backoff():
    sleeps = []
    opener = FakeOpener([http_error(503), urllib.error.URLError("down"), LISTING_11, HECKE_11])
    client = LMFDBClient(delay=0.0, retries=3, backoff=2.0, opener=opener, sleep=sleeps.append)
    (rec,) = client.newforms(11, bound=29)
    assert rec.a(2) == (-2,) and rec.primes[-1] == 29 and rec.hecke_bound == 29
    assert sleeps == [0.5, 1.0]
    assert "mf_newforms" in opener.urls[0] and "mf_hecke_nf" in opener.urls[-1]


def test_client_gives_up():
    sleeps = []
    opener = FakeOpener([http_error(500)] * 3)
    client = LMFDBClient(delay=1.0, retries=2, opener=opener, sleep=sleeps.append)
    with pytest.raises(LMFDBUnavailableError):
        client.get_json("mf_newforms", {})
    # politeness delay before each retry, plus backoff 1s then 2s
    assert sleeps == [1.0, 1.0, 2.0, 1.0]


def test_client_client_error_is_not_retried():
    opener = FakeOpener([http_error(404)])
    with pytest.raises(LMFDBUnavailableError):
        LMFDBClient(opener=opener, sleep=lambda s: None).get_json("x", {})
    assert len(opener.urls) == 1


def test_client_bad_json():
    opener = FakeOpener([b"<html>oops</html>"])
    with pytest.raises(PayloadParseError) as info:
        LMFDBClient(opener=opener, sleep=lambda s: None).get_json("x", {})
    assert "oops" in info.value.excerpt


def test_network_path_writes_cache(tmp_path):
    opener = FakeOpener([LISTING_11, HECKE_11])
    client = LMFDBClient(delay=0.0, opener=opener, sleep=lambda s: None)
    records, origin = fetch_newforms_with_origin(11, cache_dir=tmp_path, offline=False, refresh=True, client=client)
    assert origin == "network"
    again, origin = fetch_newforms_with_origin(11, cache_dir=tmp_path, offline=True)
    assert origin == "cache" and again == records


def test_charpoly_of_quadratic_record():
    (rec,) = fetch_newforms(23)
    # a_2 = -y with y^2 - y - 1 = 0, so a_2 has charpoly x^2 + x - 1
    assert rec.a(2) == (0, -1)
    assert charpoly_mod_ell(rec, 2, 7) == [6, 1, 1]


@pytest.mark.parametrize("N, ell", [(11, 7), (54, 5), (23, 7), (162, 7), (162, 5)])
def test_cross_validate_clean(N, ell):
    rep = cross_validate(N, ell)
    assert rep.ok, rep.discrepancies
    assert rep.discrepancies == []


def test_cross_validate_skips():
    assert cross_validate(11, 11).status == "skipped"
    with pytest.warns(UserWarning):
        rep = cross_validate(13, 5)
    assert rep.status == "skipped" and rep.warnings
