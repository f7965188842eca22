"""Disk cache semantics and the command-line front end."""

import json
import threading

import pytest

from growthcong import QSeries, ZZ, Zmod, SeriesCache, load_qseries
from growthcong.cache import CACHE_ENV_VAR, default_cache_dir, registered_builders
from growthcong.cli import main
from growthcong.partitions import partition_series


@pytest.fixture
def cache(tmp_path):
    return SeriesCache(tmp_path)


def builder_calls(fn):
    calls = []

    def wrapped(trunc, ring):
        calls.append(trunc)
        return fn(trunc, ring)

    wrapped.calls = calls
    return wrapped


def test_store_load_roundtrip(cache):
    s = partition_series(50, Zmod(25))
    cache.store("p", s)
    back = cache.get_or_build("p", Zmod(25), 50, lambda *a: pytest.fail("hit expected"))
    assert back.coefficients() == s.coefficients()


def test_prefix_serving_and_rebuild(cache):
    build = builder_calls(partition_series)
    full = cache.get_or_build("p", ZZ, 100, build)
    assert build.calls == [100]
    shorter = cache.get_or_build("p", ZZ, 40, build)
    assert build.calls == [100]  # served by slicing, no rebuild
    assert shorter.trunc == 40
    assert shorter.coefficients() == full.coefficients()[:40]
    cache.get_or_build("p", ZZ, 200, build)
    assert build.calls == [100, 200]  # larger request rebuilds
    entries = list(cache.directory.glob("p__Z__*.qsc"))
    assert len(entries) == 1 and entries[0].name.endswith("200.qsc")


def test_rings_are_kept_apart(cache):
    a = cache.get_or_build("p", ZZ, 30, partition_series)
    b = cache.get_or_build("p", Zmod(5), 30, partition_series)
    assert [c % 5 for c in a.coefficients()] == b.coefficients()
    assert len(list(cache.directory.glob("p__*.qsc"))) == 2


def test_corruption_evicts_and_rebuilds(cache):
    cache.get_or_build("p", ZZ, 20, partition_series)
    path = next(cache.directory.glob("p__Z__*.qsc"))
    path.write_bytes(b"garbage")
    with pytest.warns(UserWarning, match="checksum"):
        again = cache.get_or_build("p", ZZ, 20, partition_series)
    assert again.coeff(19) == partition_series(20).coeff(19)


def test_builder_truncation_contract(cache):
    with pytest.raises(ValueError):
        cache.get_or_build("p", ZZ, 25, lambda t, r: partition_series(t + 1, r))


def test_concurrent_builds_one_survivor(cache):
    build = builder_calls(partition_series)
    results = []

    def worker():
        results.append(cache.get_or_build("p", ZZ, 60, build))

    threads = [threading.Thread(target=worker) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(build.calls) == 1  # per-tag lock: single build
    assert len(list(cache.directory.glob("p__Z__*.qsc"))) == 1
    ref = results[0].coefficients()
    assert all(r.coefficients() == ref for r in results)


def test_env_var_controls_default_dir(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path / "xyz"))
    assert default_cache_dir() == tmp_path / "xyz"


def test_registered_builders_tags():
    builders = registered_builders()
    from growthcong import brute_force_pk

    s = builders["p_k:3"](30, ZZ)
    assert [s.coeff(n) for n in range(8)] == [brute_force_pk(n, 3) for n in range(8)]
    f = builders["f"](30, ZZ)
    assert f.start == -1
    F = builders["F:5"](10, ZZ)
    assert F.coeff(1) == -25
    with pytest.raises(KeyError):
        builders["nope"]
    with pytest.raises(ValueError):
        builders["g:5:1"](20, ZZ)  # needs the matching modular ring
    g = builders["g:5:1"](20, Zmod(5))
    assert g.ring.modulus == 5


# -- CLI ----------------------------------------------------------------------


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cli_gamma_value(capsys):
    code, out = run_cli(capsys, "gamma", "--group", "sym", "--n", "10")
    assert code == 0 and json.loads(out)["value"] == 42


def test_cli_gamma_identity(capsys):
    code, out = run_cli(capsys, "gamma", "--check-eq7", "--limit", "100")
    assert code == 0
    assert json.loads(out)[0]["status"] == "PASS"


def test_cli_eta_json(capsys):
    code, out = run_cli(capsys, "eta", "--level", "25", "--exp", "1:25,25:-1",
                        "--truncate", "96", "--check-modularity")
    doc = json.loads(out)
    assert code == 0
    assert doc["modularity"]["holomorphic_shape"] is True
    assert doc["coefficients"]["1"] == -25


def test_cli_verify_and_exit_codes(capsys):
    code, out = run_cli(capsys, "verify", "--theorem", "ramanujan",
                        "--ell", "5", "--j", "1", "--nmax", "500")
    assert code == 0 and json.loads(out)[0]["status"] == "PASS"
    code, _ = run_cli(capsys, "verify")
    assert code == 2  # configuration error: nothing to verify


def test_cli_verify_csv_format(capsys):
    code, out = run_cli(capsys, "verify", "--examples-intro", "--nmax", "100",
                        "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("claim,")


def test_cli_scan(capsys):
    code, out = run_cli(capsys, "scan", "--function", "p", "--mod", "5",
                        "--abound", "6", "--nmax", "100")
    assert code == 0
    assert any(d["A"] == 5 and d["B"] == 4 for d in json.loads(out))


def test_cli_op_roundtrip(tmp_path, capsys):
    cache_file = tmp_path / "s.qsc"
    from growthcong import dump_qseries

    s = QSeries(ZZ, 1, 0, list(range(1, 31)))
    cache_file.write_bytes(dump_qseries(s))
    out_file = tmp_path / "u3.qsc"
    code, out = run_cli(capsys, "op", "--apply", "U:3",
                        "--input", str(cache_file), "--output", str(out_file))
    assert code == 0
    result = load_qseries(out_file.read_bytes())
    assert result.coefficients() == [s.coeff(3 * m) for m in range(10)]
    code, _ = run_cli(capsys, "op", "--apply", "W:3", "--input", str(cache_file))
    assert code == 2


def test_cli_treneer_verify(capsys):
    code, out = run_cli(capsys, "treneer", "--ell", "5", "--j", "1",
                        "--truncate", "60", "--verify-g")
    assert code == 0 and json.loads(out)["status"] == "PASS"


def test_cli_cache_subcommand(tmp_path, capsys):
    code, out = run_cli(capsys, "cache", "--tag", "p", "--truncate", "40",
                        "--mod", "7", "--cache-dir", str(tmp_path))
    assert code == 0
    doc = json.loads(out)
    series = load_qseries((tmp_path / "p__mod7__40.qsc").read_bytes())
    assert doc["truncation"] == 40 and series.coeff(5) == 7 % 7


def test_cli_memory_budget_exit_code(capsys):
    code, _ = run_cli(capsys, "verify", "--example-block", "--memory-budget", "1K")
    assert code == 2
