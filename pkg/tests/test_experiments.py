import csv
import math
import subprocess
import sys

import numpy as np
import pytest

from frameapprox import ASVD1, ASVD2, TSVD, AugmentedLogLegendre, RestrictedLegendre, TargetFunction, Tikhonov
from frameapprox.cli import main
from frameapprox.experiments import (
    CSV_HEADER,
    SweepConfig,
    SweepError,
    builtin_function,
    parse_config,
    parse_method,
    read_csv,
    run_sweep,
    write_csv,
)


def test_builtin_function_examples():
    assert builtin_function("f1")(0.0) == 1.0
    assert builtin_function("f2")(0.0) == pytest.approx(1.7543859649122806, rel=1e-15)
    assert builtin_function("singular", {"alpha": 1})(1.0) == pytest.approx(math.exp(math.sin(15.5)), abs=0)
    f3 = builtin_function("f3")(0.3)
    assert f3 == pytest.approx(math.exp(math.sin(6.5)) * math.sqrt(1.3) * math.cos(3.0))
    t = np.linspace(-0.5, 0.5, 5)
    np.testing.assert_allclose(builtin_function("f1")(t), 1 / (1 + 75 * t**2))
    with pytest.raises(ValueError):
        builtin_function("f9")
    with pytest.raises(ValueError):
        builtin_function("singular")


def test_parse_method():
    assert parse_method("TSVD(1e-15)") == TSVD(1e-15)
    assert parse_method(" asvd1( 1e-15 , 15 ) ") == ASVD1(1e-15, 15)
    assert parse_method("ASVD2(0, 2)") == ASVD2(0.0, 2.0)
    assert parse_method("Tikhonov(1e-15)") == Tikhonov(1e-15)
    for bad in ("TSVD", "ASVD1(1e-15)", "QR(1)", "TSVD(1, 2)"):
        with pytest.raises(ValueError):
            parse_method(bad)


def test_parse_config():
    cfg = parse_config(
        """
        # comment line
        family = augmented_log_legendre
        K = 3
        function = singular
        alpha = 2   # inline comment
        mode = collocation
        oversampling = 3
        methods = TSVD(1e-15); ASVD2(1e-15, 15)
        N = 8, 16
        """
    )
    assert cfg.family == AugmentedLogLegendre(3) and cfg.params == {"alpha": 2.0}
    assert cfg.methods == (TSVD(1e-15), ASVD2(1e-15, 15)) and cfg.N_list == (8, 16)
    assert cfg.oversampling == 3.0 and cfg.mode == "collocation"
    default = parse_config("function = f2")
    assert default.family == RestrictedLegendre(-0.5, 0.5) and default.N_list == (4, 8, 16, 32, 64, 128, 256)
    with pytest.raises(ValueError):
        parse_config("colour = blue")
    with pytest.raises(ValueError):
        parse_config("family = fourier")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(N_list=(8, 4)),
        dict(N_list=(4, 4)),
        dict(mode="galerkin"),
        dict(mode="collocation"),
        dict(family=AugmentedLogLegendre(), mode="gram"),
        dict(family=AugmentedLogLegendre(), mode="collocation", oversampling=0.5),
    ],
)
def test_config_invariants(kwargs):
    with pytest.raises(ValueError):
        SweepConfig(**kwargs)


def test_collocation_opt_in_for_restricted_family():
    cfg = SweepConfig(mode="collocation", collocation_opt_in=True, N_list=(8,), methods=(TSVD(1e-15),))
    (rec,) = run_sweep(cfg)
    assert rec.error_l2 < 0.2


def test_sweep_phi0_in_span():
    cfg = SweepConfig(function="phi", params={"n": 0}, methods=(TSVD(1e-15),), N_list=(4,))
    (rec,) = run_sweep(cfg)
    assert rec.error_l2 <= 1e-10
    assert rec.coeff_norm == pytest.approx(1.0, abs=1e-10)
    np.testing.assert_allclose(rec.x, [1, 0, 0, 0], atol=1e-10)
    assert rec.bound_checks_passed == rec.checks_applicable > 0


def test_empty_sweep(tmp_path):
    assert run_sweep(SweepConfig(N_list=())) == []
    path = tmp_path / "empty.csv"
    write_csv([], path)
    assert path.read_text() == ",".join(CSV_HEADER) + "\n"


def test_record_order_and_csv_roundtrip(tmp_path):
    methods = (ASVD1(1e-15, 15), TSVD(1e-15), Tikhonov(1e-15))
    recs = run_sweep(SweepConfig(methods=methods, N_list=(4, 8)))
    assert [(r.N, r.method) for r in recs] == [(4, "ASVD1"), (4, "TSVD"), (4, "Tikhonov"), (8, "ASVD1"), (8, "TSVD"), (8, "Tikhonov")]
    assert math.isnan(recs[1].c) and recs[2].epsilon == 1e-15
    path = tmp_path / "one.csv"
    write_csv(recs[:1], path)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    (row,) = read_csv(path)
    for key in CSV_HEADER:
        assert row[key] == getattr(recs[0], key)
    with open(path, newline="") as fh:
        assert tuple(next(csv.reader(fh))) == CSV_HEADER


def test_csv_is_deterministic(tmp_path):
    cfg = SweepConfig(methods=(TSVD(1e-15), ASVD2(1e-15, 15)), N_list=(4, 8, 16, 32))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(run_sweep(cfg), a)
    write_csv(run_sweep(cfg), b)
    assert a.read_bytes() == b.read_bytes()


def test_failing_cell_is_named():
    bad = TargetFunction(lambda t: np.where(t > 0.2, np.nan, 1.0), "nan-tail")
    with pytest.raises(SweepError, match="N=4"):
        run_sweep(SweepConfig(function=bad, N_list=(4,)))


def test_write_csv_reports_path(tmp_path):
    with pytest.raises(OSError, match="missing"):
        write_csv([], tmp_path / "missing" / "x.csv")


def test_cli_sweep_and_gram(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("function = f1\nmethods = TSVD(1e-15); ASVD2(1e-15, 15)\nN = 4, 8\n")
    out = tmp_path / "s.csv"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    assert len(read_csv(out)) == 4
    g = tmp_path / "g.csv"
    assert main(["gram", "--family", "restricted_legendre", "--N", "3", "--out", str(g)]) == 0
    G = np.loadtxt(g, delimiter=",")
    assert G.shape == (3, 3) and G[0, 0] == pytest.approx(0.5, abs=1e-15) and G[1, 1] == pytest.approx(0.125, abs=1e-15)
    with pytest.raises(SystemExit):
        main(["gram", "--family", "augmented_log_legendre", "--N", "6", "--out", str(g)])


def test_cli_check_exit_status(tmp_path, capsys):
    good = tmp_path / "good.cfg"
    good.write_text("function = f1\nmethods = TSVD(1e-15); ASVD1(1e-15, 15)\nN = 4, 8, 16\n")
    assert main(["check", "--config", str(good), "-v"]) == 0
    assert "PASS" in capsys.readouterr().out
    # the large-N coefficient distance proxy is not met at N = 64, so check must fail
    bad = tmp_path / "bad.cfg"
    bad.write_text("function = f1\nmethods = TSVD(1e-15)\nN = 8\nlimit_N = 64\n")
    assert main(["check", "--config", str(bad)]) == 1
    assert "FAIL" in capsys.readouterr().out
    assert main(["check", "--config", str(tmp_path / "nope.cfg")]) == 2


def test_console_entry_point(tmp_path):
    out = tmp_path / "g.csv"
    res = subprocess.run(
        [sys.executable, "-m", "frameapprox", "gram", "--family", "restricted_legendre", "--N", "2", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0, res.stderr
    assert float(out.read_text().split(",")[0]) == pytest.approx(0.5, abs=1e-15)


def test_docstring_examples():
    import doctest

    from frameapprox import experiments, polyquad

    for mod in (experiments, polyquad):
        assert doctest.testmod(mod).failed == 0
