import json
import math
import subprocess


def test_constellation_power_and_slicer(core):
    for order in (4, 16, 256):
        c = core.make_constellation(order)
        assert len(c.points) == order
        power = sum(abs(p) ** 2 for p in c.points) / order
        assert abs(power - 1.0) < 1e-12
        for m, p in enumerate(c.points):
            assert core.slice_index(p, c) == m


def test_filter_converges_on_known_system(core):
    spec = core.AlgorithmSpec()
    spec.variant = core.Variant.nlms
    spec.mu = 0.5
    state = core.FilterState(spec, 8)

    rng = core.RngStream(7, 0)
    h_true = [core.gaussian_complex(rng, 1.0) for _ in range(8)]
    window = [0j] * 8
    err = []
    for _ in range(600):
        x = core.gaussian_complex(rng, 1.0)
        window = [x] + window[:-1]
        d = sum(w * h for w, h in zip(window, h_true))
        rec = state.step(x, d)
        err.append(abs(rec.prior_error) ** 2)
    assert sum(err[-50:]) / 50 < 1e-12 * max(1.0, sum(err[:50]) / 50)


def test_realization_trace_shape_and_determinism(core):
    cfg = core.default_config()
    cfg.train_symbols = 80
    cfg.dd_symbols = 120
    cfg.num_taps = 9
    cfg.delay = 4
    cfg.realizations = 1
    cfg.scatter.begin = 0
    cfg.scatter.end = 200
    for a in cfg.algorithms:
        if a.projection_order > 4:
            a.projection_order = 4
    cfg.validate()

    spec = cfg.algorithms[-1]
    assert spec.display_name == "vsspr"
    t1 = core.run_equalizer_realization(cfg, spec, 42, 0)
    t2 = core.run_equalizer_realization(cfg, spec, 42, 0)
    assert len(t1.sq_error) == 200
    assert t1.sq_error == t2.sq_error
    assert t1.outputs == t2.outputs
    assert all(0.0 <= m < spec.mu_max for m in t1.mu_trace)


def test_learning_experiment_orders_algorithms(core):
    cfg = core.parse_config_text(core.preset_text("paper-fig3"))
    cfg.realizations = 5
    res = core.run_learning_experiment(cfg, 2, 200)
    assert res.labels == ["nlms", "pra", "apa", "vsspr"]
    assert all(len(c) == 5500 for c in res.mse_db)
    # vsspr ends below nlms even at this reduced trial count
    tail = lambda a: sum(res.tail_mean_sq[a]) / len(res.tail_mean_sq[a])
    assert tail(3) < tail(0)


def test_config_json_round_trip(core):
    cfg = core.parse_config_text(core.preset_text("paper-fig4b"))
    snap = cfg.to_json()
    again = core.parse_config_text(snap)
    assert again.to_json() == snap
    assert json.loads(snap)["dd_constellation"] == 256


def test_validation_suite(core):
    results = core.run_validation_suite(20260808)
    assert all(ok for (_, ok, _) in results), results


def test_cli_manifest_replay_is_byte_identical(core, cli_path, tmp_path):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({
        "train_symbols": 60,
        "dd_symbols": 90,
        "equalizer_taps": 9,
        "delay": 4,
        "realizations": 2,
        "scatter": {"begin": 0, "end": 150},
    }))
    out1, out2 = tmp_path / "run1", tmp_path / "run2"

    r1 = subprocess.run(
        [cli_path, "learn", "--config", str(config), "--out", str(out1), "--jobs", "1"],
        capture_output=True, text=True)
    assert r1.returncode == 0, r1.stderr
    manifest = out1 / "manifest.json"
    assert manifest.exists()

    r2 = subprocess.run(
        [cli_path, "learn", "--config", str(manifest), "--out", str(out2), "--jobs", "2"],
        capture_output=True, text=True)
    assert r2.returncode == 0, r2.stderr

    a = (out1 / "learning_curve.csv").read_bytes()
    b = (out2 / "learning_curve.csv").read_bytes()
    assert a == b

    doc = json.loads(manifest.read_text())
    assert doc["command"] == "learn"
    assert "learning_curve.csv" in doc["outputs"]


def test_cli_exit_codes(core, cli_path, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"algorithms": [{"name": "vsspr", "mu_max": 2.5}]}')
    r = subprocess.run([cli_path, "learn", "--config", str(bad)], capture_output=True, text=True)
    assert r.returncode == 2
    assert "stability" in r.stderr

    r = subprocess.run([cli_path, "learn", "--config", str(tmp_path / "missing.json")],
                       capture_output=True, text=True)
    assert r.returncode == 2

    # output path blocked by a regular file -> i/o error
    blocker = tmp_path / "blocker"
    blocker.write_text("x")
    cfg = tmp_path / "tiny.json"
    cfg.write_text('{"train_symbols": 30, "dd_symbols": 10, "equalizer_taps": 5, '
                   '"delay": 2, "realizations": 1, "scatter": {"begin": 0, "end": 40}}')
    r = subprocess.run(
        [cli_path, "learn", "--config", str(cfg), "--out", str(blocker / "sub")],
        capture_output=True, text=True)
    assert r.returncode == 3


def test_cli_validate_passes(core, cli_path, tmp_path):
    r = subprocess.run([cli_path, "validate", "--out", str(tmp_path / "val")],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stdout + r.stderr
    assert "status=FAIL" not in r.stdout
    assert (tmp_path / "val" / "validation.txt").exists()


def test_cli_ser_sorted_and_zero_at_high_snr(core, cli_path, tmp_path):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({
        "train_symbols": 80,
        "dd_symbols": 120,
        "equalizer_taps": 9,
        "delay": 4,
        "dd_constellation": 4,
        "realizations": 2,
        "snr_sweep": [300, 25],
        "scatter": {"begin": 0, "end": 200},
    }))
    out = tmp_path / "ser"
    r = subprocess.run([cli_path, "ser", "--config", str(config), "--out", str(out)],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    lines = (out / "ser.csv").read_text().splitlines()
    assert lines[0].startswith("snr_db,ser_nlms_qam4")
    rows = [l.split(",") for l in lines[1:]]
    assert [float(r[0]) for r in rows] == [25.0, 300.0]  # ascending
    assert all(float(v) == 0.0 for v in rows[1][1:])     # noise-free nails it


def test_cli_scatter_empty_span_is_header_only(core, cli_path, tmp_path):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({
        "train_symbols": 40,
        "dd_symbols": 20,
        "equalizer_taps": 5,
        "delay": 2,
        "realizations": 1,
        "scatter": {"begin": 30, "end": 30},
    }))
    out = tmp_path / "sc0"
    r = subprocess.run([cli_path, "scatter", "--config", str(config), "--out", str(out)],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert (out / "scatter.csv").read_text() == "kind,re,im\n"


def test_cli_scatter_and_svg(core, cli_path, tmp_path):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({
        "train_symbols": 60,
        "dd_symbols": 60,
        "equalizer_taps": 9,
        "delay": 4,
        "realizations": 1,
        "scatter": {"algorithm": "vsspr", "begin": 20, "end": 100},
    }))
    out = tmp_path / "sc"
    r = subprocess.run(
        [cli_path, "scatter", "--config", str(config), "--out", str(out), "--svg"],
        capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    lines = (out / "scatter.csv").read_text().splitlines()
    assert lines[0] == "kind,re,im"
    kinds = {l.split(",")[0] for l in lines[1:]}
    assert kinds == {"tx", "rx", "eq"}
    assert (out / "scatter.svg").read_text().startswith("<svg")
