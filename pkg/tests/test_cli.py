"""Command-line interface: output shape, exit codes, determinism."""

import json

import pytest

from cpamm.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_pairs(out):
    pairs = {}
    for line in out.strip().split("\n"):
        key, value = line.split("=", 1)
        pairs[key] = value
    return pairs


def test_quote(capsys):
    code, out, _ = run_cli(
        capsys, "quote", "--x", "100", "--y", "100", "--direction", "y2x", "--amount", "5"
    )
    assert code == 0
    pairs = parse_pairs(out)
    assert float(pairs["amount_out"]) == pytest.approx(100 * 5 / 105, rel=1e-12)
    assert float(pairs["realized_rate"]) == pytest.approx(100 / 105, rel=1e-12)


def test_swap_exact_fractions(capsys):
    code, out, _ = run_cli(
        capsys,
        "swap",
        "--x",
        "100/1",
        "--y",
        "100/1",
        "--fee",
        "3/1000",
        "--direction",
        "y2x",
        "--amount",
        "100/1",
        "--fee-model",
        "collect_separately",
    )
    assert code == 0
    pairs = parse_pairs(out)
    assert pairs["fee_paid"] == "3/10"
    assert pairs["fees_y"] == "3/10"
    assert pairs["new_y"] == "1997/10"  # 100 + 100 * 0.997


def test_swap_respects_spread_cap(capsys):
    code, out, _ = run_cli(
        capsys,
        "swap",
        "--x",
        "100",
        "--y",
        "100",
        "--direction",
        "y2x",
        "--amount",
        "1000000",
        "--max-spread",
        "0.75",
    )
    assert code == 0
    pairs = parse_pairs(out)
    assert float(pairs["capped_in"]) == pytest.approx(100.0, rel=1e-12)
    assert float(pairs["spread_applied"]) == pytest.approx(0.75, rel=1e-12)


def test_pool_info(capsys):
    code, out, _ = run_cli(
        capsys, "pool-info", "--x", "200", "--y", "50", "--p-x", "1", "--p-y", "4"
    )
    assert code == 0
    pairs = parse_pairs(out)
    assert float(pairs["rate"]) == 4.0
    assert float(pairs["liquidity"]) == pytest.approx(100.0, rel=1e-12)
    assert float(pairs["value"]) == 400.0


def test_il_with_replay_check(capsys):
    code, out, _ = run_cli(
        capsys, "il", "--delta-x", "1", "--delta-y", "4", "--replay-check"
    )
    assert code == 0
    pairs = parse_pairs(out)
    assert float(pairs["loss"]) == pytest.approx(-0.2, rel=1e-12)
    assert float(pairs["loss_replay"]) == pytest.approx(-0.2, rel=1e-9)


def test_evolve(capsys):
    code, out, _ = run_cli(
        capsys, "evolve", "--delta-x", "1", "--delta-y", "4", "--alpha", "0.2", "--t", "1"
    )
    assert code == 0
    pairs = parse_pairs(out)
    assert float(pairs["hold"]) == 2.5
    assert float(pairs["auto_compound"]) == pytest.approx(2.4, rel=1e-12)
    assert float(pairs["collect_separately"]) == pytest.approx(2.5, rel=1e-12)


def test_roi_defaults(capsys):
    code, out, _ = run_cli(capsys, "roi")
    assert code == 0
    pairs = parse_pairs(out)
    assert float(pairs["roi_c_pct"]) == pytest.approx(20.0177, abs=1e-3)
    assert float(pairs["roi_nc_pct"]) == pytest.approx(18.2469, abs=1e-3)


def test_roi_methods_agree(capsys):
    _, out_a, _ = run_cli(capsys, "roi", "--method", "implicit")
    _, out_b, _ = run_cli(capsys, "roi", "--method", "rk4")
    rho_a = float(parse_pairs(out_a)["rho_c"])
    rho_b = float(parse_pairs(out_b)["rho_c"])
    assert rho_a == pytest.approx(rho_b, rel=1e-8)


def test_run_scenario(capsys, tmp_path):
    doc = {
        "pool": {"x": 100, "y": 100},
        "prices": {"p_x": 1.0, "p_y": 1.0},
        "events": [{"type": "price_move", "t": 1.0, "delta_x": 1.0, "delta_y": 4.0}],
    }
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "run-scenario", str(path))
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("label,t,")
    final = lines[-1].split(",")
    assert final[0] == "final"
    assert float(final[8]) == pytest.approx(-0.2, rel=1e-12)


def test_emit_figure_stdout_and_file(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys,
        "emit-figure",
        "--figure",
        "il_one_coin",
        "--grid-min",
        "0",
        "--grid-max",
        "200",
        "--count",
        "3",
    )
    assert code == 0
    assert out.startswith("price_change_pct,il_pct")
    assert len(out.strip().split("\n")) == 4

    target = tmp_path / "fig.csv"
    code, out2, _ = run_cli(
        capsys,
        "emit-figure",
        "--figure",
        "il_one_coin",
        "--grid-min",
        "0",
        "--grid-max",
        "200",
        "--count",
        "3",
        "--out",
        str(target),
    )
    assert code == 0
    assert out2 == ""
    assert target.read_text() == out


def test_emit_figure_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, "emit-figure", "--figure", "fee_model_comparison")
    _, second, _ = run_cli(capsys, "emit-figure", "--figure", "fee_model_comparison")
    assert first == second


def test_input_errors_exit_1(capsys):
    code, _, err = run_cli(
        capsys, "quote", "--x", "100", "--y", "100", "--direction", "y2x", "--amount", "-5"
    )
    assert code == 1
    assert err.startswith("error:")

    code, _, err = run_cli(capsys, "roi", "--step", "0")
    assert code == 1

    code, _, err = run_cli(
        capsys, "emit-figure", "--figure", "il_one_coin", "--grid-min", "-150"
    )
    assert code == 1

    code, _, err = run_cli(capsys, "run-scenario", "/nonexistent/path.json")
    assert code == 1


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["quote", "--x", "100"])  # missing required flags
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["emit-figure", "--figure", "nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
