import gzip
import json
import subprocess
import sys

import pytest

from hashtc import datasets
from hashtc.cli import main
from hashtc.graph_io import read_csr
from hashtc.orientation import Permutation
from hashtc.pipeline import PipelineConfig, PipelineError, run_pipeline
from hashtc.synthetic import SyntheticSpec

K4 = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text("# K4\n" + K4)
    return str(path)


def run_json(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


def test_defaults(capsys, k4_file):
    out = run_json(capsys, "--input", k4_file)
    assert out["triangles"] == 4
    assert out["schema"] == 1


@pytest.mark.parametrize("extra", [
    ["--mode", "edge"], ["--mode", "edge", "--grid", "2", "--splits", "2"], ["--mode", "naive"], ["--mode", "merge"],
    ["--reorder", "indegree"], ["--reorder", "collective", "--collective-degree", "original"],
    ["--reorder", "three-subset", "--grid", "2", "--splits", "2", "--workers", "2"],
    ["--reorder", "degree", "--chunk-size", "3", "--workers", "4"],
    ["--backend", "python", "--grid", "3"],
    ["--repeat", "3", "--time-all"],
])
def test_modes_and_options(capsys, k4_file, extra):
    assert run_json(capsys, "count", "--input", k4_file, *extra)["triangles"] == 4


def test_repeat_reports_min(capsys, k4_file):
    out = run_json(capsys, "--input", k4_file, "--repeat", "2")
    assert out["repeat"] == 2 and out["elapsed_ns_min"] <= out["elapsed_ns"]


def test_csv_report(capsys, k4_file):
    assert main(["--input", k4_file, "--report", "csv"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header.startswith("triangles,max_collision,phi,teps")
    assert row.startswith("4,")


def test_grid_zero_is_config_error(capsys, tmp_path):
    missing = str(tmp_path / "does-not-exist.txt")
    assert main(["--input", missing, "--grid", "0"]) == 2
    assert "[config]" in capsys.readouterr().err


def test_load_error_is_stage_tagged(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n0 x\n")
    assert main(["--input", str(bad)]) != 0
    err = capsys.readouterr().err
    assert "[load]" in err and "line 2" in err


def test_bad_scheduler_value(capsys, k4_file):
    assert main(["--input", k4_file, "--chunk-size", "0"]) == 2


def test_binary_input(capsys, tmp_path):
    path = tmp_path / "k4.bin"
    assert main(["generate", "gnp", "--n", "4", "--p", "1.0", "--output", str(path)]) == 0
    assert path.read_bytes()[:4] == b"TCEL"
    assert run_json(capsys, "--input", str(path), "--format", "bin")["triangles"] == 4


def test_synthetic_lattice(capsys):
    assert run_json(capsys, "--synthetic", "lattice3d", "--dims", "4", "4", "4")["triangles"] == 0


def test_emit_perm_and_partitions(capsys, k4_file, tmp_path):
    perm_path = tmp_path / "perm.u32"
    part_dir = tmp_path / "parts"
    out = run_json(capsys, "--input", k4_file, "--reorder", "collective", "--emit-perm",
                   str(perm_path), "--grid", "2", "--emit-partitions", str(part_dir))
    assert out["triangles"] == 4
    assert Permutation.read(perm_path).is_valid()
    manifest = json.loads((part_dir / "manifest.json").read_text())
    assert manifest["n"] == 2 and sum(map(sum, manifest["edge_counts"])) == 6
    assert read_csr(part_dir / "part_0_1.bin").vertex_count == 2


def test_run_pipeline_direct():
    cfg = PipelineConfig(synthetic=SyntheticSpec("gnp", {"n": 30, "p": 0.3}, 4), grid=2, splits=2)
    rep, status = run_pipeline(cfg)
    ref, _ = run_pipeline(PipelineConfig(synthetic=cfg.synthetic, mode="naive"))
    assert status == 0 and rep.triangles == ref.triangles
    with pytest.raises(PipelineError) as exc:
        run_pipeline(PipelineConfig(synthetic=cfg.synthetic, mode="merge", grid=2))
    assert exc.value.stage == "config"


def test_module_entry_point(k4_file):
    out = subprocess.run([sys.executable, "-m", "hashtc.cli", "--input", k4_file],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["triangles"] == 4


@pytest.fixture
def local_dataset(tmp_path, monkeypatch):
    archive = tmp_path / "src.txt.gz"
    with gzip.open(archive, "wt") as fh:
        fh.write(K4)
    ds = datasets.Dataset("tiny", archive.as_uri(), 4, 6, 4)
    monkeypatch.setitem(datasets.DATASETS, "tiny", ds)
    return archive


def test_fetch_and_pin_checksum(local_dataset, tmp_path, capsys):
    dest = tmp_path / "data"
    path = datasets.fetch("tiny", dest)
    assert path.read_text() == K4
    pin = dest / "tiny.txt.gz.sha256"
    assert pin.read_text().strip() == datasets.sha256sum(local_dataset)
    assert datasets.find_dataset("tiny", dest) == path
    assert run_json(capsys, "--input", str(path))["triangles"] == 4


def test_fetch_checksum_mismatch(local_dataset, tmp_path):
    with pytest.raises(datasets.ChecksumMismatch):
        datasets.fetch("tiny", tmp_path / "d", sha256="0" * 64)
    assert datasets.find_dataset("tiny", tmp_path / "d") is None


def test_fetch_subcommand(local_dataset, tmp_path, capsys):
    digest = datasets.sha256sum(local_dataset)
    assert main(["fetch-datasets", "tiny", "--dest", str(tmp_path / "x"), "--sha256", digest]) == 0
    assert capsys.readouterr().out.strip().endswith("tiny.txt")
