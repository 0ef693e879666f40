import asyncio
import shutil
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import pytest

from batch_runtime import run_all
from runtime import execute_task, list_registered_tasks, render_records, render_text, report_records, write_outputs
from scenarios import Expectation, list_fixtures, load_fixture
from settings import FixtureTier, Settings
from tasks import TASKS, VerifyTask
from tasks.base_task import coupling_metrics
from tasks.render_task import graph_elements, render_graph


def _run(task_key, scenario, overrides=None, settings=None):
    return asyncio.run(execute_task(task_key, scenario, overrides, settings=settings))


def _expecting(scenario, **expect):
    return scenario.model_copy(update={"expect": {k: Expectation(**v) for k, v in expect.items()}})


# ==================== Dispatcher ====================

def test_registry_covers_every_subcommand():
    assert set(list_registered_tasks()) == {
        "solve", "optimize", "verify", "schedule", "compile", "simulate", "compare", "render",
    }
    assert set(TASKS) == set(list_registered_tasks())


def test_unknown_task_key():
    with pytest.raises(ValueError, match="Unknown task_key: 'teleport'"):
        _run("teleport", load_fixture("fig4-g1-row-c"))


def test_task_info():
    info = VerifyTask().get_info()
    assert info["name"] == "verify"
    assert info["type"] == "VerifyTask"


# ==================== Tasks ====================

def test_verify_fixture_passes():
    response = _run("verify", load_fixture("fig4-g1-row-c"))
    assert response["success"] is True
    assert response["exit_code"] == 0
    metrics = response["data"]["metrics"]
    assert metrics["scale"] == pytest.approx(8.502, abs=1e-3)
    assert metrics["lambda_2_4"] == 0.0
    assert response["metadata"]["tier"] == "exact"
    assert "scenario.toml" in response["data"]["artifacts"]


def test_unmet_expectation_is_a_verification_failure():
    scenario = _expecting(load_fixture("fig4-g1-row-c"), scale={"value": 1.0})
    response = _run("verify", scenario)
    assert response["success"] is False
    assert response["exit_code"] == 3
    assert "scale" in response["error"]


def test_unreported_metric_fails():
    scenario = _expecting(load_fixture("fig4-g1-row-c"), lambda_max={"min": 1.0})
    response = _run("verify", scenario)
    assert response["exit_code"] == 3
    assert response["data"]["failures"] == ["metric 'lambda_max' was not reported"]


def test_advisory_failures_never_change_the_exit_code():
    scenario = _expecting(load_fixture("fig4-g1-row-c"), scale={"value": 1.0})
    scenario = scenario.model_copy(update={"tier": FixtureTier.ADVISORY})
    response = _run("verify", scenario)
    assert response["success"] is True
    assert response["exit_code"] == 0
    assert response["data"]["failures"]


def test_missing_section_is_a_config_error():
    scenario = load_fixture("fig4-g1-row-c").model_copy(update={"vectors": None})
    response = _run("verify", scenario)
    assert response["exit_code"] == 2
    assert "vectors" in response["error"]


def test_unknown_preset_is_a_config_error():
    scenario = load_fixture("fig4-g1-row-c")
    scenario = scenario.model_copy(update={"grouping": scenario.grouping.model_copy(update={"preset": "G7"})})
    response = _run("verify", scenario)
    assert response["exit_code"] == 2
    assert "G7" in response["error"]


def test_max_qubits_override_is_bounded():
    response = _run("verify", load_fixture("fig4-g1-row-c"), {"max_qubits": 30})
    assert response["exit_code"] == 2


def test_statevector_cap_applies_to_simulation():
    response = _run("simulate", load_fixture("fig10-ghz"), {"max_qubits": 8})
    assert response["exit_code"] == 2
    assert "cap" in response["error"]


def test_seed_and_tolerance_overrides():
    response = _run("verify", load_fixture("fig4-g1-row-c"), {"seed": 5, "tolerance": 1e-6})
    assert response["metadata"]["seed"] == 5
    assert response["metadata"]["tolerance"] == 1e-6


def test_schedule_task_reports_phase_errors():
    response = _run("schedule", load_fixture("nn-3x3"))
    assert response["success"] is True
    metrics = response["data"]["metrics"]
    assert metrics["parallel_phase_error"] < 1e-9
    assert metrics["parallel_chi_bound"] > 0
    assert "sequential_events.txt" in response["data"]["artifacts"]


def test_compile_task_matches_hadamard_time():
    response = _run("compile", load_fixture("fig10-hadamard"))
    assert response["success"] is True
    assert "program.txt" in response["data"]["artifacts"]


def test_compare_scaling_construction():
    response = _run("compare", load_fixture("appD-N8"))
    assert response["success"] is True
    assert response["data"]["checks"] == {"pair_coverage": True, "closed_form": True}


def test_solve_reproduces_the_worked_star():
    response = _run("solve", load_fixture("appendix-c-star"))
    assert response["success"] is True, response["error"]
    assert response["data"]["metrics"]["lambda_1_3"] == pytest.approx(0.025, abs=1e-3)


def test_trotter_simulation_slope():
    response = _run("simulate", load_fixture("trotter-zz-xfield"))
    assert response["success"] is True
    assert -1.2 <= response["data"]["metrics"]["trotter_slope"] <= -0.8


# ==================== Helpers ====================

def test_coupling_metrics_are_one_based():
    assert coupling_metrics({(0, 2): 1.5, (0, 1): 0}) == {"lambda_1_2": 0.0, "lambda_1_3": 1.5}


def test_graph_elements_scale_pen_width():
    couplings = {(0, 1): 2.0, (0, 2): -1.0, (1, 2): 1e-12}
    vertices, edges = graph_elements(couplings, [[0, 0], [1, 0], [0, 1]], ["A", "B", "A"])
    assert [v["label"] for v in vertices] == ["1A", "2B", "3A"]
    assert [(e["a"], e["b"]) for e in edges] == [("L1", "L2"), ("L1", "L3")]
    assert edges[0]["penwidth"] == pytest.approx(5.0)
    assert edges[1]["penwidth"] == pytest.approx(3.0)
    assert edges[1]["negative"] is True


def test_render_graph_artifacts():
    artifacts, edges = render_graph("pair", "target", {(0, 1): 1.0}, [[0, 0], [1, 0]])
    assert list(artifacts) == ["interaction_graph.dot"]
    assert len(edges) == 1
    assert "L1 -- L2" in artifacts["interaction_graph.dot"]


# ==================== Reports ====================

def test_report_records_sections():
    response = _run("verify", load_fixture("fig4-g1-row-c"))
    records = report_records(response)
    assert list(records)[:5] == ["run", "metrics", "checks", "failures", "artifacts"]
    assert records["run"]["task"] == "verify"
    assert "verification" in records

    parsed = tomllib.loads(render_records(response))
    assert parsed["checks"]["pattern"] is True
    assert parsed["metrics"]["scale"] == pytest.approx(8.502, abs=1e-3)
    assert "scenario.toml" in parsed["artifacts"]["files"]


def test_render_text_lists_metrics_and_checks():
    text = render_text(_run("verify", load_fixture("fig4-g1-row-c")))
    assert text.startswith("# latticeiq report: fig4-g1-row-c (verify)")
    assert "[metrics]" in text
    assert "pattern = pass" in text


def test_failed_response_still_renders():
    scenario = load_fixture("fig4-g1-row-c").model_copy(update={"vectors": None})
    response = _run("verify", scenario)
    assert "FAILED" in render_text(response)
    assert tomllib.loads(render_records(response))["run"]["exit_code"] == 2


def test_write_outputs(tmp_path):
    response = _run("verify", load_fixture("fig4-g1-row-c"))
    written = asyncio.run(write_outputs(response, tmp_path / "out", "records"))
    names = [path.name for path in written]
    assert names[0] == "report.toml"
    assert "scenario.toml" in names
    reloaded = (tmp_path / "out" / "scenario.toml").read_text(encoding="utf-8")
    assert 'name = "fig4-g1-row-c"' in reloaded


def test_write_outputs_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError, match="Unknown report format"):
        asyncio.run(write_outputs({"data": {}}, tmp_path, "yaml"))


# ==================== Batch runtime ====================

def _small_library(tmp_path, names):
    library = tmp_path / "fixtures"
    library.mkdir()
    for path in list_fixtures():
        if path.stem in names:
            shutil.copy(path, library / path.name)
    return library


def test_run_all_small_library(tmp_path, fast_settings):
    library = _small_library(tmp_path, {"fig4-g1-row-c", "appendix-a-m3", "fig8a-full"})
    outcome = asyncio.run(run_all(library, tmp_path / "out", settings=fast_settings))
    assert outcome["exit_code"] == 0
    assert sorted(r["scenario"] for r in outcome["results"]) == ["appendix-a-m3", "fig4-g1-row-c", "fig8a-full"]
    assert (tmp_path / "out" / "summary.txt").is_file()
    assert (tmp_path / "out" / "fig8a-full" / "report.txt").is_file()
    assert "worst exit code 0" in outcome["summary"]


def test_run_all_reports_the_worst_exit(tmp_path, fast_settings):
    library = _small_library(tmp_path, {"fig4-g1-row-c"})
    (library / "broken.toml").write_text("name = [", encoding="utf-8")
    outcome = asyncio.run(run_all(library, tmp_path / "out", settings=fast_settings))
    assert outcome["exit_code"] == 2
    by_name = {r["scenario"]: r for r in outcome["results"]}
    assert by_name["broken"]["exit_code"] == 2
    assert by_name["fig4-g1-row-c"]["exit_code"] == 0


def test_run_all_timeout_is_a_failure(tmp_path):
    settings = Settings(OUTPUT_DIR=str(tmp_path / "out"), TASK_TIMEOUT_SECONDS=0)
    library = _small_library(tmp_path, {"fig4-g1-row-c"})
    outcome = asyncio.run(run_all(library, tmp_path / "out", settings=settings))
    assert outcome["exit_code"] == 3
    assert "timed out" in outcome["results"][0]["error"]


def test_run_all_records_format(tmp_path, fast_settings):
    library = _small_library(tmp_path, {"appendix-a-m3"})
    asyncio.run(run_all(library, tmp_path / "out", fmt="records", settings=fast_settings))
    report = tomllib.loads((tmp_path / "out" / "appendix-a-m3" / "report.toml").read_text(encoding="utf-8"))
    assert report["run"]["success"] is True
    assert report["metrics"]["sequential_phase_error"] < 1e-9
