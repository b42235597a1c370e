"""End-to-end checks of the Python bindings against the bundled models."""

import math
import os

import pytest

import gsm

MODELS = os.environ.get("GSM_MODELS_DIR", "models")


def model_file(name):
    return os.path.join(MODELS, name)


def test_load_model_kinds():
    for name, kind in [
        ("flipflop.crn", "crn"),
        ("polymer.spi", "spi"),
        ("mixed.multi", "multi"),
    ]:
        model = gsm.load_model(model_file(name))
        assert model.kind == kind
        assert model.path.endswith(name)


def test_species_names_strip_tags_only_when_transparent():
    assert gsm.load_model(model_file("flipflop.crn")).species_names() == [
        "A",
        "B",
    ]
    assert gsm.load_model(model_file("single.multi")).species_names() == [
        "A",
        "B",
    ]
    mixed = gsm.load_model(model_file("mixed.multi")).species_names()
    assert mixed == ["crn::DNA", "spi::Pol()"]


def test_trace_shape_and_grid():
    model = gsm.load_model(model_file("flipflop.crn"))
    trace = gsm.run(model, t_max=2.0, dt=0.5, seed=3)
    assert trace.columns == ["A", "B"]
    assert trace.times == [0.0, 0.5, 1.0, 1.5, 2.0]
    assert len(trace.populations) == 5
    for row in trace.populations:
        assert len(row) == len(trace.columns)
        assert sum(row) == 4  # the switch conserves its four tokens
    assert trace.steps > 0
    assert trace.deadlock_time is None
    assert trace.csv.startswith("time,A,B\n")


def test_seeded_runs_replay_byte_identically():
    model = gsm.load_model(model_file("mixed.multi"))
    first = gsm.run(model, t_max=2.0, dt=0.5, seed=11, algorithm="nrm")
    second = gsm.run(model, t_max=2.0, dt=0.5, seed=11, algorithm="nrm")
    other = gsm.run(model, t_max=2.0, dt=0.5, seed=12, algorithm="nrm")
    assert first.csv == second.csv
    assert first.csv != other.csv


def test_validation_flag_runs_clean():
    model = gsm.load_model(model_file("polymer.spi"))
    trace = gsm.run(model, t_max=4.0, dt=1.0, seed=5, validate=True)
    assert len(trace.columns) > 5  # polymerisation mints new species


def test_deadlock_is_reported():
    model = gsm.parse_crn_text("A ->{1}\ninit A 3")
    trace = gsm.run(model, t_max=100.0, dt=25.0, seed=1)
    assert trace.deadlock_time is not None
    assert trace.steps == 3
    assert trace.populations[-1] == [0]


def test_ensemble_statistics():
    model = gsm.parse_crn_text("A ->{1}\ninit A 1000")
    ensemble = gsm.run_ensemble(model, t_max=1.0, dt=1.0, runs=200, seed=6)
    assert ensemble.runs == 200
    assert ensemble.columns == ["A"]
    mean = ensemble.means[1][0]
    assert abs(mean - 1000 * math.exp(-1)) < 15
    assert ensemble.stds[1][0] > 0
    assert ensemble.csv.startswith("time,A:mean,A:std\n")


def test_spi_text_parsing_and_run():
    model = gsm.parse_spi_text(
        "new c@0.5;\nX() = !c;\nY() = ?c;\nrun X() | X() | Y()"
    )
    assert model.kind == "spi"
    trace = gsm.run(model, t_max=10.0, dt=10.0, seed=2)
    assert trace.columns == ["X()", "Y()"]


def test_parse_errors_carry_positions():
    with pytest.raises(gsm.ParseError) as excinfo:
        gsm.parse_crn_text("A + B + C ->{1} D", name="broken.crn")
    assert "broken.crn:1:1" in str(excinfo.value)
    assert "at most two reactant occurrences" in str(excinfo.value)


def test_model_errors_surface():
    with pytest.raises(gsm.ModelError):
        gsm.load_model(model_file("no_such_model.crn"))
    with pytest.raises(gsm.ModelError):
        gsm.run(gsm.parse_spi_text(
            "new c@1;\nnew a@1;\nS() = !c(a,a);\nR() = ?c(x);\nrun S() | R()"
        ), t_max=1.0, dt=1.0)


def test_bad_arguments_are_rejected():
    model = gsm.load_model(model_file("flipflop.crn"))
    with pytest.raises(ValueError):
        gsm.run(model, t_max=-1.0, dt=0.5)
    with pytest.raises(ValueError):
        gsm.run(model, t_max=1.0, dt=0.5, algorithm="gibson")
