import io
import json
import math

import numpy as np
import pytest

from spfc.design import FeasibilityMap
from spfc.errors import ParameterError, SPFCError
from spfc.params import SystemParams
from spfc.scattering import amplitudes, metrics
from spfc.sweep import (FIGURES, FidelityComparison, MapRequest, SweepSpec, emit_csv,
                        figure_preset, read_csv, render_figure, run_sweep)

from conftest import FIG2A, FIG2D


def test_fig2a_peak_at_resonance():
    result = run_sweep(figure_preset("fig2a"))
    p2 = result.column("p_inelastic")
    i = int(np.argmax(p2))
    assert result.column("delta_a")[i] == 0.0
    assert abs(p2[i] - 1) < 1e-12
    assert len(result) == 2001


def test_fig2d_three_unity_points():
    result = run_sweep(figure_preset("fig2d"))
    da, p2 = result.column("delta_a"), result.column("p_inelastic")
    # local maxima of the sampled curve sit next to 0 and +-sqrt(7)
    peaks = [da[i] for i in range(1, len(da) - 1) if p2[i] > p2[i - 1] and p2[i] >= p2[i + 1]]
    assert np.allclose(sorted(peaks), [-math.sqrt(7), 0, math.sqrt(7)], atol=0.02)
    for x in (0.0, math.sqrt(7), -math.sqrt(7)):
        assert abs(abs(amplitudes(FIG2D, x).t2) ** 2 - 1) < 1e-10


def test_fig4b_lossy():
    result = run_sweep(figure_preset("fig4b"))
    assert np.all(result.column("survival") < 1)
    assert np.nanmax(result.column("fidelity_f")) > 0.9


def test_rows_ordered_and_counted():
    spec = SweepSpec("omega1", 0.0, 3.0, 7, FIG2A, delta_a=0.5)
    result = run_sweep(spec)
    assert len(result) == 7
    assert np.all(np.diff(result.data[:, 0]) > 0)


def test_two_points_equal_independent_amp_calls():
    spec = SweepSpec("delta_a", -1.3, 2.1, 2, FIG2A.with_dissipation(0.1))
    result = run_sweep(spec)
    for row, da in zip(result.data, (-1.3, 2.1)):
        pair = amplitudes(spec.base, da)
        m = metrics(pair)
        assert tuple(row) == (da, pair.t1.real, pair.t1.imag, pair.t2.real, pair.t2.imag,
                              m.p_elastic, m.p_inelastic, m.survival, m.fidelity_f)


@pytest.mark.parametrize("variable", ["delta1", "delta2", "omega2", "gamma"])
def test_other_variables_match_pointwise(variable):
    spec = SweepSpec(variable, 0.0, 2.0, 5, FIG2A, delta_a=0.7)
    result = run_sweep(spec)
    for row in result.data:
        pair = amplitudes(spec.params_at(row[0]), 0.7)
        assert row[1] == pair.t1.real and row[3] == pair.t2.real


def test_sagnac_columns():
    spec = SweepSpec("delta_a", -3, 3, 13, FIG2A, outputs=("metrics", "sagnac"))
    r = run_sweep(spec)
    assert np.allclose(r.column("p_interferometer"), r.column("p_inelastic"), atol=1e-12)
    assert np.allclose(r.column("p_single_direction"), r.column("p_inelastic") / 2, atol=1e-12)


@pytest.mark.parametrize("kwargs, field", [
    ({"variable": "kappa"}, "variable"),
    ({"start": 1.0, "stop": 0.0}, "start"),
    ({"points": 1}, "points"),
    ({"variable": "omega1", "start": -1.0, "stop": 1.0}, "omega1"),
    ({"variable": "gamma", "start": -0.1, "stop": 1.0}, "gamma_a"),
    ({"outputs": ("plots",)}, "outputs"),
])
def test_invalid_spec_names_field(kwargs, field):
    with pytest.raises(ParameterError, match=field):
        SweepSpec(**kwargs)


def test_spec_json_round_trip():
    spec = SweepSpec("delta2", -2.0, 2.0, 5, FIG2A.with_dissipation(0.1), 1.0, ("metrics",))
    assert SweepSpec.from_json(json.dumps(spec.to_dict())) == spec
    with pytest.raises(ParameterError, match="colour"):
        SweepSpec.from_dict(spec.to_dict() | {"colour": "red"})


def test_thread_cap_is_deterministic(monkeypatch):
    spec = SweepSpec("delta_a", -20, 20, 10001, FIG2A)
    serial = emit_csv(run_sweep(spec))
    monkeypatch.setenv("SPFC_THREADS", "3")
    assert emit_csv(run_sweep(spec)) == serial


@pytest.mark.parametrize("raw", ["0", "-2", "many"])
def test_bad_thread_cap(monkeypatch, raw):
    monkeypatch.setenv("SPFC_THREADS", raw)
    with pytest.raises(ParameterError, match="SPFC_THREADS"):
        run_sweep(SweepSpec(points=3))


# ------------------------------------------------------------ presets

SQRT2 = math.sqrt(2)


@pytest.mark.parametrize("name, expected", [
    ("fig2a", dict(gamma1=2.0, omega1=5 * SQRT2, omega2=5.0)),
    ("fig2b", dict(gamma1=2.0, omega1=2 * SQRT2, omega2=2.0)),
    ("fig2c", dict(gamma1=2.0, omega1=0.5 * SQRT2, omega2=0.5)),
    ("fig2d", dict(gamma1=1.0, omega1=2.0, omega2=2.0)),
    ("fig4a", dict(gamma1=2.0, omega1=SQRT2 / 5, omega2=0.2, gamma_a=0.1, gamma_f=0.1, gamma_d=0.1)),
    ("fig4b", dict(gamma1=2.0, omega1=5 * SQRT2, omega2=5.0, gamma_a=0.1, gamma_f=0.1, gamma_d=0.1)),
    ("fig4c", dict(gamma1=2.0, omega1=math.sqrt(91) / 3, omega2=math.sqrt(140) / 3,
                   delta1=-4.0, delta2=-4.0, gamma_a=0.1, gamma_f=0.1, gamma_d=0.1)),
])
def test_sweep_preset_parameters(name, expected):
    spec = figure_preset(name)
    assert isinstance(spec, SweepSpec)
    assert spec.base == SystemParams(**expected)
    assert (spec.variable, spec.start, spec.stop, spec.points) == ("delta_a", -20.0, 20.0, 2001)


def test_map_presets():
    for name in ("fig3a", "fig3b", "fig3c", "fig3d"):
        req = figure_preset(name)
        assert isinstance(req, MapRequest)
        assert (req.gamma1, req.gamma2, req.delta_a) == (2.0, 1.0, 3.0)
    assert figure_preset("fig3c").delta1 == (-3.0, -3.0, 1)
    assert figure_preset("fig3d").delta1 == (5.0, 5.0, 1)
    fmap = render_figure("fig3c")
    assert isinstance(fmap, FeasibilityMap) and fmap.shape == (1, 1001)


def test_fig4d_preset():
    comp = figure_preset("fig4d")
    assert isinstance(comp, FidelityComparison)
    assert comp.labels == ("fig4a", "fig4b", "fig4c")
    assert comp.specs == tuple(figure_preset(n) for n in comp.labels)


def test_unknown_preset():
    with pytest.raises(ParameterError, match="fig9"):
        figure_preset("fig9")


def test_all_presets_render():
    for name in FIGURES:
        assert len(emit_csv(render_figure(name))) > 0


# ------------------------------------------------------------ CSV

def test_two_point_csv_has_three_lines():
    data = emit_csv(run_sweep(SweepSpec(points=2)))
    lines = data.decode("utf-8").splitlines()
    assert len(lines) == 3
    assert lines[0] == "delta_a,re_t1,im_t1,re_t2,im_t2,p_elastic,p_inelastic,survival,fidelity_f"
    assert data.endswith(b"\n")


def test_csv_round_trip_bit_identical(tmp_path):
    result = run_sweep(SweepSpec("delta_a", -7.3, 11.9, 301, FIG2A.with_dissipation(0.07)))
    path = tmp_path / "s.csv"
    emit_csv(result, path)
    header, rows = read_csv(path)
    assert tuple(header) == result.columns
    back = np.array([[float(v) for v in r] for r in rows])
    assert np.array_equal(back, result.data)


def test_fig2a_csv_peak(tmp_path):
    path = tmp_path / "fig2a.csv"
    emit_csv(render_figure("fig2a"), path)
    header, rows = read_csv(path)
    col = header.index("p_inelastic")
    values = [float(r[col]) for r in rows]
    i = int(np.argmax(values))
    assert float(rows[i][0]) == 0.0
    assert abs(values[i] - 1.0) < 1e-12


def test_undefined_fidelity_is_empty_field():
    # the only zero-survival input: drive a hypothetical perfect absorber
    from spfc.sweep import SweepResult
    spec = SweepSpec(points=2)
    res = SweepResult(spec, spec.columns(), np.array([[0.0] * 8 + [np.nan]] * 2))
    line = emit_csv(res).decode().splitlines()[1]
    assert line.endswith(",")


def test_map_csv_columns():
    text = emit_csv(render_figure("fig3d")).decode()
    header = text.splitlines()[0]
    assert header == "delta1,delta2,omega1_sq,omega2_sq,omega1,omega2,feasible,diagnostic"
    assert "omega1_sq nonpositive" in text


def test_stream_destination():
    buf = io.StringIO()
    data = emit_csv(run_sweep(SweepSpec(points=3, base=FIG2A)), buf)
    assert buf.getvalue().encode() == data


def test_io_failure_names_destination(tmp_path):
    bad = tmp_path / "missing" / "x.csv"
    with pytest.raises(SPFCError, match="missing"):
        emit_csv(run_sweep(SweepSpec(points=2)), bad)
