import io
import json
import re
from fractions import Fraction

import jsonschema
import pytest

from causalconfirm.adjust import do_adjust
from causalconfirm.chart import emit_group_chart
from causalconfirm.errors import DuplicateCell, ParseError, SchemaError
from causalconfirm.ingest import (
    builtin_datasets,
    dump_dataset,
    flat_dataset,
    format_number,
    load_dataset,
    parse_dataset,
    parse_number,
)
from causalconfirm.report import (
    REPORT_JSON_SCHEMA,
    analyze,
    render_report,
    report_from_dict,
    report_to_dict,
)
from causalconfirm.tables import CausalRole, Schema

COUNTS = """group,cause,successes,total
a,t,3,10
a,c,5,10
b,t,7,10
b,c,9,12
"""


def test_parse_counts():
    ds = parse_dataset(COUNTS)
    assert ds.schema is Schema.COUNTS
    assert ds.causes == ("t", "c")
    assert ds.rate(1, 1) == Fraction(3, 4)


def test_parse_rates_with_directives():
    text = (
        "group,cause,rate,weight\n"
        "# free comment\n"
        "#causes,c,t\n#outcome,dead,alive\n#prior,a,0.4\n#prior,b,0.6\n#meta,source,made up\n"
        "a,t,0.1,0.5\na,c,0.2,0.25\nb,t,0.3,0.5\nb,c,0.4,0.75\n"
    )
    ds = parse_dataset(text)
    assert ds.causes == ("c", "t")
    assert ds.outcome_labels == ("dead", "alive")
    assert ds.group_prior() == (Fraction(2, 5), Fraction(3, 5))
    assert dict(ds.metadata) == {"source": "made up"}


def test_unknown_header():
    with pytest.raises(SchemaError):
        parse_dataset("grp,cause,successes,total\na,t,1,2\n")


@pytest.mark.parametrize("line, col", [
    ("a,t,1e3,10", 3), ("a,t,1,1,000", None), ("a,t,x,10", 3), ("a,t,3,", 4),
])
def test_malformed_row_reports_location(line, col):
    text = "group,cause,successes,total\na,c,1,2\n" + line + "\n"
    with pytest.raises(ParseError) as exc:
        parse_dataset(text)
    assert exc.value.line == 3
    assert str(exc.value).startswith("line 3")
    if col is not None:
        assert exc.value.column == col


def test_duplicate_cell_names_both_lines():
    with pytest.raises(DuplicateCell, match="line 4.*line 2"):
        parse_dataset("group,cause,successes,total\na,t,1,2\na,c,1,2\na,t,1,3\n")


def test_counts_files_reject_priors():
    with pytest.raises(SchemaError):
        parse_dataset(COUNTS + "#prior,a,0.5\n")


def test_numbers():
    assert parse_number("0.25") == Fraction(1, 4)
    assert parse_number("1/3") == Fraction(1, 3)
    for bad in ("1e-3", "1,5", "", "--1", "0x10"):
        with pytest.raises(ParseError):
            parse_number(bad)
    assert format_number(Fraction(1, 4)) == "0.25"
    assert format_number(Fraction(1, 3)) == "1/3"
    assert format_number(Fraction(-7, 200)) == "-0.035"
    assert format_number(Fraction(5)) == "5"


@pytest.mark.parametrize("name", list(builtin_datasets()))
def test_round_trip_bundled(name):
    for _, ds in builtin_datasets()[name].parts:
        assert parse_dataset(dump_dataset(ds)) == ds


def test_load_from_path_and_stream(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text(COUNTS, encoding="utf-8")
    assert load_dataset(p) == load_dataset(str(p)) == load_dataset(io.StringIO(COUNTS))


def test_builtin_catalog():
    cat = builtin_datasets()
    assert set(cat) == {"kidney_stones", "covid_cfr_by_age", "vaccine_rates",
                        "mortality_covid", "pd_vs_deltastar"}
    ks = cat["kidney_stones"].parts[0][1]
    assert len(ks.groups) == 2 and sum(c.total for g in ks.groups for c in g.cells) == 700
    cases = cat["vaccine_rates"].part("cases")
    assert [float(r) * 1e5 for r in cases.pooled_rates()] == pytest.approx([512.6, 189.5])
    deaths = cat["vaccine_rates"].part("deaths")
    assert [float(r) * 1e5 for r in deaths.pooled_rates()] == pytest.approx([1.89, 0.34])
    mort = cat["mortality_covid"]
    assert mort.part("unvaccinated").pooled_rates() == (Fraction("0.013"), Fraction("0.014"))
    assert mort.part("vaccinated").pooled_rates() == (Fraction("0.013"), Fraction("0.01318"))


@pytest.fixture(scope="module")
def kidney_report():
    ds = load_dataset("kidney_stones")
    return analyze(ds, (CausalRole.CONFOUNDER, CausalRole.MEDIATOR), name="kidney_stones")


def test_text_report_rows(kidney_report):
    text = render_report(kidney_report, "text").decode()
    assert re.search(r"^P\(y1\|do\(x\)\)\s+0\.7818\s+0\.8320\s+do-adjusted, role=confounder", text, re.M)
    row = re.search(r"^P\(y1\|x\)\s+(\S+)\s+(\S+)", text, re.M)
    assert float(row.group(1)) == pytest.approx(0.83, abs=0.005)
    assert float(row.group(2)) == pytest.approx(0.78, abs=0.005)
    assert "paradox present" in text


def test_percent_display(kidney_report):
    text = render_report(kidney_report, "text", percent=True).decode()
    assert "78.18%" in text


def test_json_report_validates_and_round_trips(kidney_report):
    doc = json.loads(render_report(kidney_report, "json"))
    jsonschema.validate(doc, REPORT_JSON_SCHEMA)
    back = report_from_dict(doc)
    assert report_to_dict(back) == doc
    assert doc["measures"]["confounder"]["cc"]["value"] == kidney_report.measures["confounder"]["cc"].value


def test_json_infinity_is_a_string():
    ds = builtin_datasets()["pd_vs_deltastar"].part("no_counterexample")
    doc = json.loads(render_report(analyze(ds), "json"))
    jsonschema.validate(doc, REPORT_JSON_SCHEMA)
    assert doc["measures"]["observed"]["rr"]["value"] == "inf"
    assert report_from_dict(doc).measures["observed"]["rr"].value == float("inf")


def test_empty_measure_selection():
    ds = load_dataset("kidney_stones")
    r = analyze(ds, (CausalRole.CONFOUNDER,), ())
    assert r.measures == {}
    text = render_report(r, "text").decode()
    assert "P(y1|do(x))" in text and "measure" not in text


@pytest.mark.parametrize("fmt", ["text", "csv", "json"])
def test_rendering_is_deterministic(fmt):
    a = analyze(load_dataset("covid_cfr_by_age"), ("confounder",), name="c")
    b = analyze(load_dataset("covid_cfr_by_age"), ("confounder",), name="c")
    assert render_report(a, fmt) == render_report(b, fmt)


def test_csv_report_has_full_precision(kidney_report):
    text = render_report(kidney_report, "csv").decode()
    assert "adjusted:confounder,p_y1_do,x1,0.7818" in text


@pytest.mark.parametrize("name, bars", [("kidney_stones", 4), ("covid_cfr_by_age", 22)])
def test_chart_bars(name, bars):
    ds = load_dataset(name)
    chart = emit_group_chart(ds, do_adjust(ds, CausalRole.CONFOUNDER))
    assert chart.svg.count('class="bar"') == bars
    assert chart.svg.count('class="marker"') == 4
    assert 'width="800" height="400"' in chart.svg
    assert len(chart.csv.strip().splitlines()) == bars + 1
    assert emit_group_chart(ds, do_adjust(ds, CausalRole.CONFOUNDER)) == chart


def test_single_group_chart_markers_sit_on_bars():
    ds = flat_dataset(0.3, 0.1)
    chart = emit_group_chart(ds, do_adjust(ds, CausalRole.CONFOUNDER))
    assert chart.svg.count('class="bar"') == 2
    tops = re.findall(r'class="bar".*? y="([\d.]+)"', chart.svg)
    marks = set(re.findall(r'class="marker".*? y1="([\d.]+)"', chart.svg))
    assert marks == set(tops)
