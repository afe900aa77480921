"""The verification suite: determinism, selection, report rendering."""

import json

import pytest

from zetalab.checks import (
    SuiteConfig,
    known_check_ids,
    render_report_json,
    render_report_text,
    run_all,
)
from zetalab.formats import FormatError

FAST = SuiteConfig(samples=4)


@pytest.fixture(scope="module")
def verdicts():
    return run_all(FAST)


class TestRunAll:
    def test_at_least_twelve_checks_all_pass(self, verdicts):
        assert len(verdicts) >= 12
        failed = [v.check_id for v in verdicts if not v.passed]
        assert not failed, f"failing checks: {failed}"

    def test_deterministic_rendering(self, verdicts):
        again = run_all(FAST)
        assert render_report_text(verdicts) == render_report_text(again)
        assert render_report_json(verdicts) == render_report_json(again)

    def test_exact_selection_has_zero_tolerance(self):
        out = run_all(SuiteConfig(exact_only=True))
        assert out and all(v.tolerance == "0" for v in out)

    def test_selection_filters(self):
        out = run_all(SuiteConfig(selection=("uv_coefficients", "sign_stability")))
        assert sorted(v.check_id for v in out) == ["sign_stability", "uv_coefficients"]

    def test_unknown_selection_rejected(self):
        with pytest.raises(KeyError):
            run_all(SuiteConfig(selection=("does_not_exist",)))

    def test_corrupted_model_file_aborts_before_any_check(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{this is not json", encoding="utf-8")
        with pytest.raises(FormatError):
            run_all(SuiteConfig(selection=("uv_coefficients",), model_files=(str(bad),)))

    def test_extra_model_file_gets_checked(self, tmp_path):
        from zetalab.formats import save_model
        from zetalab.library import get_model

        path = tmp_path / "sphere.json"
        save_model(get_model("sphere2_dirac", a="1/4"), str(path))
        out = run_all(
            SuiteConfig(selection=("uv_coefficients",), model_files=(str(path),))
        )
        assert len(out) == 2 and all(v.passed for v in out)


class TestReportRendering:
    def test_text_report_shape(self, verdicts):
        text = render_report_text(verdicts)
        assert "PASS" in text
        assert text.strip().endswith("checks passed")

    def test_json_report_schema(self, verdicts):
        data = json.loads(render_report_json(verdicts))
        assert isinstance(data, list)
        for entry in data:
            assert set(entry) == {
                "check_id",
                "statement",
                "inputs",
                "computed",
                "passed",
                "tolerance",
            }

    def test_known_ids_stable(self):
        ids = known_check_ids()
        assert "residue_trace" in ids and "branch_identity_circle" in ids
        assert ids == known_check_ids()
