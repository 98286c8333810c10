import pytest

from trendindex.errors import DataError
from trendindex.ingest import (
    MONTHLY_TOPICS,
    OFFICIAL_INDEX,
    WEEKLY_TOPICS,
    ingest_csv,
    ingest_csv_with_info,
    sniff_topics_kind,
)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


WEEKLY_CSV = """date,inflation,tax
2006-01-02,10.0,5.0
2006-01-09,11.0,5.5
2006-01-16,12.0,6.0
2006-01-23,13.0,6.5
2006-01-30,14.0,7.0
2006-02-06,15.0,7.5
2006-02-13,16.0,8.0
2006-02-20,17.0,8.5
2006-02-27,18.0,9.0
2006-03-06,19.0,9.5
"""


class TestWeekly:
    def test_parses_panel_of_series(self, tmp_path):
        path = write(tmp_path, "w.csv", WEEKLY_CSV)
        series = ingest_csv(path, WEEKLY_TOPICS)
        assert len(series) == 2
        assert series[0].label == "inflation"
        assert len(series[0]) == 10
        assert series[0].frequency == "weekly"

    def test_gap_rejected(self, tmp_path):
        broken = WEEKLY_CSV.replace("2006-01-16,12.0,6.0\n", "")
        path = write(tmp_path, "w.csv", broken)
        with pytest.raises(DataError, match="gap"):
            ingest_csv(path, WEEKLY_TOPICS)

    def test_disorder_rejected(self, tmp_path):
        swapped = WEEKLY_CSV.replace(
            "2006-01-09,11.0,5.5\n2006-01-16,12.0,6.0",
            "2006-01-16,12.0,6.0\n2006-01-09,11.0,5.5",
        )
        path = write(tmp_path, "w.csv", swapped)
        with pytest.raises(DataError, match="order"):
            ingest_csv(path, WEEKLY_TOPICS)

    def test_na_token_names_line(self, tmp_path):
        broken = WEEKLY_CSV.replace("13.0,6.5", "N/A,6.5")
        path = write(tmp_path, "w.csv", broken)
        with pytest.raises(DataError, match="line 5"):
            ingest_csv(path, WEEKLY_TOPICS)


MONTHLY_CSV = """month,a,b,flat
2006-01,1.0,9.0,3.0
2006-02,2.0,8.0,3.0
2006-03,3.0,7.0,3.0
2006-04,4.0,6.5,3.0
"""


class TestMonthly:
    def test_zero_variance_dropped_with_warning(self, tmp_path):
        path = write(tmp_path, "m.csv", MONTHLY_CSV)
        with pytest.warns(UserWarning, match="flat"):
            panel, dropped = ingest_csv_with_info(path, MONTHLY_TOPICS)
        assert panel.labels == ("a", "b")
        assert dropped == ("flat",)

    def test_month_gap_rejected(self, tmp_path):
        broken = MONTHLY_CSV.replace("2006-03,3.0,7.0,3.0\n", "")
        path = write(tmp_path, "m.csv", broken)
        with pytest.raises(DataError, match="gap"):
            ingest_csv(path, MONTHLY_TOPICS)

    def test_first_of_month_dates_accepted(self, tmp_path):
        text = MONTHLY_CSV.replace("2006-01", "2006-01-01").replace(
            "2006-02", "2006-02-01"
        ).replace("2006-03", "2006-03-01").replace("2006-04", "2006-04-01")
        path = write(tmp_path, "m.csv", text)
        with pytest.warns(UserWarning):
            panel = ingest_csv(path, MONTHLY_TOPICS)
        assert panel.n_rows == 4

    def test_ragged_row_rejected(self, tmp_path):
        broken = MONTHLY_CSV.replace("2006-02,2.0,8.0,3.0", "2006-02,2.0,8.0")
        path = write(tmp_path, "m.csv", broken)
        with pytest.raises(DataError, match="line 3"):
            ingest_csv(path, MONTHLY_TOPICS)

    def test_duplicate_header_rejected(self, tmp_path):
        path = write(tmp_path, "m.csv", MONTHLY_CSV.replace("a,b,flat", "a,a,flat"))
        with pytest.raises(DataError, match="duplicate"):
            ingest_csv(path, MONTHLY_TOPICS)


class TestOfficial:
    def test_single_column(self, tmp_path):
        path = write(
            tmp_path, "cci.csv", "month,CCI\n2006-01,103.1\n2006-02,104.2\n"
        )
        series = ingest_csv(path, OFFICIAL_INDEX)
        assert series.label == "CCI"
        assert len(series) == 2

    def test_multiple_columns_rejected(self, tmp_path):
        path = write(
            tmp_path, "cci.csv", "month,CCI,extra\n2006-01,1.0,2.0\n2006-02,2.0,3.0\n"
        )
        with pytest.raises(DataError, match="exactly one"):
            ingest_csv(path, OFFICIAL_INDEX)


class TestSniff:
    def test_weekly(self, tmp_path):
        path = write(tmp_path, "w.csv", WEEKLY_CSV)
        assert sniff_topics_kind(path) == WEEKLY_TOPICS

    def test_monthly(self, tmp_path):
        path = write(tmp_path, "m.csv", MONTHLY_CSV)
        assert sniff_topics_kind(path) == MONTHLY_TOPICS
