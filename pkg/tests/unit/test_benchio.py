"""Unit tests for map/scenario parsing and results serialization."""

import pytest

from src.benchio import (
    RunRecord,
    aggregate_csv,
    cactus_data,
    load_map,
    load_scenario,
    parse_map,
    parse_scen,
    parse_scen_entries,
    read_results,
    serialize_map,
    write_results,
)
from src.core.domain import GridMap
from src.utils.exceptions import BenchmarkFileError, MapParseError, ResultsParseError, ScenarioParseError


def _record(**overrides):
    values = dict(
        grid_name="empty-32-32",
        algorithm="lns2",
        policy="cpb",
        fail_policy="istay",
        agent_count=100,
        window=5,
        horizon=10,
        budget=1500,
        seed=0,
        scen_id=1,
        makespan=40,
        solved=True,
        periods=8,
        expansions_total=9000,
    )
    values.update(overrides)
    return RunRecord(**values)


class TestParseMap:
    """Tests for parse_map."""

    def test_single_row(self):
        """Test a 1x3 map with a blocked middle cell."""
        grid = parse_map("type octile\nheight 1\nwidth 3\nmap\n.@.\n")
        assert (grid.height, grid.width) == (1, 3)
        assert grid.blocked.tolist() == [[False, True, False]]

    def test_all_cell_characters(self, map_text):
        """Test G as free and T as blocked."""
        grid = parse_map(map_text.replace("......\n.@@", "G.....\n.@@", 1))
        assert grid.is_free((0, 0))
        assert not grid.is_free((3, 3))
        assert int(grid.blocked.sum()) == 3

    def test_row_count_mismatch(self):
        """Test that a missing row is reported."""
        with pytest.raises(MapParseError):
            parse_map("type octile\nheight 2\nwidth 3\nmap\n...\n")

    def test_ragged_row_names_line(self):
        """Test line numbers in errors."""
        with pytest.raises(MapParseError) as exc_info:
            parse_map("type octile\nheight 2\nwidth 3\nmap\n...\n..\n")
        assert exc_info.value.line == 6
        assert "line 6" in str(exc_info.value)

    def test_unknown_character(self):
        """Test rejection of cell characters outside the grammar."""
        with pytest.raises(MapParseError) as exc_info:
            parse_map("type octile\nheight 1\nwidth 3\nmap\n.S.\n")
        assert exc_info.value.line == 5

    def test_malformed_header(self):
        """Test header validation."""
        with pytest.raises(MapParseError) as exc_info:
            parse_map("type octile\nwidth 3\nheight 1\nmap\n...\n")
        assert exc_info.value.line == 2

    def test_non_octile_type_rejected(self):
        """Test that only the octile map type is accepted."""
        with pytest.raises(MapParseError) as exc_info:
            parse_map("type hexagonal\nheight 1\nwidth 3\nmap\n...\n")
        assert exc_info.value.line == 1

    def test_round_trip(self, map_text):
        """Test that serializing and re-parsing gives an identical grid."""
        grid = parse_map(map_text)
        assert parse_map(serialize_map(grid)) == grid

    def test_round_trip_random_mask(self, rng):
        """Test round trip on a random obstacle mask."""
        grid = GridMap(7, 4, rng.random((4, 7)) < 0.3)
        assert parse_map(serialize_map(grid)) == grid

    def test_load_map_names_grid_after_file(self, tmp_path, map_text):
        """Test the file wrapper."""
        path = tmp_path / "tiny.map"
        path.write_text(map_text)
        assert load_map(path).name == "tiny"

    def test_load_missing_map(self, tmp_path):
        """Test missing file error."""
        with pytest.raises(BenchmarkFileError):
            load_map(tmp_path / "nope.map")


class TestParseScen:
    """Tests for scenario parsing."""

    def test_zero_agents(self, scen_text):
        """Test n=0."""
        assert parse_scen(scen_text, 0) == []

    def test_coordinates_are_transposed(self, scen_text):
        """Test that (x, y) becomes (row=y, col=x)."""
        tasks = parse_scen(scen_text, 2)
        assert [t.id for t in tasks] == [0, 1]
        assert tasks[0].start == (0, 0) and tasks[0].goal == (0, 5)
        assert tasks[1].start == (2, 5) and tasks[1].goal == (2, 0)

    def test_too_many_agents(self, scen_text):
        """Test n larger than the file."""
        with pytest.raises(ScenarioParseError):
            parse_scen(scen_text, 4)

    def test_prefix_property(self, scen_text):
        """Test that parse_scen(n) is a prefix of parse_scen(n+1)."""
        assert parse_scen(scen_text, 3)[:2] == parse_scen(scen_text, 2)

    def test_wrong_version(self):
        """Test version line validation."""
        with pytest.raises(ScenarioParseError) as exc_info:
            parse_scen("version 0\n", 0)
        assert exc_info.value.line == 1

    def test_out_of_declared_bounds(self):
        """Test bounds against the declared dimensions."""
        text = "version 1\n0\tm.map\t4\t4\t9\t0\t1\t1\t1.0\n"
        with pytest.raises(ScenarioParseError) as exc_info:
            parse_scen(text, 1)
        assert exc_info.value.line == 2

    def test_blocked_cell_against_grid(self, map_text):
        """Test validation against a map."""
        grid = parse_map(map_text)
        text = "version 1\n0\ttiny.map\t6\t4\t1\t1\t0\t0\t1.0\n"
        with pytest.raises(ScenarioParseError):
            parse_scen(text, 1, grid)

    def test_entries_keep_metadata(self, scen_text):
        """Test full entry parsing."""
        entries = parse_scen_entries(scen_text)
        assert len(entries) == 3
        assert entries[0].map_name == "tiny.map"
        assert (entries[0].map_width, entries[0].map_height) == (6, 4)
        assert entries[0].optimal_length == pytest.approx(5.0)

    def test_load_scenario(self, tmp_path, scen_text):
        """Test the file wrapper."""
        path = tmp_path / "tiny-random-1.scen"
        path.write_text(scen_text)
        assert len(load_scenario(path, 3)) == 3


class TestResults:
    """Tests for results and cactus CSVs."""

    def test_one_record_is_two_lines(self):
        """Test header plus one row with LF endings."""
        text = write_results([_record()])
        lines = text.split("\n")
        assert lines[-1] == ""
        assert len(lines) == 3
        assert lines[0].split(",")[:4] == ["grid_name", "algorithm", "policy", "fail_policy"]
        assert "\r" not in text

    def test_read_back(self):
        """Test reading a written CSV."""
        records = [_record(), _record(scen_id=2, solved=False, makespan=100)]
        assert read_results(write_results(records)) == records

    def test_read_empty(self):
        """Test that empty input has no records."""
        assert read_results("") == []
        assert read_results(write_results([])) == []

    def test_read_missing_column(self):
        """Test column validation."""
        with pytest.raises(ResultsParseError):
            read_results("grid_name,algorithm\nx,y\n")

    def test_read_bad_value_names_line(self):
        """Test value validation with line numbers."""
        text = write_results([_record()]).replace(",40,", ",forty,")
        with pytest.raises(ResultsParseError) as exc_info:
            read_results(text)
        assert exc_info.value.line == 2

    def test_cactus_two_solved(self):
        """Test makespans 40 and 60."""
        text = cactus_data([_record(makespan=60, scen_id=2), _record(makespan=40)])
        assert text == "algorithm,policy,makespan,cumulative_solved\nlns2,cpb,40,1\nlns2,cpb,60,2\n"

    def test_cactus_merges_equal_makespans(self):
        """Test (30, 50, 50) -> (30, 1), (50, 3)."""
        records = [_record(makespan=30), _record(makespan=50, scen_id=2), _record(makespan=50, scen_id=3)]
        assert cactus_data(records).splitlines()[1:] == ["lns2,cpb,30,1", "lns2,cpb,50,3"]

    def test_cactus_excludes_unsolved(self):
        """Test that unsolved runs are not counted."""
        records = [_record(makespan=40), _record(makespan=100, solved=False, scen_id=2)]
        assert cactus_data(records).splitlines()[1:] == ["lns2,cpb,40,1"]

    def test_aggregate_mean(self):
        """Test that the mean of 40 and 60 is 50.00."""
        records = [_record(makespan=40), _record(makespan=60, scen_id=2)]
        lines = aggregate_csv(records).splitlines()
        assert lines[0].endswith("mean_makespan,solved,runs")
        assert lines[1].endswith(",50.00,2,2")

    def test_aggregate_counts_unsolved_at_cap(self):
        """Test that unsolved runs contribute the cap."""
        records = [_record(makespan=40), _record(makespan=100, solved=False, scen_id=2)]
        assert aggregate_csv(records).splitlines()[1].endswith(",70.00,1,2")
