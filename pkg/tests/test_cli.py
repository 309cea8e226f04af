import json

import pytest

from fewdist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_count_row(capsys):
    code, out = run(capsys, "count", "--s", "3", "--max-n", "6", "--format", "csv")
    assert code == 0
    assert out.split() == ["n,count", "2,1", "3,3", "4,15", "5,142", "6,4300"]


def test_count_json(capsys):
    _, out = run(capsys, "count", "--s", "2", "--max-n", "4", "--format", "json")
    assert json.loads(out) == [{"n": 2, "count": 1}, {"n": 3, "count": 2}, {"n": 4, "count": 6}]


def test_gen_and_filter(tmp_path, capsys):
    path = tmp_path / "level4.txt"
    assert main(["gen", "--s", "4", "--n", "4", "--out", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert len(lines) == 22 and lines[0].startswith("4 4 k:")
    code, out = run(capsys, "filter", str(path), "--dim", "3", "--mode", "spherical", "--format", "csv")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 22 and all(r.endswith(("feasible", "unknown")) for r in rows)


def test_certify_g16(capsys):
    code, out = run(capsys, "certify", "--fixture", "G16", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == 4 and data["psd"] and data["spectrum"] == ["1", "2", "3"]


def test_certify_unknown_fixture(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["certify", "--fixture", "NOPE"])
    assert exc.value.code == 2


def test_construct_cube(capsys):
    code, out = run(capsys, "construct", "--dim", "3", "--s", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert (data["graph_vertices"], data["clique"], data["points"]) == (51, 5, 8)
    assert len(data["coordinates"]) == 8


def test_construct_simplex(capsys):
    code, out = run(capsys, "construct", "--dim", "4", "--simplex", "2-2")
    assert code == 0 and "points: 30" in out


def test_search_small(tmp_path, capsys):
    code, out = run(capsys, "search", "--dim", "2", "--s", "2", "--mode", "spherical", "--out", str(tmp_path))
    assert code == 0
    assert "largest nonempty level: 5" in out and "admissible" in out
    assert (tmp_path / "manifest.json").exists()
    code, again = run(capsys, "search", "--dim", "2", "--s", "2", "--mode", "spherical", "--resume", str(tmp_path))
    assert again == out


@pytest.mark.parametrize(
    "argv",
    [
        ["search", "--dim", "3"],
        ["search", "--dim", "3", "--s", "3", "--max-n", "99"],
        ["search", "--dim", "1", "--s", "3"],
        ["construct", "--dim", "4", "--s", "2", "--simplex", "2-2"],
        ["count", "--s", "0", "--max-n", "3"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code != 0
