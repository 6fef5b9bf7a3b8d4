import pytest

from arrlab.arrfile import (
    ArrangementFileError,
    bundled_names,
    bundled_path,
    parse_arrangement_file,
    read_arrangement,
    write_arrangement,
)
from arrlab.field import QG, QQ
from arrlab.paper import BUNDLED_FILES, build_paper_arrangement


def test_simple_file():
    arr = parse_arrangement_file("field Q\nline 1; 0; 0\nline 0; 1; 0")
    assert arr.field is QQ and len(arr) == 2
    assert arr.all_labels() == ("L_1", "L_2")


def test_comments_and_labels():
    text = "# two lines\nfield Q[g]/(g^4-g^3+g^2-g+1)\n\nline 0;0;1 label Z  # infinity\nline -g^3; 0; 1\n"
    arr = parse_arrangement_file(text)
    assert arr.field is QG
    assert arr.label(0) == "Z" and arr.label(1) == "L_2"
    assert arr[1].coeffs[2] == QG.gen ** 2


@pytest.mark.parametrize(
    "text, where",
    [
        ("field Q\nline 1;0;0\nline 1;0;0", (3, 6)),
        ("field Q\nline 0;0;0", (2, 6)),
        ("field Q\nline 1;0", (2, 6)),
        ("line 1;0;0", (1, 1)),
        ("field Q\nfoo", (2, 1)),
        ("field Q[i]", (1, 7)),
        ("field Q\nline 1; 2 + ; 0", (2, 12)),
        ("field Q\nline 1; 0; g", (2, 12)),
    ],
)
def test_errors_with_positions(text, where):
    with pytest.raises(ArrangementFileError) as info:
        parse_arrangement_file(text)
    assert (info.value.line, info.value.column) == where


def test_duplicate_message():
    with pytest.raises(ArrangementFileError, match="duplicate"):
        parse_arrangement_file("field Q\nline 1;0;0\nline 2;0;0")


def test_bundled_files_present():
    assert bundled_names() == sorted(BUNDLED_FILES.values())


@pytest.mark.parametrize("name, filename", sorted(BUNDLED_FILES.items()))
def test_bundled_matches_builder(name, filename):
    text = bundled_path(filename).read_text(encoding="utf-8")
    arr = parse_arrangement_file(text)
    built = build_paper_arrangement(name)
    assert arr == built
    assert write_arrangement(arr) == text


def test_read_bare_name_falls_back_to_bundle(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    arr, text = read_arrangement("m_plus.arr")
    assert len(arr) == 11
    with pytest.raises(FileNotFoundError):
        read_arrangement("missing.arr")


def test_local_file_wins(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "m_plus.arr").write_text("field Q\nline 1;0;0\nline 0;1;0\n")
    arr, _ = read_arrangement("m_plus.arr")
    assert len(arr) == 2
