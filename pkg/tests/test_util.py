import io
import pathlib

import pytest

from renewbound.util import closing_if_path, open_text_io_handle_for_reading, open_text_io_handle_for_writing


def test_bytes():
    buf = io.BytesIO(b"week_start,zone\n")
    with open_text_io_handle_for_reading(buf) as fh:
        data = fh.read()

    assert data == "week_start,zone\n"


def test_text():
    buf = io.StringIO("week_start,zone\n")
    with open_text_io_handle_for_reading(buf) as fh:
        data = fh.read()

    assert data == "week_start,zone\n"


def test_unsupported():
    with pytest.raises(ValueError):
        open_text_io_handle_for_reading(42)


def test_writing_uses_unix_line_endings(tmp_path: pathlib.Path):
    path = tmp_path / "out.csv"
    with open_text_io_handle_for_writing(path) as fh:
        fh.write("a\nb\n")

    assert path.read_bytes() == b"a\nb\n"


def test_handles_are_left_open():
    buf = io.StringIO()
    fh = open_text_io_handle_for_writing(buf)
    with closing_if_path(buf, fh):
        fh.write("x")

    assert not buf.closed
    assert buf.getvalue() == "x"
