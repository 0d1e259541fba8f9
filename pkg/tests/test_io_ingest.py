import numpy as np
import pytest

from fsdrift.errors import EmptyFileError, InputNotFoundError, NonFiniteDataError, ParseError, RaggedRowsError
from fsdrift.io_ingest import CsvOptions, load_csv, validate_matrix, write_csv


def write(tmp_path, text, name="m.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_plain_numeric(tmp_path):
    x = load_csv(write(tmp_path, "1,2\n3,4.5\n-6,7e-1\n"))
    assert x.data.tolist() == [[1.0, 2.0], [3.0, 4.5], [-6.0, 0.7]]


def test_header_label_and_delimiter(tmp_path):
    p = write(tmp_path, "a;b;label\n1;2;9\n3;4;8\n")
    x = load_csv(p, CsvOptions(has_header=True, label_column=2, delimiter=";"))
    assert x.data.tolist() == [[1.0, 2.0], [3.0, 4.0]]
    x = load_csv(p, CsvOptions(has_header=True, label_column=-1, delimiter=";"))
    assert x.data.tolist() == [[1.0, 2.0], [3.0, 4.0]]


def test_parse_error_location(tmp_path):
    rows = ["1,2,3"] * 4 + ["1,x,3"]
    with pytest.raises(ParseError) as exc:
        load_csv(write(tmp_path, "\n".join(rows) + "\n"))
    assert (exc.value.details["line"], exc.value.details["column"]) == (5, 2)


def test_ragged_and_empty_and_missing(tmp_path):
    with pytest.raises(RaggedRowsError) as exc:
        load_csv(write(tmp_path, "1,2\n3\n"))
    assert exc.value.details["line"] == 2
    with pytest.raises(EmptyFileError):
        load_csv(write(tmp_path, "\n\n", "e.csv"))
    with pytest.raises(InputNotFoundError):
        load_csv(tmp_path / "nope.csv")


def test_nan_cell(tmp_path):
    with pytest.raises(NonFiniteDataError) as exc:
        load_csv(write(tmp_path, "1,2\n3,nan\n"))
    assert exc.value.details == {"row": 1, "col": 1}


def test_validate_matrix():
    s = validate_matrix(np.array([[1.0, -2.0], [3.0, 5.0]]))
    assert (s.n, s.d, s.nonfinite, s.ok) == (2, 2, 0, True)
    assert s.col_min == (1.0, -2.0) and s.col_max == (3.0, 5.0)
    with pytest.raises(NonFiniteDataError) as exc:
        validate_matrix(np.array([[1.0, np.inf], [np.nan, 0.0]]))
    assert exc.value.details == {"row": 0, "col": 1, "count": 2}


def test_round_trip_is_exact(tmp_path, rng):
    a = rng.standard_normal((7, 5)) * 10.0 ** rng.integers(-200, 200, size=(7, 5))
    p = tmp_path / "rt.csv"
    write_csv(a, p)
    assert np.array_equal(load_csv(p).data, a)


def test_digits_shape(digits):
    s = validate_matrix(digits)
    assert (s.n, s.d) == (1797, 64)
    assert min(s.col_min) == 0.0 and max(s.col_max) == 16.0
