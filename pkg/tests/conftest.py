import numpy as np
import pytest

from fsdrift.io_ingest import CsvOptions, load_csv


@pytest.fixture(scope="session")
def digits_csv(tmp_path_factory):
    """The scikit-learn digits data exported with the label as last column."""
    datasets = pytest.importorskip("sklearn.datasets")
    d = datasets.load_digits()
    path = tmp_path_factory.mktemp("data") / "digits.csv"
    np.savetxt(path, np.column_stack([d.data, d.target]), fmt="%d", delimiter=",")
    return path


@pytest.fixture(scope="session")
def digits(digits_csv):
    return load_csv(digits_csv, CsvOptions(label_column=-1))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    def record(label: str, ok: bool, detail: str) -> None:
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
