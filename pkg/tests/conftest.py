"""Shared fixtures: in-process CLI runner and tabulated-density files."""

import numpy as np
import pytest

from coulombpacket.cli import main
from coulombpacket.packet import PacketShape, log_density


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""

    def run(*argv):
        code = main([str(a) for a in argv])
        cap = capsys.readouterr()
        return code, cap.out, cap.err

    return run


@pytest.fixture
def write_table(tmp_path):
    """Write a y,density CSV from arrays and return its path."""

    def write(y, d, name="table.csv"):
        path = tmp_path / name
        rows = [f"{yi:.17e},{di:.17e}" for yi, di in zip(y, d)]
        path.write_text("y,density\n" + "\n".join(rows) + "\n",
                        encoding="utf-8")
        return path

    return write


@pytest.fixture
def gaussian_table(write_table):
    """Tabulated gamma=2, B=0.01 density on [0.5, 2.0]: support wide enough
    that the trapezoid average is quadrature-grade for A ~ 50."""
    shape = PacketShape.from_gamma(2.0, 0.01)
    y = np.linspace(0.5, 2.0, 2001)
    return write_table(y, np.exp(log_density(y, shape)), name="gaussian.csv")
