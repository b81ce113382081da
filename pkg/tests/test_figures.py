import numpy as np
import pytest

from g2lab.errors import InvalidParameter
from g2lab.figures import FIGURE_IDS, POINTS, figure


@pytest.mark.parametrize("fid", FIGURE_IDS)
def test_figure_checkpoints_pass(fid):
    fig = figure(fid)
    assert fig.data.shape[0] == POINTS
    assert fig.data.shape[1] == len(fig.columns)
    assert fig.columns[0] == "axis_value"
    for c in fig.checkpoints:
        assert c.passed, c.as_dict()
        assert set(c.as_dict()) == {"name", "value", "expected", "tolerance", "passed"}
    assert np.all(np.isfinite(fig.data)) and np.all(fig.data[:, 1:] > 0)


@pytest.mark.parametrize("fid, hi", [("fig1", 3.0), ("fig2", 5.0), ("fig3", 10.0),
                                     ("fig4", 10.0), ("fig5", 3.0)])
def test_figure_ranges(fid, hi):
    axis = figure(fid).data[:, 0]
    assert axis[0] == 0.0 and axis[-1] == hi


def test_red_blue_contrast():
    fig = figure("fig3")
    assert fig.columns == ("axis_value", "g2_red", "g2_blue")
    assert fig.data[0, 1] == pytest.approx(1.75) and fig.data[0, 2] == pytest.approx(1.615, abs=1e-3)
    # power-law red still visibly above 1 where the exponential blue has settled
    assert fig.data[-1, 1] - 1.0 > 0.05


def test_unknown_figure():
    with pytest.raises(InvalidParameter, match="fig1"):
        figure("fig6")
