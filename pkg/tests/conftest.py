import numpy as np
import pytest

from angular_epr import ApertureSpec, make_aperture

# canonical width pair used throughout the figure data
W1 = np.pi / 4
W2 = np.pi / 64


@pytest.fixture
def gauss_pair():
    return (make_aperture(ApertureSpec(shape="gauss", w=W1)),
            make_aperture(ApertureSpec(shape="gauss", w=W2)))


@pytest.fixture
def rect_pair():
    return (make_aperture(ApertureSpec(shape="rect", w=W1)),
            make_aperture(ApertureSpec(shape="rect", w=W2)))


def tsg_pair(gamma):
    return (make_aperture(ApertureSpec(shape="tsg", w=W1, gamma=gamma)),
            make_aperture(ApertureSpec(shape="tsg", w=W2, gamma=gamma)))
