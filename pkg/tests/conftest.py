from __future__ import annotations

import numpy as np
import pytest

from dividing_lines import EvalTable


@pytest.fixture
def tbl():
    def make(rows, bound=None, **kw):
        return EvalTable(np.array(rows, dtype=np.float64), bound=bound, **kw)

    return make
