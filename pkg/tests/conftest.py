import sys

import numpy as np
import pytest

from formelastic.charts import coordinate_jets, get_chart, metric_at
from formelastic.exterior import flat
from formelastic.harness.fields import FieldSpec, make_field
from formelastic.tensors import KForm, VecField


def vec_at(chart, p, fn):
    """VecField of the closure ``fn(q) -> 3 jets`` at ``p`` in ``chart``."""
    p = np.asarray(p, dtype=float)
    return VecField(tuple(fn(coordinate_jets(p))), chart, p)


def form_at(degree, chart, p, fn):
    p = np.asarray(p, dtype=float)
    comps = fn(coordinate_jets(p))
    return KForm(degree, tuple(comps), chart, p)


def pair_at(chart, p, fn):
    """(metric, v, u = flat v) for a vector closure."""
    m = metric_at(chart, p)
    v = vec_at(chart, p, fn)
    return m, v, flat(m, v)


def spec_pair(spec: FieldSpec, chart, p):
    m = metric_at(chart, p)
    v = make_field(spec).evaluate(get_chart(chart), np.asarray(p, dtype=float))
    return m, v, flat(m, v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
