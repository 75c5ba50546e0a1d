import sys

import pytest
from hypothesis import strategies as st

from sumprod.field import FieldSpec
from sumprod.valued import LaurentNumber, PadicNumber

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F4 = FieldSpec(2, 2, (1, 1, 1))
F9 = FieldSpec(3, 2, (1, 0, 1))
FIELDS = [F2, F3, F4, FieldSpec(5), F9]


def laurents(spec, lo=-4, hi=6):
    terms = st.dictionaries(st.integers(lo, hi), st.integers(0, spec.q - 1), max_size=hi - lo + 1)
    return terms.map(lambda d: LaurentNumber(spec, d))


def padics(p, bound=10**9, max_sexp=5):
    return st.builds(lambda n, s: PadicNumber(p, n, s), st.integers(-bound, bound), st.integers(0, max_sexp))


@pytest.fixture(params=FIELDS, ids=lambda s: s.text())
def spec(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")

    def order(key):
        head = key.split("[")[0]
        return (int(head), key)

    for key in sorted(results, key=order):
        ok, detail = results[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")
