import pytest
from mpmath import mp

from fracident import analyze, head_coeffs, model_tf, example_params

# reference octic rounded to 15 decimals, descending powers 8..0
REF_OCTIC = [
    "1",
    "-5.395708923047713",
    "12.451808248913298",
    "-16.088049799882121",
    "12.743527275051907",
    "-6.338984994985100",
    "1.932660443044634",
    "-0.329710967652997",
    "0.024032821066090",
]

# (alpha2, alpha1) pairs 1..6
REF_PAIRS = [
    ("0.298245954619025", "2.397337600606689"),
    ("0.500000000000000", "0.800000000000000"),
    ("0.625975537273579", "0.677356198694181"),
    ("0.646678864697306", "0.655173050215288"),
    ("0.797894050107465", "0.499243173767398"),
    ("1.295547992101849", "-2.589172586806396"),
]

# f_{2T+2}..f_{2T-3} and g_{2T+1}..g_{2T-4}
REF_HEADS_F = ["0.01", "-0.0121", "0.0015", "3.505e-4", "1.416e-4", "7.218e-5"]
REF_HEADS_G = ["-1.2962", "0.1931", "0.0450", "0.0191", "0.0103", "0.0063"]


@pytest.fixture(scope="session")
def circuit_params():
    return example_params()


@pytest.fixture(scope="session")
def circuit_tf(circuit_params):
    return model_tf(circuit_params)


@pytest.fixture(scope="session")
def circuit_heads(circuit_tf):
    return head_coeffs(circuit_tf)


@pytest.fixture(scope="session")
def circuit_report(circuit_tf, circuit_params):
    return analyze(circuit_tf, circuit_params.ts)


@pytest.fixture(autouse=True)
def working_precision():
    # test-side arithmetic at the library's default precision
    with mp.workdps(60):
        yield


_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
