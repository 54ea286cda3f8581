import pytest

from parahoric.ring import ring_from_text

TEST_RINGS = {
    "Z/9": "unram(p=3,m=1,h=2)",
    "Z/27": "unram(p=3,m=1,h=3)",
    "F3[t]/t^2": "equichar(p=3,m=1,h=2)",
    "F3[t]/t^3": "equichar(p=3,m=1,h=3)",
    "GR(9,2)": "unram(p=3,m=2,h=2)",
    "ram(3,2,1,3)": "ram(p=3,e=2,c=1,h=3)",
    "ram(3,2,2,3)": "ram(p=3,e=2,c=2,h=3)",
}

# the rings of the exhaustive rank-one sweep
RANK1_RINGS = {
    "Z/9": "unram(p=3,m=1,h=2)",
    "Z/27": "unram(p=3,m=1,h=3)",
    "F3[t]/t^2": "equichar(p=3,m=1,h=2)",
    "F3[t]/t^3": "equichar(p=3,m=1,h=3)",
    "F5[t]/t^2": "equichar(p=5,m=1,h=2)",
    "ram(3,2,1,3)": "ram(p=3,e=2,c=1,h=3)",
}


@pytest.fixture(params=sorted(TEST_RINGS), scope="session")
def test_ring(request):
    return ring_from_text(TEST_RINGS[request.param])


def R(text):
    return ring_from_text(text)


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def record(number: int, ok: bool, detail: str):
    ACCEPTANCE[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
