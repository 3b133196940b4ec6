"""One test per acceptance criterion, read off two runs of the CLI suite."""
import re
import subprocess
import sys

import pytest

from signrep.suite import ACCEPTANCE

pytestmark = pytest.mark.slow

LINE = re.compile(r"^criterion (\d\d) (PASS|FAIL|DIGEST) ([^:]+): (.*)$")


def _run_suite():
    p = subprocess.run([sys.executable, "-m", "signrep", "suite", "acceptance"],
                       capture_output=True, timeout=3600)
    return p.returncode, p.stdout


@pytest.fixture(scope="session")
def suite_runs():
    return _run_suite(), _run_suite()


@pytest.fixture(scope="session")
def parsed(suite_runs):
    (_, out), _ = suite_runs
    rows = {}
    for line in out.decode().splitlines():
        m = LINE.match(line)
        if m:
            rows[int(m.group(1))] = (m.group(2), m.group(3), m.group(4))
    return rows


@pytest.mark.parametrize("num,name", [(n, name) for n, name, _ in ACCEPTANCE])
def test_criterion(parsed, criterion_log, num, name):
    status, got_name, detail = parsed.get(num, ("MISSING", name, ""))
    criterion_log.append(f"criterion {num:02d}: {'pass' if status == 'PASS' else 'FAIL'} {name} ({detail})")
    print(f"criterion {num:02d}: {status} {detail}")
    assert got_name == name
    assert status == "PASS", detail


def test_criterion_15_determinism(suite_runs, parsed, criterion_log):
    (code1, out1), (code2, out2) = suite_runs
    same = out1 == out2 and code1 == code2 == 0
    criterion_log.append(f"criterion 15: {'pass' if same else 'FAIL'} determinism "
                         f"(two runs, {len(out1)} bytes each, identical={out1 == out2})")
    assert 15 in parsed and parsed[15][0] == "DIGEST"
    assert same
