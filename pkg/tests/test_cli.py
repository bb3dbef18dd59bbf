import io
import json

import pytest

from primeform import cli, normalform
from primeform.errors import InvariantError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_compute_json():
    code, out, _ = run("compute", "-p", "3", "-n", "1,1,2,1,1", "--g0", "0")
    assert code == 0
    d = json.loads(out)
    assert d["genus"] == 3 and d["trace"] == -3 and d["order"] == 3 and d["symplectic"] is True
    assert len(d["matrix"]) == 6 and all(isinstance(x, str) for x in d["matrix"][0])


def test_compute_text_with_steps():
    code, out, _ = run("compute", "-p", "3", "-n", "1,1,2,1,1", "--g0", "0", "--format", "text",
                       "--trace-steps")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("p=3")
    steps = [json.loads(s) for s in lines if s.startswith("{")]
    assert [s["step"] for s in steps] == [1, 2, 3]


def test_compute_is_byte_stable():
    a = run("compute", "-p", "5", "-n", "1,2,2", "--g0", "1")[1]
    b = run("compute", "-p", "5", "-n", "2,1,2", "--g0", "1")[1]
    assert a == b


def test_enumerate():
    code, out, _ = run("enumerate", "-g", "3", "-p", "3")
    assert code == 0
    rows = out.splitlines()
    assert rows[0].split(",")[:3] == ["p", "n", "g0"]
    # (1,1,1,1,2) and (1,2,2,2,2) over the sphere, (1,2) over the torus
    assert [r.split(",")[1] for r in rows[1:]] == ["1 1 1 1 2", "1 2 2 2 2", "1 2"]
    code, out, _ = run("enumerate", "-g", "2", "--all-primes", "--format", "json")
    assert code == 0 and {d["p"] for d in json.loads(out)} == {2, 3, 5}


def test_presentation_and_intersection():
    code, out, _ = run("presentation", "-p", "3", "-n", "1,1,2,1,1", "--g0", "0")
    d = json.loads(out)
    assert code == 0 and len(d["relation"]) == 12 and d["qhat"] == []
    code, out, _ = run("intersection", "-p", "3", "-n", "1,1,2,1,1", "--g0", "0")
    J = json.loads(out)
    assert code == 0 and len(J) == 6 and J[0][1] == "1"


def test_check(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps([[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]))
    code, out, _ = run("check", "--matrix", str(m))
    assert code == 0 and json.loads(out)["order"] == 2


@pytest.mark.parametrize("argv", [
    ["compute", "-p", "4", "-n", "1,3", "--g0", "1"],
    ["compute", "-p", "3", "-n", "1,1", "--g0", "1"],
    ["enumerate", "-g", "3"],
    ["check", "--matrix", "/nonexistent.json"],
])
def test_invalid_input_exits_2(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err.startswith("nf: error:")


def test_bad_syntax_exits_2():
    with pytest.raises(SystemExit) as exc:
        run("compute", "-p", "3", "-n", "a,b", "--g0", "0")
    assert exc.value.code == 2


def test_certificate_failure_exits_3(monkeypatch):
    def broken(*a, **k):
        raise InvariantError("matrix is not symplectic", M_CAN=["1"])

    monkeypatch.setattr(normalform, "_certify", broken)
    code, out, err = run("compute", "-p", "3", "-n", "1,1,2,1,1", "--g0", "0")
    assert code == 3 and out == ""
    bundle = json.loads(err)
    assert bundle["error"] == "matrix is not symplectic"
    assert bundle["details"]["stage"] == "certification"
