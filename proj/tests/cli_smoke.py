"""End-to-end checks of the velavg-verify binary: exit codes and output files."""

import pathlib
import subprocess
import sys
import tempfile
import xml.dom.minidom

BIN, CONFIG = sys.argv[1], sys.argv[2]
FAST = ["-s", "lemma.directions=5", "-s", "lemma.points=10000"]


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def expect(cond, what):
    if not cond:
        print("FAIL:", what)
        sys.exit(1)


with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp) / "lemma3"
    r = run("lemma3", "-c", CONFIG, "-o", str(out), *FAST)
    expect(r.returncode == 0, f"lemma3 run exit {r.returncode}: {r.stderr}")
    svgs = sorted(out.glob("*.svg"))
    expect(len(svgs) >= 1, "no svg written")
    for svg in svgs:
        doc = xml.dom.minidom.parse(str(svg))
        expect(doc.documentElement.tagName == "svg", f"{svg.name} root is not svg")
    expect((out / "report.json").is_file(), "report.json missing")
    expect(len((out / "summary.csv").read_text().splitlines()) == 1 + 5 * 6, "csv rows")

    r = run("run", CONFIG, "-o", str(out), "-s", "eps0=0.9")
    expect(r.returncode == 2, f"invalid override exit {r.returncode}")
    expect("eps0" in r.stderr, "error does not name eps0")

    bad = pathlib.Path(tmp) / "bad.cfg"
    bad.write_text("T = 1\nnot_a_key = 3\n")
    r = run("run", str(bad), "-o", str(out))
    expect(r.returncode == 2, f"unknown key exit {r.returncode}")
    expect(":2:" in r.stderr and "not_a_key" in r.stderr, "error lacks line/field")

    r = run("run", str(pathlib.Path(tmp) / "missing.cfg"))
    expect(r.returncode not in (0, 1), "missing config accepted")

    r = run("scaling", "-c", CONFIG, "-o", str(pathlib.Path(tmp) / "sc"),
            "-s", "scaling.nt=10", "-s", "scaling.nx=10", "-s", "scaling.radial=2",
            "-s", "scaling.polar=2", "-s", "scaling.azimuthal=4",
            "-s", "scaling.lambda=0.8,1,1.25", "-s", "scaling.tolerance=1e-9")
    expect(r.returncode == 1, f"forced violation exit {r.returncode}")
    expect("violated: scaling/" in r.stderr, "violations not listed")

print("cli smoke: ok")
