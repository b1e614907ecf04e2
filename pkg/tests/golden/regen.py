"""Regenerate the golden CLI outputs: ``python tests/golden/regen.py``.

Only rerun after an intentional change to report contents, and review the diff.
"""

import contextlib
import io
from pathlib import Path

from slicespace.cli import main

HERE = Path(__file__).parent

CASES = {
    "norm_bloch_q.json": ["norm", "--space", "bloch", "--sphere-samples", "4", str(HERE / "q.json")],
    "norm_dirichlet.json": ["norm", "--space", "dirichlet", "--sphere-samples", "4", str(HERE / "dirichlet_f.json")],
    "norm_bergman_q.json": ["norm", "--space", "bergman", "--p", "2", "--alpha", "1", "--sphere-samples", "4",
                            str(HERE / "q.json")],
    "check_dirichlet_seed7.json": ["check", "--suite", "dirichlet", "--seed", "7"],
    "profile_q.csv": ["profile", str(HERE / "q.json")],
}


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


if __name__ == "__main__":
    for name, argv in CASES.items():
        code, text = run(argv)
        if code != 0:
            raise SystemExit(f"{name}: exit {code}")
        (HERE / name).write_text(text)
        print("wrote", name)
