#!/usr/bin/env python3
"""Byte-stability checks for the command-line reports.

Runs the nilrigid binary over the built-in gallery and over checked-in input
fixtures, comparing stdout byte-for-byte against the golden files (exact
arithmetic makes verdict reports platform-independent), and runs the dynamics
command twice to check bit-identical determinism per seed.

Usage: golden_check.py <nilrigid-binary> <tests-dir>
"""

import difflib
import subprocess
import sys
from pathlib import Path

GOLDEN_COMMANDS = [
    ("examples_heisenberg.json", ["examples", "heisenberg"]),
    ("examples_heisenberg.txt", ["examples", "heisenberg", "--format", "text"]),
    ("examples_complete_3.json", ["examples", "complete:3"]),
    ("examples_star_2.json", ["examples", "star:2"]),
    ("examples_star_3.json", ["examples", "star:3"]),
    ("examples_torus_f2.json", ["examples", "torus-f2"]),
    (
        "analyze_heisenberg.json",
        [
            "analyze",
            "--graph",
            "{fixtures}/heisenberg.graph",
            "--generators",
            "{fixtures}/heisenberg_generators.json",
        ],
    ),
    (
        "analyze_sanov.json",
        ["analyze", "--torus", "--generators", "{fixtures}/sanov_generators.json"],
    ),
]

EXIT_CODE_COMMANDS = [
    (["examples", "no-such-example"], 2),
    (["examples", "complete:99"], 2),
    (["analyze", "--torus", "--generators", "/nonexistent.json"], 2),
    (["examples", "heisenberg"], 0),
]


def run(binary, args, fixtures):
    argv = [binary] + [a.format(fixtures=fixtures) for a in args]
    return subprocess.run(argv, capture_output=True)


def main():
    binary, tests_dir = sys.argv[1], Path(sys.argv[2])
    fixtures = tests_dir / "fixtures"
    golden_dir = tests_dir / "golden"
    failures = 0

    for golden_name, args in GOLDEN_COMMANDS:
        proc = run(binary, args, fixtures)
        expected = (golden_dir / golden_name).read_bytes()
        if proc.returncode != 0:
            print(f"FAIL {golden_name}: exit {proc.returncode}: {proc.stderr.decode()}")
            failures += 1
        elif proc.stdout != expected:
            print(f"FAIL {golden_name}: output differs from golden")
            diff = difflib.unified_diff(
                expected.decode().splitlines(),
                proc.stdout.decode().splitlines(),
                fromfile=golden_name,
                tofile="actual",
                lineterm="",
            )
            for line in list(diff)[:20]:
                print("  " + line)
            failures += 1
        else:
            print(f"ok   {golden_name}")

    for args, want in EXIT_CODE_COMMANDS:
        proc = run(binary, args, fixtures)
        if proc.returncode != want:
            print(f"FAIL exit code for {args}: got {proc.returncode}, want {want}")
            failures += 1
        else:
            print(f"ok   exit {want} for {' '.join(args)}")

    dynamics_args = [
        "dynamics",
        "--torus",
        "--generators",
        "{fixtures}/sanov_generators.json",
        "--steps",
        "2000",
    ]
    first = run(binary, dynamics_args, fixtures)
    second = run(binary, dynamics_args, fixtures)
    if first.returncode != 0 or first.stdout != second.stdout:
        print("FAIL dynamics determinism: repeated runs differ")
        failures += 1
    else:
        print("ok   dynamics bit-identical across runs")

    if failures:
        print(f"{failures} golden check(s) failed")
        return 1
    print("all golden checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
