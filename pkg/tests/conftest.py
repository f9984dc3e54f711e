"""Shared oracles and the acceptance summary."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from swisscheese import trees

ACCEPTANCE: dict[int, str] = {}


def dense_rank(rows: list[list]) -> int:
    """Rank by textbook Gaussian elimination on a dense rational matrix."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    n_cols = len(m[0]) if m else 0
    while rank < len(m) and col < n_cols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def inflate(v: trees.Vertex, rng: random.Random, p: float = 0.3) -> trees.Vertex:
    """A random tree equivalent to ``v``: wrap vertices in unary unmarked vertices
    and group consecutive children of unmarked vertices under new unmarked vertices."""
    kids = [inflate(c, rng, p) for c in v.children]
    if v.kind == "u" and len(kids) >= 3 and rng.random() < p:
        i = rng.randrange(len(kids) - 1)
        k = rng.randrange(i + 2, len(kids) + 1)
        kids = kids[:i] + [trees.Vertex("u", -1, tuple(kids[i:k]))] + kids[k:]
    out = trees.Vertex(v.kind, v.label, tuple(kids))
    if rng.random() < p:
        out = trees.Vertex("u", -1, (out,))
    return out


def random_minimal_tree(rng: random.Random, max_tokens: int = 7, sc: bool | None = None):
    """A random minimal tree and its color."""
    if sc is None:
        sc = rng.random() < 0.5
    profs = [p for p in trees.profiles(max_tokens, sc) if p.n_tokens >= 1]
    prof = rng.choice(profs)
    ws = list(trees.words(prof))
    return trees.nu_tree(rng.choice(ws), sc), sc


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        for key, value in report.user_properties:
            if key == "criterion":
                crit = value
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ACCEPTANCE[crit] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        status = "PASS" if ACCEPTANCE[crit] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {crit:>2}: {status}")


@pytest.fixture
def criterion(record_property):
    """Tag an acceptance test with its number for the summary."""

    def tag(n: int) -> None:
        record_property("criterion", n)

    return tag
