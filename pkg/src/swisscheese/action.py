"""Evaluation of operations on Hochschild cochains and the chain-level action.

A tree acts on cochains by reading it as a composite: an ``s``-vertex applies
the cochain ``P_s`` to the values of its children, an unmarked vertex multiplies
its children in order (the empty product is the unit), output leaf ``j``
returns the ``j``-th argument and algebra leaf ``a`` returns the element ``x_a``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebras import Algebra
from .errors import ValidationError
from .hochschild import Cochain, differential, from_function, random_cochain
from .seq import SeqElem, to_word
from .totalization import Window, realize_se
from .trees import Vertex, nu_tree


def eval_tree(t: Vertex, A: Algebra, cochains: dict, args=(), algebra_args: dict | None = None) -> tuple:
    """Value of the tree on output arguments ``args``."""
    algebra_args = algebra_args or {}
    if t.kind == "j":
        return tuple(args[t.label])
    if t.kind == "a":
        return tuple(algebra_args[t.label])
    vals = [eval_tree(c, A, cochains, args, algebra_args) for c in t.children]
    if t.kind == "s":
        P = cochains[t.label]
        if P.arity != len(vals):
            raise ValidationError(f"input {t.label} has arity {len(vals)}, cochain has {P.arity}")
        return P(*vals)
    out = A.one()
    for v in vals:
        out = A.mul(out, v)
    return out


def tree_cochain(t: Vertex, A: Algebra, cochains: dict, n_outputs: int, algebra_args: dict | None = None) -> Cochain:
    """The cochain of arity ``n_outputs`` computed by the tree."""
    return from_function(A, n_outputs, lambda *b: eval_tree(t, A, cochains, b, algebra_args))


def act(e: SeqElem, A: Algebra, cochains: dict, algebra_args: dict | None = None) -> Cochain:
    """Set-level action of ``e``: input ``s`` takes a cochain of arity ``|I_s| - 1``."""
    for s in e.cochain_inputs:
        if cochains[s].arity != e.blocks[s] - 1:
            raise ValidationError(f"input {s} expects arity {e.blocks[s] - 1}")
    t = nu_tree(to_word(e), e.sc)
    return tree_cochain(t, A, cochains, 0 if e.sc else e.J - 1, algebra_args)


def act_total(vec: dict, window: Window, A: Algebra, cochains: dict, algebra_args=None, degree=None) -> Cochain | None:
    """Action of a window chain: terms whose profile does not match the cochain
    arities act by zero. Returns None when no term matches."""
    out = None
    f = A.field
    for idx, c in vec.items():
        e = window.labels[degree][idx]
        if any(cochains[s].arity != e.blocks[s] - 1 for s in e.cochain_inputs):
            continue
        val = act(e, A, cochains, algebra_args).scaled(c)
        out = val if out is None else out + val
    return out


@dataclass
class ChainMapReport:
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"checked": self.checked, "failures": self.failures[:20], "ok": self.ok}


def verify_chain_map(A: Algebra, max_tokens: int = 4, max_inputs: int = 3, seed: int = 0, J_max: int = 4) -> ChainMapReport:
    """Check ``(dx)(P) = d(x(P)) + (-1)^m sum_s eps_s x(.., dP_s, ..)`` on window basis elements.

    ``x`` runs over simplicially nondegenerate elements of ``Se(S)`` with at most
    ``max_tokens`` tokens and ``|J| <= J_max`` (cosimplicial direction kept
    unnormalized, so every coface term is present). For each ``x`` the cochains
    ``P_s`` are random normalized cochains of arity ``|I_s| - 1`` for the first
    term and of arity ``|I_s| - 2`` on one input for the second.
    """
    rng = random.Random(seed)
    failures, checked = [], 0
    for n in range(1, max_inputs + 1):
        w = realize_se(n, J_cut=J_max + 1, conormalized=False, max_tokens=max_tokens)
        for deg, labels in w.labels.items():
            for idx, x in enumerate(labels):
                if x.J > J_max:
                    continue
                dx = w.differential_of(deg, idx)
                m = x.J - 1
                # profile matching x: only the cosimplicial side of dx contributes
                P = {s: random_cochain(A, x.blocks[s] - 1, rng, normalized=True) for s in range(n)}
                lhs = act_total(dx, w, A, P, degree=deg + 1)
                rhs = differential(act(x, A, P))
                checked += 1
                if (lhs if lhs is not None else rhs.scaled(0)) != rhs:
                    failures.append({"element": x.to_json(), "term": "cosimplicial"})
                # profile with input s one shorter: only the simplicial side contributes
                for s in range(n):
                    if x.blocks[s] < 2:
                        continue
                    Q = {r: random_cochain(A, x.blocks[r] - 1 - (r == s), rng, normalized=True) for r in range(n)}
                    eps = A.field((-1) ** (m + sum(x.blocks[b] - 1 for b in range(s))))
                    dQ = dict(Q)
                    dQ[s] = differential(Q[s])
                    rhs = act(x, A, dQ).scaled(eps)
                    lhs = act_total(dx, w, A, Q, degree=deg + 1)
                    checked += 1
                    if (lhs if lhs is not None else rhs.scaled(0)) != rhs:
                        failures.append({"element": x.to_json(), "term": f"simplicial[{s}]"})
    return ChainMapReport(checked, failures)


def example_trees() -> dict[str, Vertex]:
    """Four equivalent trees with one nullary input 1 and one ternary input 2.

    ``T`` has two binary product vertices, a unary vertex and a nullary unit;
    ``T1`` drops the unary vertex, ``T2`` merges the two products and ``T3``
    does both and is minimal.
    """
    from .trees import j, s, u

    return {
        "T": u(u(s(2, u(j(0)), u(), j(1)), j(2)), s(1)),
        "T1": u(u(s(2, j(0), u(), j(1)), j(2)), s(1)),
        "T2": u(s(2, u(j(0)), u(), j(1)), j(2), s(1)),
        "T3": u(s(2, j(0), u(), j(1)), j(2), s(1)),
    }


def example_formula(A: Algebra, P1: Cochain, P2: Cochain, b: Sequence) -> tuple:
    """``P2(b1, 1, b2) * b3 * P1``."""
    return A.mul(A.mul(P2(b[0], A.one(), b[1]), b[2]), P1())


def worked_example(A: Algebra, trials: int = 100, seed: int = 0) -> dict:
    """Evaluate the four example trees on random cochains and arguments."""
    from .trees import to_minimal

    rng = random.Random(seed)
    trees = example_trees()
    minimal = {name: to_minimal(t) for name, t in trees.items()}
    P = {1: random_cochain(A, 0, rng), 2: random_cochain(A, 3, rng)}
    mismatches = nonzero = 0
    for _ in range(trials):
        b = [A.random(rng) for _ in range(3)]
        expected = example_formula(A, P[1], P[2], b)
        nonzero += expected != A.zero()
        for t in trees.values():
            if eval_tree(t, A, P, b) != expected:
                mismatches += 1
    return {
        "algebra": A.name,
        "trials": trials,
        "seed": seed,
        "same_minimal_form": len(set(minimal.values())) == 1 and minimal["T"] == trees["T3"],
        "mismatches": mismatches,
        "nonzero_values": nonzero,
        "ok": mismatches == 0 and nonzero > 0 and len(set(minimal.values())) == 1,
    }
