"""Maximum matching in general graphs and 2-SAT.

Thin typed wrappers over the backend kernels (compiled when available).
Both are deterministic: the matching seeds greedily in ascending edge order
before augmenting, and 2-SAT leaves unconstrained variables false.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._backend import kernels as _k
from .errors import FormatError
from .graph import Edge, Graph

Literal = tuple[int, bool]  # (variable, positive?)


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[Edge]

    def __len__(self) -> int:
        return len(self.pairs)

    def mate(self, n: int) -> list[int]:
        out = [-1] * n
        for u, v in self.pairs:
            out[u] = v
            out[v] = u
        return out

    def is_perfect(self, n: int) -> bool:
        return 2 * len(self.pairs) == n

    def is_valid(self, g: Graph) -> bool:
        seen: set[int] = set()
        for u, v in self.pairs:
            if not g.has_edge(u, v) or u in seen or v in seen:
                return False
            seen.update((u, v))
        return True


def max_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching by blossom contraction."""
    adj = [sorted(a) for a in g.adj]
    mate = _k.matching(g.n, adj)
    return Matching(frozenset((u, w) for u, w in enumerate(mate) if w > u))


@dataclass
class TwoSatFormula:
    """2-CNF over variables ``0..num_vars-1``; a unit clause is ``(l, l)``."""

    num_vars: int
    clauses: list[tuple[Literal, Literal]] = field(default_factory=list)

    def add(self, a: Literal, b: Literal) -> None:
        for var, _ in (a, b):
            if not 0 <= var < self.num_vars:
                raise ValueError(f"variable {var} outside 0..{self.num_vars - 1}")
        self.clauses.append((a, b))

    def unit(self, a: Literal) -> None:
        self.add(a, a)

    def satisfied_by(self, assignment) -> bool:
        return all(assignment[a] == sa or assignment[b] == sb for (a, sa), (b, sb) in self.clauses)


def _lit(x: Literal) -> int:
    return 2 * x[0] + (0 if x[1] else 1)


def two_sat(f: TwoSatFormula) -> list[bool] | None:
    """Satisfying assignment, or None when unsatisfiable."""
    return _k.two_sat(f.num_vars, [(_lit(a), _lit(b)) for a, b in f.clauses])


# -- text formats for the ``kernel`` subcommand ---------------------------------


def parse_cnf(text: str) -> TwoSatFormula:
    """DIMACS-style 2-CNF: ``p cnf V C`` then clauses of one or two nonzero
    literals terminated by 0 (variables 1-based, negative = negated)."""
    f = None
    want = 0
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"line {no}: expected 'p cnf <vars> <clauses>'")
            try:
                f = TwoSatFormula(int(parts[2]))
                want = int(parts[3])
            except ValueError:
                raise FormatError(f"line {no}: non-integer header") from None
            continue
        if f is None:
            raise FormatError(f"line {no}: clause before 'p cnf' header")
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise FormatError(f"line {no}: non-integer literal") from None
        if nums[-1] != 0 or not 2 <= len(nums) <= 3 or 0 in nums[:-1]:
            raise FormatError(f"line {no}: clause must hold one or two literals and end with 0")
        lits = [(abs(x) - 1, x > 0) for x in nums[:-1]]
        if any(not 0 <= v < f.num_vars for v, _ in lits):
            raise FormatError(f"line {no}: variable out of range")
        f.add(lits[0], lits[-1])
    if f is None:
        raise FormatError("missing 'p cnf' header")
    if len(f.clauses) != want:
        raise FormatError(f"header announces {want} clauses, found {len(f.clauses)}")
    return f
