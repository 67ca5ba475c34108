"""Reduction from CNF satisfiability to systems of tropical polynomial equations.

Every Boolean variable u_i gets two tropical unknowns, x_i (for the literal
u_i) and y_i (for not u_i), tied by ``x_i (x) y_i = 1``.  A clause becomes
the tropical sum of y_i for each positive literal and x_i for each negative
one, set equal to 0.  Over {0, 1} the system is solvable exactly when the
formula is satisfiable; u_i = 1 corresponds to x_i = 1, y_i = 0.

Unknowns are interleaved: index ``2i`` is x_{i+1}, ``2i + 1`` is y_{i+1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .polynomial import TropPoly, poly_eval

DEFAULT_BUDGET = 2**24


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("negative variable count")
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for c in clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")
        object.__setattr__(self, "clauses", clauses)

    def satisfied_by(self, assignment: Sequence[int]) -> bool:
        return all(any((assignment[abs(l) - 1] == 1) == (l > 0) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF text: ``c`` comments, a ``p cnf V C`` header, 0-terminated clauses."""
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ValueError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ValueError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise ValueError(f"line {lineno}: negative counts in header")
            continue
        if header is None:
            raise ValueError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ValueError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise ValueError(f"line {lineno}: empty clause")
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise ValueError(f"line {lineno}: literal {lit} out of range 1..{header[0]}")
            else:
                current.append(lit)
    if header is None:
        raise ValueError("missing 'p cnf' header")
    if current:
        raise ValueError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ValueError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def x_index(var: int) -> int:
    """Unknown index of x_var (``var`` is 1-based)."""
    return 2 * (var - 1)


def y_index(var: int) -> int:
    return 2 * (var - 1) + 1


def unknown_names(num_vars: int) -> list[str]:
    names = []
    for i in range(1, num_vars + 1):
        names += [f"x{i}", f"y{i}"]
    return names


@dataclass(frozen=True)
class TropEquation:
    poly: TropPoly
    target: int

    def holds(self, point: Sequence[int]) -> bool:
        return poly_eval(self.poly, point) == self.target


@dataclass(frozen=True)
class TropEqSystem:
    num_vars: int
    equations: tuple[TropEquation, ...]

    def is_solution(self, point: Sequence[int]) -> bool:
        return all(eq.holds(point) for eq in self.equations)

    def render(self) -> list[str]:
        names = unknown_names(self.num_vars // 2)
        out = []
        for eq in self.equations:
            text = eq.poly.to_str(names).replace("*", " (x) ")
            out.append(f"{text} = {eq.target}")
        return out

    def to_json(self) -> dict:
        return {"num_vars": self.num_vars,
                "equations": [{"poly": eq.poly.to_json(), "target": eq.target}
                              for eq in self.equations]}


def reduce_to_tropical(f: CnfFormula) -> TropEqSystem:
    nv = 2 * f.num_vars
    eqs = []
    for i in range(1, f.num_vars + 1):
        e = [0] * nv
        e[x_index(i)] = e[y_index(i)] = 1
        eqs.append(TropEquation(TropPoly.monomial(0, e), 1))
    for clause in f.clauses:
        terms = []
        for lit in clause:
            e = [0] * nv
            e[y_index(lit) if lit > 0 else x_index(-lit)] = 1
            terms.append((0, e))
        eqs.append(TropEquation(TropPoly.from_terms(nv, terms), 0))
    return TropEqSystem(nv, tuple(eqs))


def solve_tropical_brute(system: TropEqSystem, domain: Iterable[int] = (0, 1),
                         budget: int = DEFAULT_BUDGET) -> tuple[int, ...] | None:
    """Lexicographically first solution over ``domain ** num_vars``, or None."""
    dom = sorted(set(int(v) for v in domain))
    if not dom:
        raise ValueError("empty search domain")
    if len(dom) ** system.num_vars > budget:
        raise ValueError(f"{len(dom)}^{system.num_vars} candidates exceed the budget {budget}")
    # Clause equations (several monomials) reject most candidates; test them first.
    eqs = sorted(system.equations, key=lambda e: -len(e.poly))
    compiled = [([(c, [(i, a) for i, a in enumerate(e) if a]) for c, e in eq.poly.monomials],
                 eq.target) for eq in eqs]
    for point in itertools.product(dom, repeat=system.num_vars):
        for mons, target in compiled:
            if min(c + sum(a * point[i] for i, a in idx) for c, idx in mons) != target:
                break
        else:
            return point
    return None


def solve_sat_brute(f: CnfFormula, max_vars: int = 24) -> tuple[int, ...] | None:
    """Lexicographically first satisfying 0/1 assignment, or None if UNSAT."""
    if f.num_vars > max_vars:
        raise ValueError(f"{f.num_vars} variables exceed the brute-force limit {max_vars}")
    for assignment in itertools.product((0, 1), repeat=f.num_vars):
        if f.satisfied_by(assignment):
            return assignment
    return None


def lift_assignment(assignment: Sequence[int]) -> tuple[int, ...]:
    out = []
    for u in assignment:
        if u not in (0, 1):
            raise ValueError(f"Boolean value expected, got {u!r}")
        out += [1, 0] if u == 1 else [0, 1]
    return tuple(out)


def project_assignment(point: Sequence[int]) -> tuple[int, ...]:
    if len(point) % 2:
        raise ValueError("tropical assignment must hold (x_i, y_i) pairs")
    out = []
    for i in range(0, len(point), 2):
        x, y = point[i], point[i + 1]
        if x not in (0, 1) or y not in (0, 1) or x + y != 1:
            raise ValueError(f"pair (x{i // 2 + 1}, y{i // 2 + 1}) = ({x}, {y}) violates x (x) y = 1")
        out.append(x)
    return tuple(out)
