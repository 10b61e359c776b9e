"""Exhaustive censuses over finite populations.

The brute-force census is the independent oracle: it evaluates the defining
equations literally for every candidate matrix, in a fixed odometer order
(row-major, last entry varying fastest, population values ascending), so
identical tasks always produce identical streams.  Constraint-guided
enumeration and family materialization live here too; their outputs are
canonically sorted so theorem-versus-oracle comparisons are plain set
comparisons.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, Optional

from .families import (
    ColumnScaledFamily,
    ExplicitUnion,
    InverseFamily,
    RankOneProductFamily,
    SumConstraintSystem,
)
from .matrices import (
    DomainError,
    IntMatrix,
    TernaryMatrix,
    _product_rows,
    exact_rank,
    normalize_spec,
    serialize_matrix,
)

DEFAULT_CELL_BUDGET = 16


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured cell budget."""


@dataclass(frozen=True)
class Population:
    """The finite set of allowed entries, kept strictly increasing."""

    values: tuple[int, ...] = (-1, 0, 1)

    def __post_init__(self):
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise DomainError("population must be nonempty")
        if len(self.values) > 8:
            raise DomainError("populations with more than 8 values are unsupported")
        if any(not isinstance(v, int) for v in self.values):
            raise DomainError("population values must be integers")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise DomainError("population values must be strictly increasing")

    def __contains__(self, value: int) -> bool:
        return value in self.values

    def __len__(self) -> int:
        return len(self.values)


TERNARY = Population()


@dataclass(frozen=True)
class EnumerationResult:
    """An ordered stream of matrices plus its exact count.

    ``matrices`` is None for count-only runs; otherwise the count equals the
    stream length.
    """

    matrices: Optional[tuple[IntMatrix, ...]]
    count: int

    def __iter__(self) -> Iterator[IntMatrix]:
        if self.matrices is None:
            raise DomainError("count-only result has no stream")
        return iter(self.matrices)

    def __len__(self) -> int:
        return self.count

    def as_set(self) -> frozenset[IntMatrix]:
        if self.matrices is None:
            raise DomainError("count-only result has no stream")
        return frozenset(self.matrices)

    def serialize(self) -> str:
        """Stream in the matrix text format, blank-line separated, with a
        trailing count record."""
        parts = []
        if self.matrices is not None:
            parts.extend(serialize_matrix(m) for m in self.matrices)
        parts.append(f"count: {self.count}\n")
        return "\n".join(parts)

    def to_json(self) -> dict:
        payload: dict = {"count": self.count}
        if self.matrices is not None:
            payload["matrices"] = [m.to_lists() for m in self.matrices]
        return payload


@dataclass(frozen=True)
class EnumerationTask:
    """A reproducible scan of all population-valued matrices of one shape.

    ``prefix`` pins leading entries, which is how a task splits into
    disjoint subtasks for parallel runs: fixing the first cell to each
    population value partitions the odometer sequence into consecutive
    ranges, so concatenating subtask outputs in value order reproduces the
    sequential stream exactly.
    """

    shape: tuple[int, int]
    population: Population
    predicate: Callable[[tuple[tuple[int, ...], ...]], bool]
    rank_filter: Optional[int] = None
    prefix: tuple[int, ...] = ()

    def split(self) -> list["EnumerationTask"]:
        return [
            EnumerationTask(
                self.shape,
                self.population,
                self.predicate,
                self.rank_filter,
                self.prefix + (v,),
            )
            for v in self.population.values
        ]

    def run(self, count_only: bool = False) -> EnumerationResult:
        rows_n, cols_m = self.shape
        cells = rows_n * cols_m
        free = cells - len(self.prefix)
        values = self.population.values
        keep = self.predicate
        rank_filter = self.rank_filter
        matches: list[IntMatrix] = []
        count = 0
        for tail in product(values, repeat=free):
            ent = self.prefix + tail
            x_rows = tuple(ent[i : i + cols_m] for i in range(0, cells, cols_m))
            if not keep(x_rows):
                continue
            x = IntMatrix(rows_n, cols_m, ent)
            if rank_filter is not None and exact_rank(x) != rank_filter:
                continue
            count += 1
            if not count_only:
                matches.append(x)
        return EnumerationResult(None if count_only else tuple(matches), count)


def _run_task(
    task: EnumerationTask, count_only: bool, workers: int
) -> EnumerationResult:
    if workers <= 1:
        return task.run(count_only)
    parts = task.split()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda t: t.run(count_only), parts))
    count = sum(r.count for r in results)
    if count_only:
        return EnumerationResult(None, count)
    merged: list[IntMatrix] = []
    for r in results:
        merged.extend(r.matrices or ())
    return EnumerationResult(tuple(merged), count)


def brute_force_inverses(
    a: TernaryMatrix,
    spec: str,
    population: Population = TERNARY,
    rank_filter: Optional[int] = None,
    cell_budget: int = DEFAULT_CELL_BUDGET,
    count_only: bool = False,
    workers: int = 1,
) -> EnumerationResult:
    """Literal evaluation of the defining equations over every candidate.

    Scans all population-valued matrices of the transposed shape and keeps
    those satisfying the requested equations (1: AXA=A, 2: XAX=X, 12:
    both), optionally restricted to an exact rank.  Refuses scans beyond
    the cell budget instead of truncating.
    """
    spec = normalize_spec(spec)
    n, m = a.cols, a.rows
    cells = n * m
    if cells > cell_budget:
        raise ResourceLimitError(
            f"enumeration of {cells} cells exceeds the budget of {cell_budget}"
        )
    ar = a.row_tuples()
    want_1 = "1" in spec
    want_2 = "2" in spec

    def keep(x_rows) -> bool:
        if want_1 and _product_rows(_product_rows(ar, x_rows), ar) != ar:
            return False
        if want_2 and _product_rows(_product_rows(x_rows, ar), x_rows) != x_rows:
            return False
        return True

    task = EnumerationTask((n, m), population, keep, rank_filter)
    return _run_task(task, count_only, workers)


# ---------------------------------------------------------------------------
# constraint-guided enumeration

def _sum_counts(cells: int, values: tuple[int, ...]) -> list[dict[int, int]]:
    """counts[k][s] = number of ways to fill k cells with entries from the
    population so they sum to s."""
    table: list[dict[int, int]] = [{0: 1}]
    for _ in range(cells):
        nxt: dict[int, int] = {}
        for s, c in table[-1].items():
            for v in values:
                nxt[s + v] = nxt.get(s + v, 0) + c
        table.append(nxt)
    return table


def _fillings(
    cells: int, target: int, values: tuple[int, ...], table
) -> Iterator[tuple[int, ...]]:
    """All cell fillings with the given sum, in odometer order."""
    if cells == 0:
        if target == 0:
            yield ()
        return
    for v in values:
        if table[cells - 1].get(target - v):
            for rest in _fillings(cells - 1, target - v, values, table):
                yield (v,) + rest


def _block_groups(system: SumConstraintSystem):
    """Partition blocks into connected components linked by constraints."""
    part = system.partition
    blocks = [
        (i, j)
        for i in range(part.n_row_blocks)
        for j in range(part.n_col_blocks)
    ]
    parent = {b: b for b in blocks}

    def find(b):
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        return b

    for con in system.constraints:
        touched = [b for _, b in con.terms]
        for b in touched[1:]:
            ra, rb = find(touched[0]), find(b)
            if ra != rb:
                parent[rb] = ra

    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for b in blocks:
        groups.setdefault(find(b), []).append(b)
    constraint_of: dict[tuple[int, int], list] = {root: [] for root in groups}
    unsatisfiable = False
    for con in system.constraints:
        if con.terms:
            constraint_of[find(con.terms[0][1])].append(con)
        elif con.rhs != 0:
            unsatisfiable = True
    return groups, constraint_of, unsatisfiable


def _group_solutions(
    system: SumConstraintSystem,
    group_blocks: list[tuple[int, int]],
    constraints,
    population: Population,
    count_only: bool,
):
    """Solutions for one connected block group.

    Enumerates per-block sum profiles first, prunes by the exact
    constraints, then expands per-block fillings.  Returns either a count
    or a list of {block: entries} assignments.
    """
    part = system.partition
    values = population.values
    sizes = [
        (part.block_span(i, j)[1] - part.block_span(i, j)[0])
        * (part.block_span(i, j)[3] - part.block_span(i, j)[2])
        for (i, j) in group_blocks
    ]
    tables = [_sum_counts(k, values) for k in sizes]
    sum_choices = [sorted(t[k].keys()) for t, k in zip(tables, sizes)]

    total = 0
    assignments = []
    for profile in product(*sum_choices):
        sums = dict(zip(group_blocks, profile))
        if any(con.evaluate(sums) != con.rhs for con in constraints):
            continue
        ways = 1
        for t, k, s in zip(tables, sizes, profile):
            ways *= t[k][s]
        if count_only:
            total += ways
            continue
        per_block = [
            list(_fillings(k, s, values, t))
            for t, k, s in zip(tables, sizes, profile)
        ]
        for combo in product(*per_block):
            assignments.append(dict(zip(group_blocks, combo)))
    if count_only:
        return total
    return assignments


def enumerate_sum_constrained(
    system: SumConstraintSystem,
    population: Population = TERNARY,
    count_only: bool = False,
) -> EnumerationResult:
    """All population-valued matrices satisfying every block-sum constraint.

    Works groupwise over the connected components of the constraint graph:
    blocks never sharing a constraint are filled independently, so counts
    multiply and streams are Cartesian products, assembled and sorted into
    odometer order.
    """
    groups, constraint_of, unsatisfiable = _block_groups(system)
    part = system.partition
    if unsatisfiable:
        return EnumerationResult(None if count_only else (), 0)
    if count_only:
        count = 1
        for root, blocks in groups.items():
            count *= _group_solutions(
                system, blocks, constraint_of[root], population, True
            )
        return EnumerationResult(None, count)

    group_assignments = []
    for root, blocks in groups.items():
        sols = _group_solutions(system, blocks, constraint_of[root], population, False)
        if not sols:
            return EnumerationResult((), 0)
        group_assignments.append(sols)

    n, m = system.shape
    cells_of = {
        (i, j): part.block_cells(i, j)
        for i in range(part.n_row_blocks)
        for j in range(part.n_col_blocks)
    }
    out = []
    for combo in product(*group_assignments):
        ent = [0] * (n * m)
        for assignment in combo:
            for block, filling in assignment.items():
                for (r, c), v in zip(cells_of[block], filling):
                    ent[r * m + c] = v
        out.append(tuple(ent))
    out.sort()
    return EnumerationResult(
        tuple(IntMatrix(n, m, e) for e in out), len(out)
    )


# ---------------------------------------------------------------------------
# family materialization

def _entries_ok(entries: Iterable[int], population: Population) -> bool:
    vals = population.values
    return all(e in vals for e in entries)


def _materialize_product(
    body: RankOneProductFamily, population: Population
) -> set[tuple[int, ...]]:
    n, m = body.shape
    values = population.values
    seen: set[tuple[int, ...]] = set()
    for p in product(values, repeat=n):
        for q in product(values, repeat=m):
            if body.condition_value(p, q) != 1:
                continue
            ent = tuple(pi * qj for pi in p for qj in q)
            if _entries_ok(ent, population):
                seen.add(ent)
    return seen


def _materialize_column_scaled(
    body: ColumnScaledFamily, population: Population
) -> set[tuple[int, ...]]:
    n, m = body.shape
    values = population.values
    seen: set[tuple[int, ...]] = set()
    for x1 in product(values, repeat=n):
        if not any(x1):
            continue
        for lambdas in product(values, repeat=m - 1):
            if body.condition_value(x1, lambdas) != 1:
                continue
            scalars = (1,) + lambdas
            ent = tuple(s * x1[i] for i in range(n) for s in scalars)
            if _entries_ok(ent, population):
                seen.add(ent)
    return seen


def _materialize_body(
    body, population: Population, shape: tuple[int, int]
) -> set[tuple[int, ...]]:
    if isinstance(body, SumConstraintSystem):
        res = enumerate_sum_constrained(body, population)
        return {m.entries for m in res.matrices or ()}
    if isinstance(body, RankOneProductFamily):
        return _materialize_product(body, population)
    if isinstance(body, ColumnScaledFamily):
        return _materialize_column_scaled(body, population)
    if isinstance(body, ExplicitUnion):
        out: set[tuple[int, ...]] = set()
        for comp in body.components:
            out |= _materialize_body(comp.body, population, comp.shape)
        if body.include_zero and 0 in population:
            out.add((0,) * (shape[0] * shape[1]))
        return out
    raise DomainError(f"cannot materialize body of type {type(body).__name__}")


def materialize_family(
    family: InverseFamily, population: Population = TERNARY
) -> EnumerationResult:
    """The family's population-valued members, deduplicated and sorted into
    odometer order."""
    n, m = family.shape
    entries = sorted(_materialize_body(family.body, population, family.shape))
    return EnumerationResult(
        tuple(IntMatrix(n, m, e) for e in entries), len(entries)
    )


@dataclass(frozen=True)
class SetComparison:
    equal: bool
    only_in_a: tuple[IntMatrix, ...]
    only_in_b: tuple[IntMatrix, ...]

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "only_in_a": [m.to_lists() for m in self.only_in_a],
            "only_in_b": [m.to_lists() for m in self.only_in_b],
        }


def set_equal(a, b) -> SetComparison:
    """Set comparison of two streams, with the symmetric difference."""
    sa = set(a.matrices if isinstance(a, EnumerationResult) else a)
    sb = set(b.matrices if isinstance(b, EnumerationResult) else b)
    only_a = tuple(sorted(sa - sb, key=lambda m: m.entries))
    only_b = tuple(sorted(sb - sa, key=lambda m: m.entries))
    return SetComparison(not only_a and not only_b, only_a, only_b)
