"""Finite quandles: validation, standard constructors, homomorphisms,
components and gradings, and the covering predicate.

Elements are always 0-based indices; 1-based indexing exists only at
the CLI boundary.
"""

from dataclasses import dataclass

from . import permgroup
from .errors import (EmptyUnion, NotAHomomorphism, NotAQuandle,
                     NotRightInvertible)
from .permgroup import FiniteGroup, Perm


@dataclass(frozen=True)
class FiniteQuandle:
    """An n-element quandle as validated operation tables.

    op[a][b] = a * b and inv_op[a][b] is the unique x with x * b = a.
    grading maps each element to a component index (default: its
    connected component); basepoints picks one element per grading
    class (default: the minimum of each class).
    """

    n: int
    op: tuple
    inv_op: tuple
    grading: tuple
    basepoints: tuple

    @property
    def component_count(self) -> int:
        return len(self.basepoints)

    def component_elements(self, i: int):
        return tuple(a for a in range(self.n) if self.grading[a] == i)

    def is_connected(self) -> bool:
        return self.component_count == 1


def _component_partition(op):
    """Orbits of the right translations, without building the group."""
    n = len(op)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in range(n):
        for a in range(n):
            ra, rb = find(a), find(op[a][b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    orbit = {}
    for a in range(n):
        orbit.setdefault(find(a), []).append(a)
    return [tuple(sorted(v)) for _, v in sorted(orbit.items())]


def validate(op_table, grading=None, basepoints=None) -> FiniteQuandle:
    """Check the quandle axioms and build a FiniteQuandle.

    Reports the first violated axiom with a witness.  inv_op is derived
    by inverting each right-translation column; the default grading is
    the component partition with minimum-element basepoints.
    """
    op = tuple(tuple(row) for row in op_table)
    n = len(op)
    if n < 1:
        raise NotAQuandle("Q1", (), "empty quandle rejected")
    for a, row in enumerate(op):
        if len(row) != n:
            raise NotAQuandle("Q1", (a,), f"row {a} has wrong length")
        for b, v in enumerate(row):
            if not 0 <= v < n:
                raise NotAQuandle("Q1", (a, b), f"entry {v} out of range")
    for a in range(n):
        if op[a][a] != a:
            raise NotAQuandle("Q1", (a,))
    inv = []
    for b in range(n):
        column = [op[a][b] for a in range(n)]
        if sorted(column) != list(range(n)):
            raise NotRightInvertible(b)
        back = [0] * n
        for a in range(n):
            back[column[a]] = a
        inv.append(back)
    inv_op = tuple(tuple(inv[b][a] for b in range(n)) for a in range(n))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if op[op[a][b]][c] != op[op[a][c]][op[b][c]]:
                    raise NotAQuandle("Q3", (a, b, c))

    parts = _component_partition(op)
    part_index = {}
    for i, part in enumerate(parts):
        for a in part:
            part_index[a] = i
    if grading is None:
        grading = tuple(part_index[a] for a in range(n))
    else:
        grading = tuple(grading)
        if len(grading) != n:
            raise ValueError("grading length mismatch")
        for part in parts:
            if len({grading[a] for a in part}) != 1:
                raise ValueError(f"grading splits the component {part}")
        for a in range(n):
            for b in range(n):
                if grading[op[a][b]] != grading[a]:
                    raise ValueError("grading not preserved by the operation")
    classes = sorted(set(grading))
    if grading is not None and classes != list(range(len(classes))):
        raise ValueError("grading indices must be 0..k-1")
    if basepoints is None:
        basepoints = tuple(min(a for a in range(n) if grading[a] == i)
                           for i in classes)
    else:
        basepoints = tuple(basepoints)
        if len(basepoints) != len(classes):
            raise ValueError("need exactly one basepoint per grading class")
        for i, q in enumerate(basepoints):
            if grading[q] != i:
                raise ValueError(f"basepoint {q} not in class {i}")
    return FiniteQuandle(n=n, op=op, inv_op=inv_op, grading=grading,
                         basepoints=basepoints)


def refine_grading(quandle: FiniteQuandle):
    """Re-grade by connected components (needed for well-pointedness).

    Returns (refined quandle, True if the grading actually changed).
    """
    refined = validate(quandle.op)
    return refined, refined.grading != quandle.grading


# ---------------------------------------------------------------------------
# constructors


def dihedral(n: int) -> FiniteQuandle:
    """Reflections of the n-gon: a * b = 2b - a mod n."""
    if n < 1:
        raise ValueError("n must be positive")
    return validate([[(2 * b - a) % n for b in range(n)] for a in range(n)])


def trivial(n: int) -> FiniteQuandle:
    """a * b = a everywhere."""
    if n < 1:
        raise ValueError("n must be positive")
    return validate([[a] * n for a in range(n)])


def q_mn(m: int, n: int) -> FiniteQuandle:
    """Two trivial pieces Z_m and Z_n rotating each other by one step.

    Elements 0..m-1 form the Z_m block, m..m+n-1 the Z_n block; acting
    across blocks advances the element inside its own cycle.
    """
    if m < 1 or n < 1:
        raise ValueError("blocks must be nonempty")
    size = m + n

    def step(a):
        if a < m:
            return (a + 1) % m
        return m + (a - m + 1) % n

    table = [[a if (a < m) == (b < m) else step(a) for b in range(size)]
             for a in range(size)]
    return validate(table)


def conj_class(group: FiniteGroup, seed: Perm) -> FiniteQuandle:
    """Conjugation quandle on the conjugacy class of the seed element.

    Elements are ordered by BFS discovery (conjugating by the group's
    generators in order); x * y is y^-1 x y.
    """
    seed = tuple(seed)
    if seed not in group:
        raise ValueError("seed does not belong to the group")
    elements = [seed]
    seen = {seed}
    frontier = 0
    while frontier < len(elements):
        x = elements[frontier]
        frontier += 1
        for g in group.generators:
            y = permgroup.mul(permgroup.mul(permgroup.inverse(g), x), g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
    index = {x: i for i, x in enumerate(elements)}
    table = []
    for x in elements:
        row = []
        for y in elements:
            row.append(index[permgroup.mul(
                permgroup.mul(permgroup.inverse(y), x), y)])
        table.append(row)
    return validate(table)


def core(group: FiniteGroup) -> FiniteQuandle:
    """Core quandle of a group: a * b = b a^-1 b."""
    elements = group.elements
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[permgroup.mul(permgroup.mul(b, permgroup.inverse(a)), b)]
              for b in elements] for a in elements]
    return validate(table)


def alexander(table, automorphism) -> FiniteQuandle:
    """Alexander quandle of an abelian group with automorphism T.

    The group is given by a multiplication table; the operation is
    a * b = T(a b^-1) b.
    """
    table = [list(row) for row in table]
    k = len(table)
    t = tuple(automorphism)
    if sorted(t) != list(range(k)):
        raise ValueError("automorphism must be a bijection on the group")
    ident = None
    for e in range(k):
        if all(table[e][x] == x == table[x][e] for x in range(k)):
            ident = e
            break
    if ident is None:
        raise ValueError("table has no identity")
    for a in range(k):
        for b in range(k):
            if table[a][b] != table[b][a]:
                raise ValueError("group must be abelian")
            if t[table[a][b]] != table[t[a]][t[b]]:
                raise ValueError("map is not an automorphism")
    inv = [0] * k
    for a in range(k):
        for b in range(k):
            if table[a][b] == ident:
                inv[a] = b
    op = [[table[t[table[a][inv[b]]]][b] for b in range(k)] for a in range(k)]
    return validate(op)


# ---------------------------------------------------------------------------
# structure


def inn_generators(quandle: FiniteQuandle):
    """The right translations rho_a as permutations, one per element."""
    return tuple(tuple(quandle.op[x][a] for x in range(quandle.n))
                 for a in range(quandle.n))


def components(quandle: FiniteQuandle):
    """Connected components with an element -> component-index map."""
    parts = _component_partition(quandle.op)
    index = [0] * quandle.n
    for i, part in enumerate(parts):
        for a in part:
            index[a] = i
    return parts, tuple(index)


def inner_group(quandle: FiniteQuandle, variant: str = "full",
                budget: int = permgroup.DEFAULT_GROUP_BUDGET):
    """Inner automorphism group Inn(Q) or its degree-zero part.

    Returns (group, inn) where inn[a] is the right translation by a.
    For the degree-zero variant the generators are rho_{q0}^-1 rho_b
    with q0 the global minimum element.
    """
    gens = inn_generators(quandle)
    if variant == "full":
        group = permgroup.closure(gens, budget=budget, degree=quandle.n)
    elif variant == "degree_zero":
        base_inv = permgroup.inverse(gens[0])
        transvections = tuple(permgroup.mul(base_inv, g) for g in gens[1:])
        group = permgroup.closure(transvections, budget=budget,
                                  degree=quandle.n)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return group, gens


@dataclass(frozen=True)
class QuandleHom:
    """A quandle homomorphism given by its value table."""

    source: FiniteQuandle
    target: FiniteQuandle
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.n:
            raise NotAHomomorphism(("length",))
        for v in self.map:
            if not 0 <= v < self.target.n:
                raise NotAHomomorphism(("range", v))
        src, tgt, f = self.source.op, self.target.op, self.map
        for a in range(self.source.n):
            for b in range(self.source.n):
                if f[src[a][b]] != tgt[f[a]][f[b]]:
                    raise NotAHomomorphism((a, b))

    def __call__(self, a: int) -> int:
        return self.map[a]

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.n

    def fibre(self, q: int):
        return tuple(a for a in range(self.source.n) if self.map[a] == q)


def identity_hom(quandle: FiniteQuandle) -> QuandleHom:
    return QuandleHom(quandle, quandle, tuple(range(quandle.n)))


def compose_homs(f: QuandleHom, g: QuandleHom) -> QuandleHom:
    """g after f."""
    if f.target is not g.source and f.target.op != g.source.op:
        raise ValueError("homomorphisms do not compose")
    return QuandleHom(f.source, g.target, tuple(g.map[v] for v in f.map))


def is_covering(p: QuandleHom):
    """Covering test with a witness.

    True iff p is surjective and fibre-mates act identically by right
    translation.  Returns (bool, witness), the witness being a triple
    (a, x, y) with a * x != a * y although p(x) = p(y).
    """
    if not p.is_surjective():
        return False, None
    src = p.source
    by_fibre = {}
    for x in range(src.n):
        by_fibre.setdefault(p.map[x], []).append(x)
    for mates in by_fibre.values():
        x = mates[0]
        for y in mates[1:]:
            for a in range(src.n):
                if src.op[a][x] != src.op[a][y]:
                    return False, (a, x, y)
    return True, None


def pullback(p: QuandleHom, f: QuandleHom):
    """Pull a covering p back along f.

    Returns (projection, leg) where projection covers f's source on the
    fibred product {(x, a~) | f(x) = p(a~)} and leg maps into p's
    source.  Elements are ordered lexicographically.
    """
    ok, _ = is_covering(p)
    if not ok:
        raise ValueError("p is not a covering")
    if f.target.op != p.target.op:
        raise ValueError("p and f must share a target")
    x_side, cover = f.source, p.source
    elements = [(x, a) for x in range(x_side.n) for a in range(cover.n)
                if f.map[x] == p.map[a]]
    index = {e: i for i, e in enumerate(elements)}
    table = []
    for (x, a) in elements:
        row = []
        for (y, b) in elements:
            row.append(index[(x_side.op[x][y], cover.op[a][b])])
        table.append(row)
    total = validate(table)
    projection = QuandleHom(total, x_side, tuple(x for (x, _) in elements))
    leg = QuandleHom(total, cover, tuple(a for (_, a) in elements))
    return projection, leg


def union_coverings(coverings):
    """Disjoint union of coverings of one base quandle.

    Acting by (b, j) on (a, i) means acting by any lift of p_j(b) in
    summand i; that is well defined precisely because each summand is a
    covering.  Returns the covering projection of the union.
    """
    coverings = list(coverings)
    if not coverings:
        raise EmptyUnion("union of zero coverings")
    base = coverings[0].target
    for p in coverings:
        if p.target.op != base.op:
            raise ValueError("coverings must share their base")
        ok, _ = is_covering(p)
        if not ok:
            raise ValueError("input is not a covering")
    elements = [(i, a) for i, p in enumerate(coverings)
                for a in range(p.source.n)]
    index = {e: k for k, e in enumerate(elements)}
    lifts = []  # per summand: one chosen preimage of each base element
    for p in coverings:
        chosen = {}
        for a in range(p.source.n):
            chosen.setdefault(p.map[a], a)
        lifts.append(chosen)
    table = []
    for (i, a) in elements:
        row = []
        for (j, b) in elements:
            q = coverings[j].map[b]
            row.append(index[(i, coverings[i].source.op[a][lifts[i][q]])])
        table.append(row)
    total = validate(table)
    flat = tuple(coverings[i].map[a] for (i, a) in elements)
    return QuandleHom(total, base, flat)
