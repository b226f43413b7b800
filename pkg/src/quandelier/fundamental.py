"""Fundamental groups and coverings of finite quandles.

Two independent pipelines compute pi_1: a spanning-tree presentation
read off the path 2-complex, and the stabilizer of the basepoint inside
the coset enumeration of the adjoint group modulo the basepoint
generator.  Both are exposed and cross-checked in the tests.
"""

from dataclasses import dataclass

from . import fpgroup, permgroup, quandle as qmod
from .errors import BudgetExceeded
from .fpgroup import CosetTable, Presentation
from .permgroup import FiniteGroup
from .quandle import FiniteQuandle, QuandleHom


# ---------------------------------------------------------------------------
# the path 2-complex


@dataclass(frozen=True)
class PathComplex:
    """2-complex with one vertex per element and one edge per pair.

    Edge (a, b) runs from a to a*b and is numbered a*n + b.  Each cell
    is stored as its boundary word: a tuple of signed 1-based edge
    numbers forming a closed edge path.  H1 cells kill the loops (a, a);
    H3 cells glue the two ways around the self-distributivity square.
    """

    quandle: FiniteQuandle
    edge_src: tuple
    edge_tgt: tuple
    cells_h1: tuple
    cells_h3: tuple

    @property
    def edge_count(self) -> int:
        return len(self.edge_src)


def build_complex(quandle: FiniteQuandle) -> PathComplex:
    n = quandle.n
    op = quandle.op

    def edge(a, b):
        return a * n + b

    src = tuple(a for a in range(n) for _ in range(n))
    tgt = tuple(op[a][b] for a in range(n) for b in range(n))
    h1 = tuple((edge(a, a) + 1,) for a in range(n))
    h3 = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                h3.append((edge(a, b) + 1,
                           edge(op[a][b], c) + 1,
                           -(edge(op[a][c], op[b][c]) + 1),
                           -(edge(a, c) + 1)))
    return PathComplex(quandle=quandle, edge_src=src, edge_tgt=tgt,
                       cells_h1=h1, cells_h3=tuple(h3))


def component_cells(complex_: PathComplex, component: int):
    """Cell boundary words whose edges all live in one component."""
    gr = complex_.quandle.grading
    src = complex_.edge_src
    cells = []
    for word in complex_.cells_h1 + complex_.cells_h3:
        if gr[src[abs(word[0]) - 1]] == component:
            cells.append(word)
    return cells


def pi1_presentation(quandle: FiniteQuandle, basepoint: int) -> Presentation:
    """Spanning-tree presentation of pi_1 at the basepoint.

    BFS over edges in index order builds the tree inside the
    basepoint's component; non-tree edges become generators and cell
    boundaries become relators, free-reduced and deduplicated.
    """
    if not 0 <= basepoint < quandle.n:
        raise ValueError("basepoint out of range")
    complex_ = build_complex(quandle)
    comp = quandle.grading[basepoint]
    n = quandle.n
    src, tgt = complex_.edge_src, complex_.edge_tgt
    comp_edges = [e for e in range(len(src))
                  if quandle.grading[src[e]] == comp]

    in_tree = set()
    visited = {basepoint}
    frontier = [basepoint]
    while frontier:
        nxt = []
        for v in frontier:
            for e in comp_edges:
                if src[e] == v and tgt[e] not in visited:
                    visited.add(tgt[e])
                    in_tree.add(e)
                    nxt.append(tgt[e])
                elif tgt[e] == v and src[e] not in visited:
                    visited.add(src[e])
                    in_tree.add(e)
                    nxt.append(src[e])
        frontier = nxt

    gen_of_edge = {}
    for e in comp_edges:
        if e not in in_tree:
            gen_of_edge[e] = len(gen_of_edge) + 1

    relators = []
    seen = set()
    for word in component_cells(complex_, comp):
        letters = []
        for signed in word:
            e = abs(signed) - 1
            if e in in_tree:
                continue
            g = gen_of_edge[e]
            letters.append(g if signed > 0 else -g)
        reduced = fpgroup.normalize(tuple(letters))
        if reduced and reduced not in seen:
            seen.add(reduced)
            relators.append(reduced)
    return Presentation(generator_count=len(gen_of_edge),
                        relators=tuple(relators))


# ---------------------------------------------------------------------------
# coset enumeration of Adj(Q) modulo the basepoint generator


def adj0_enumeration(quandle: FiniteQuandle, basepoint: int,
                     budget: int = fpgroup.DEFAULT_COSET_BUDGET):
    """Cosets of <adj(q)> in Adj(Q), with the endpoint of each coset.

    Each coset holds exactly one degree-zero element, so the table is a
    faithful model of the degree-zero subgroup with its right action.
    endpoint[c] is the image of the basepoint under the representative
    word, traced through the right translations.
    """
    if not 0 <= basepoint < quandle.n:
        raise ValueError("basepoint out of range")
    pres = fpgroup.adjoint_presentation(quandle)
    table = fpgroup.todd_coxeter(pres, [(basepoint + 1,)], budget=budget)
    endpoints = []
    for word in table.representative_word:
        x = basepoint
        for letter in word:
            g = abs(letter) - 1
            x = quandle.op[x][g] if letter > 0 else quandle.inv_op[x][g]
        endpoints.append(x)
    return table, tuple(endpoints)


def _adjusted_word(table: CosetTable, basepoint: int, coset: int):
    """Word of the degree-zero representative of a coset.

    The representative of the coset of w is adj(q)^-deg(w) * w; the
    prefix keeps the degree at zero.
    """
    w = table.representative_word[coset]
    deg = fpgroup.word_degree(w)
    letter = -(basepoint + 1) if deg > 0 else (basepoint + 1)
    return (letter,) * abs(deg) + w


def _deck_perm(table: CosetTable, basepoint: int, stab_coset: int):
    """Left multiplication by a stabilizer coset's degree-zero element,
    as a permutation of all cosets."""
    return tuple(table.trace(stab_coset, _adjusted_word(table, basepoint, c))
                 for c in range(table.coset_count))


def deck_group(table: CosetTable, endpoints, basepoint: int) -> FiniteGroup:
    """pi_1 as a permutation group acting on the cosets from the left.

    Elements correspond to cosets whose endpoint is the basepoint,
    listed in coset order; the action is free, so it is faithful.
    """
    stabilizer = [c for c in range(table.coset_count)
                  if endpoints[c] == basepoint]
    perms = tuple(_deck_perm(table, basepoint, c) for c in stabilizer)
    identity_index = stabilizer.index(0)
    return FiniteGroup(degree=table.coset_count, elements=perms,
                       generators=perms, identity_index=identity_index)


# ---------------------------------------------------------------------------
# universal covering


@dataclass(frozen=True)
class UniversalCover:
    """The universal covering quandle, assembled per component.

    Component i contributes one cover element per coset of the
    enumeration based at q_i; offsets[i] is where its block starts.
    deck[i] is pi_1(Q, q_i) acting on the block's cosets.
    """

    base: FiniteQuandle
    cover: FiniteQuandle
    projection: QuandleHom
    tables: tuple
    endpoints: tuple
    offsets: tuple
    deck: tuple

    def element(self, component: int, coset: int) -> int:
        return self.offsets[component] + coset

    def component_of(self, element: int) -> int:
        i = 0
        while (i + 1 < len(self.offsets)
               and element >= self.offsets[i + 1]):
            i += 1
        return i


def universal_cover(quandle: FiniteQuandle,
                    budget: int = fpgroup.DEFAULT_COSET_BUDGET
                    ) -> UniversalCover:
    """Build the universal covering on pairs (endpoint, coset).

    The operation (a,g)*(b,h) = (a*b, g adj(a)^-1 adj(b)) becomes right
    multiplication in the coset tables.  Fails with BudgetExceeded when
    some degree-zero subgroup is infinite or too large.
    """
    tables = []
    endpoints = []
    offsets = []
    total = 0
    for q in quandle.basepoints:
        table, ends = adj0_enumeration(quandle, q, budget=budget)
        tables.append(table)
        endpoints.append(ends)
        offsets.append(total)
        total += table.coset_count

    def op_entry(i, c, j, d, inverse=False):
        a = endpoints[i][c]
        b = endpoints[j][d]
        t = tables[i]
        if inverse:
            word = (a + 1, -(b + 1))
        else:
            word = (-(a + 1), b + 1)
        return offsets[i] + t.trace(c, word)

    spans = [(i, c) for i, t in enumerate(tables)
             for c in range(t.coset_count)]
    table_op = []
    for (i, c) in spans:
        row = []
        for (j, d) in spans:
            row.append(op_entry(i, c, j, d))
        table_op.append(row)
    grading = tuple(i for (i, _) in spans)
    basepoints = tuple(offsets[i] for i in range(len(tables)))
    cover = qmod.validate(table_op, grading=grading, basepoints=basepoints)
    projection = QuandleHom(cover, quandle,
                            tuple(endpoints[i][c] for (i, c) in spans))
    deck = tuple(deck_group(tables[i], endpoints[i], quandle.basepoints[i])
                 for i in range(len(tables)))
    return UniversalCover(base=quandle, cover=cover, projection=projection,
                          tables=tuple(tables), endpoints=tuple(endpoints),
                          offsets=tuple(offsets), deck=deck)


# ---------------------------------------------------------------------------
# the fundamental group, both pipelines


@dataclass(frozen=True)
class FundamentalGroup:
    """pi_1(Q, q): a presentation always, a finite model when possible.

    finite_form is the deck permutation group on the cosets of the
    adjoint enumeration; presentation_order is the index found by
    enumerating the presentation itself.  When both terminated they
    must agree, which the constructor path asserts.
    """

    basepoint: int
    presentation: Presentation
    finite_form: FiniteGroup
    presentation_order: int
    table: CosetTable
    endpoints: tuple

    @property
    def order(self):
        if self.finite_form is not None:
            return self.finite_form.order
        return self.presentation_order

    def abelian_invariants(self) -> fpgroup.AbelianInvariants:
        return fpgroup.abelian_invariants(self.presentation)


def fundamental_group(quandle: FiniteQuandle, basepoint: int,
                      budget: int = fpgroup.DEFAULT_COSET_BUDGET
                      ) -> FundamentalGroup:
    """Compute pi_1(Q, basepoint).

    The presentation is always returned; the finite form only when the
    adjoint enumeration terminates within budget.  When both finite
    descriptions exist their orders are cross-checked.
    """
    pres = pi1_presentation(quandle, basepoint)
    finite_form = None
    table = None
    ends = None
    pres_order = None
    try:
        table, ends = adj0_enumeration(quandle, basepoint, budget=budget)
    except BudgetExceeded:
        pass
    if table is not None:
        finite_form = deck_group(table, ends, basepoint)
        pres_table = fpgroup.todd_coxeter(pres, [], budget=budget)
        pres_order = pres_table.coset_count
        if pres_order != finite_form.order:
            raise AssertionError(
                f"pipelines disagree: presentation order {pres_order}, "
                f"stabilizer order {finite_form.order}")
    return FundamentalGroup(basepoint=basepoint, presentation=pres,
                            finite_form=finite_form,
                            presentation_order=pres_order,
                            table=table, endpoints=ends)


# ---------------------------------------------------------------------------
# lifting, Galois correspondence, monodromy


def _cover_lift_tables(p: QuandleHom):
    """One chosen lift per base element, for tracing the right action."""
    chosen = {}
    for a in range(p.source.n):
        chosen.setdefault(p.map[a], a)
    return chosen


def right_action_on_cover(p: QuandleHom, element: int, word) -> int:
    """Apply an adjoint word (letters name base elements) to a cover
    element; well defined because p is a covering."""
    lifts = _cover_lift_tables(p)
    x = element
    for letter in word:
        b = lifts[abs(letter) - 1]
        x = p.source.op[x][b] if letter > 0 else p.source.inv_op[x][b]
    return x


def check_lifting(f: QuandleHom, p: QuandleHom, lift_basepoint: int = None):
    """Lifting criterion: try to lift f through the covering p.

    f must start from a connected pointed quandle (X, x) with
    f(x) = p(lift_basepoint).  Returns ("lift", QuandleHom) with the
    unique lift, or ("witness", (word1, word2)) where the two adjoint
    words reach the same element of X but force different lifts.
    """
    x_side = f.source
    if not x_side.is_connected():
        raise ValueError("the lifting source must be connected")
    x0 = x_side.basepoints[0]
    ok, _ = qmod.is_covering(p)
    if not ok:
        raise ValueError("p is not a covering")
    if lift_basepoint is None:
        lift_basepoint = min(a for a in range(p.source.n)
                             if p.map[a] == f.map[x0])
    if p.map[lift_basepoint] != f.map[x0]:
        raise ValueError("basepoint lift does not sit over f(x)")

    cover_lifts = _cover_lift_tables(p)
    lift = {x0: lift_basepoint}
    path = {x0: ()}
    queue = [x0]
    while queue:
        u = queue.pop(0)
        for b in range(x_side.n):
            for sign, v in ((1, x_side.op[u][b]), (-1, x_side.inv_op[u][b])):
                fb = cover_lifts[f.map[b]]
                if sign > 0:
                    w = p.source.op[lift[u]][fb]
                else:
                    w = p.source.inv_op[lift[u]][fb]
                if v not in lift:
                    lift[v] = w
                    path[v] = path[u] + (sign * (b + 1),)
                    queue.append(v)
                elif lift[v] != w:
                    return "witness", (path[u] + (sign * (b + 1),), path[v])
    mapping = tuple(lift[a] for a in range(x_side.n))
    return "lift", QuandleHom(x_side, p.source, mapping)


def enumerate_connected_coverings(quandle: FiniteQuandle, basepoint: int,
                                  budget: int = fpgroup.DEFAULT_COSET_BUDGET,
                                  subgroup_budget: int = 2_000):
    """All pointed connected coverings, one per subgroup of pi_1.

    Requires a connected base.  Each subgroup K yields the quotient of
    the universal cover by the left K-action; the list is ordered like
    the subgroup enumeration (by order, then element indices).
    Returns pairs (K, covering projection).
    """
    if not quandle.is_connected():
        raise ValueError("base quandle must be connected")
    table, ends = adj0_enumeration(quandle, basepoint, budget=budget)
    deck = deck_group(table, ends, basepoint)
    out = []
    for sub in permgroup.subgroups(deck, budget=subgroup_budget):
        orbit_of = {}
        orbit_reps = []
        for c in range(table.coset_count):
            if c in orbit_of:
                continue
            orbit = {c}
            stack = [c]
            while stack:
                d = stack.pop()
                for perm in sub.elements:
                    e = perm[d]
                    if e not in orbit:
                        orbit.add(e)
                        stack.append(e)
            rep = min(orbit)
            orbit_reps.append(rep)
            for d in orbit:
                orbit_of[d] = rep
        orbit_reps.sort()
        idx = {rep: i for i, rep in enumerate(orbit_reps)}
        rows = []
        for c in orbit_reps:
            row = []
            for d in orbit_reps:
                word = (-(ends[c] + 1), ends[d] + 1)
                row.append(idx[orbit_of[table.trace(c, word)]])
            rows.append(row)
        total = qmod.validate(rows)
        proj = QuandleHom(total, quandle,
                          tuple(ends[rep] for rep in orbit_reps))
        out.append((sub, proj))
    return out


def monodromy(p: QuandleHom, basepoint: int,
              budget: int = fpgroup.DEFAULT_COSET_BUDGET):
    """Action of pi_1(Q, basepoint) on the fibre over the basepoint.

    Returns (pi1 finite form, fibre tuple, permutations) where
    permutations[k] describes how the k-th pi_1 element permutes the
    fibre (as images indexed like the fibre tuple).  Needs the finite
    form, so it propagates BudgetExceeded for infinite pi_1.
    """
    ok, _ = qmod.is_covering(p)
    if not ok:
        raise ValueError("p is not a covering")
    base = p.target
    table, ends = adj0_enumeration(base, basepoint, budget=budget)
    deck = deck_group(table, ends, basepoint)
    stabilizer = [c for c in range(table.coset_count)
                  if ends[c] == basepoint]
    fibre = p.fibre(basepoint)
    pos = {x: i for i, x in enumerate(fibre)}
    perms = []
    for c in stabilizer:
        word = _adjusted_word(table, basepoint, c)
        images = tuple(pos[right_action_on_cover(p, x, word)] for x in fibre)
        perms.append(images)
    return deck, fibre, tuple(perms)
