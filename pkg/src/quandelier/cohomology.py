"""Second homology and cohomology of finite quandles.

H2 comes from the path 2-complex; H^2 with (possibly non-abelian,
graded) coefficients is handled through 2-cocycles, coboundary
rescaling, and the correspondence with principal coverings and with
homomorphisms out of the fundamental group.
"""

from dataclasses import dataclass
from itertools import product

from . import fpgroup, fundamental, quandle as qmod
from .errors import BudgetExceeded
from .fpgroup import AbelianInvariants
from .quandle import FiniteQuandle, QuandleHom

DEFAULT_SEARCH_BUDGET = 1_000_000


# ---------------------------------------------------------------------------
# coefficient groups


@dataclass(frozen=True)
class Coeff:
    """A finite coefficient group as a multiplication table.

    Abelian groups built from invariant factors carry labels that are
    exponent tuples; table groups label elements by index.  Identity is
    always element 0 for invariant-factor groups.
    """

    table: tuple
    identity: int
    labels: tuple
    invariants: tuple  # () for non-abelian table groups

    @classmethod
    def from_invariants(cls, factors):
        factors = tuple(int(d) for d in factors)
        if any(d < 1 for d in factors):
            raise ValueError("invariant factors must be positive")
        labels = tuple(product(*(range(d) for d in factors)))
        index = {lab: i for i, lab in enumerate(labels)}
        table = tuple(
            tuple(index[tuple((x + y) % d
                              for x, y, d in zip(a, b, factors))]
                  for b in labels)
            for a in labels)
        return cls(table=table, identity=0, labels=labels,
                   invariants=factors)

    @classmethod
    def from_table(cls, table, identity):
        table = tuple(tuple(row) for row in table)
        k = len(table)
        for row in table:
            if sorted(row) != list(range(k)):
                raise ValueError("rows must be permutations")
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise ValueError("table is not associative")
        if any(table[identity][x] != x or table[x][identity] != x
               for x in range(k)):
            raise ValueError("identity element is wrong")
        return cls(table=table, identity=identity,
                   labels=tuple(range(k)), invariants=())

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def abelian(self) -> bool:
        k = self.order
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(k) for b in range(k))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        for b in range(self.order):
            if self.table[a][b] == self.identity:
                return b
        raise AssertionError("no inverse found")

    def abelian_invariants(self) -> AbelianInvariants:
        if not self.invariants:
            raise ValueError("group was not given by invariant factors")
        return AbelianInvariants(
            free_rank=0, torsion=tuple(d for d in self.invariants if d >= 2))


def graded_coefficients(quandle: FiniteQuandle, coeff):
    """Expand a single Coeff (or a sequence) to one per component."""
    if isinstance(coeff, Coeff):
        return tuple(coeff for _ in quandle.basepoints)
    coeffs = tuple(coeff)
    if len(coeffs) != quandle.component_count:
        raise ValueError("need one coefficient group per component")
    return coeffs


# ---------------------------------------------------------------------------
# integral H2 via the path complex


def h2_integral(quandle: FiniteQuandle):
    """H2 per component, as the first homology of the path complex.

    Boundary matrices: edges to vertices, cells to edges; the quotient
    ker/im is read off Smith normal form invariants.
    """
    complex_ = fundamental.build_complex(quandle)
    src, tgt = complex_.edge_src, complex_.edge_tgt
    out = []
    for comp in range(quandle.component_count):
        edges = [e for e in range(complex_.edge_count)
                 if quandle.grading[src[e]] == comp]
        eindex = {e: k for k, e in enumerate(edges)}
        d1 = {}
        for k, e in enumerate(edges):
            d1[(src[e], k)] = d1.get((src[e], k), 0) - 1
            d1[(tgt[e], k)] = d1.get((tgt[e], k), 0) + 1
        rank_d1 = len([d for d in fpgroup._snf_invariants_sparse(
            d1, quandle.n, len(edges)) if d])
        d2 = {}
        cells = fundamental.component_cells(complex_, comp)
        for col, word in enumerate(cells):
            for signed in word:
                row = eindex[abs(signed) - 1]
                d2[(row, col)] = d2.get((row, col), 0) + (
                    1 if signed > 0 else -1)
        factors = fpgroup._snf_invariants_sparse(d2, len(edges), len(cells))
        rank_d2 = len([d for d in factors if d])
        free_rank = len(edges) - rank_d1 - rank_d2
        torsion = tuple(d for d in factors if d >= 2)
        out.append(AbelianInvariants(free_rank=free_rank, torsion=torsion))
    return out


# ---------------------------------------------------------------------------
# cocycles


@dataclass(frozen=True)
class Cocycle2:
    """A graded 2-cochain: values[a][b] lies in the group of a's
    component, with identity on the diagonal."""

    values: tuple

    def __getitem__(self, pair):
        a, b = pair
        return self.values[a][b]


def trivial_cocycle(quandle: FiniteQuandle, coeffs) -> Cocycle2:
    coeffs = graded_coefficients(quandle, coeffs)
    return Cocycle2(tuple(
        tuple(coeffs[quandle.grading[a]].identity for _ in range(quandle.n))
        for a in range(quandle.n)))


def is_cocycle(f, quandle: FiniteQuandle, coeffs):
    """Exhaustive 2-cocycle check; returns (bool, witness triple)."""
    coeffs = graded_coefficients(quandle, coeffs)
    values = f.values if isinstance(f, Cocycle2) else tuple(
        tuple(row) for row in f)
    n, op, gr = quandle.n, quandle.op, quandle.grading
    for a in range(n):
        if values[a][a] != coeffs[gr[a]].identity:
            return False, (a, a, a)
    for a in range(n):
        lam = coeffs[gr[a]]
        for b in range(n):
            for c in range(n):
                lhs = lam.mul(values[a][b], values[op[a][b]][c])
                rhs = lam.mul(values[a][c], values[op[a][c]][op[b][c]])
                if lhs != rhs:
                    return False, (a, b, c)
    return True, None


def coboundary(quandle: FiniteQuandle, coeffs, g) -> Cocycle2:
    """The cocycle g(a)^-1 g(a*b) obtained by rescaling the trivial one."""
    coeffs = graded_coefficients(quandle, coeffs)
    rows = []
    for a in range(quandle.n):
        lam = coeffs[quandle.grading[a]]
        rows.append(tuple(lam.mul(lam.inv(g[a]), g[quandle.op[a][b]])
                          for b in range(quandle.n)))
    return Cocycle2(tuple(rows))


def are_cohomologous(f, f2, quandle: FiniteQuandle, coeffs,
                     budget: int = DEFAULT_SEARCH_BUDGET):
    """Find a rescaling g with f = g^-1 f2 g, or report absence.

    The relation propagates g along quandle edges, so only the value at
    each component's basepoint is free; trying those finitely many seeds
    is a complete search for any coefficient group.
    """
    coeffs = graded_coefficients(quandle, coeffs)
    va = f.values if isinstance(f, Cocycle2) else f
    vb = f2.values if isinstance(f2, Cocycle2) else f2
    n, op, gr = quandle.n, quandle.op, quandle.grading
    g = [None] * n
    steps = 0
    for comp, q in enumerate(quandle.basepoints):
        lam = coeffs[comp]
        members = quandle.component_elements(comp)
        found = False
        for seed in range(lam.order):
            assignment = {q: seed}
            queue = [q]
            consistent = True
            while queue and consistent:
                a = queue.pop(0)
                for b in range(n):
                    steps += 1
                    if steps > budget:
                        raise BudgetExceeded(steps, "cohomology search")
                    c = op[a][b]
                    # g(a*b) = f2(a,b)^-1 g(a) f(a,b)
                    val = lam.mul(lam.mul(lam.inv(vb[a][b]), assignment[a]),
                                  va[a][b])
                    if c not in assignment:
                        assignment[c] = val
                        queue.append(c)
                    elif assignment[c] != val:
                        consistent = False
                        break
            if consistent and len(assignment) == len(members):
                # verify every pair, not just the BFS tree
                for a in members:
                    for b in range(n):
                        want = lam.mul(
                            lam.mul(lam.inv(assignment[a]), vb[a][b]),
                            assignment[op[a][b]])
                        if want != va[a][b]:
                            consistent = False
                            break
                    if not consistent:
                        break
            else:
                consistent = False
            if consistent:
                for a in members:
                    g[a] = assignment[a]
                found = True
                break
        if not found:
            return None
    return tuple(g)


def enumerate_cocycles(quandle: FiniteQuandle, coeffs,
                       budget: int = 1 << 20):
    """Brute-force list of all 2-cocycles (off-diagonal value tuples).

    Only usable for tiny quandles; the trilogy tests lean on it as the
    independent route to |H^2|.
    """
    coeffs = graded_coefficients(quandle, coeffs)
    n, gr = quandle.n, quandle.grading
    slots = [(a, b) for a in range(n) for b in range(n) if a != b]
    count = 1
    for (a, _) in slots:
        count *= coeffs[gr[a]].order
        if count > budget:
            raise BudgetExceeded(count, "cocycle enumeration")
    out = []
    for choice in product(*(range(coeffs[gr[a]].order) for (a, _) in slots)):
        values = [[coeffs[gr[a]].identity] * n for a in range(n)]
        for (a, b), v in zip(slots, choice):
            values[a][b] = v
        ok, _ = is_cocycle(values, quandle, coeffs)
        if ok:
            out.append(Cocycle2(tuple(tuple(r) for r in values)))
    return out


def cohomology_classes(quandle: FiniteQuandle, coeffs,
                       budget: int = 1 << 20):
    """Representatives of H^2 classes from the brute-force cocycle list."""
    cocycles = enumerate_cocycles(quandle, coeffs, budget=budget)
    reps = []
    for f in cocycles:
        if all(are_cohomologous(f, r, quandle, coeffs) is None
               for r in reps):
            reps.append(f)
    return reps, cocycles


def h2_with_coefficients(quandle: FiniteQuandle, coeffs,
                         budget: int = fpgroup.DEFAULT_COSET_BUDGET):
    """Class count per component, via Hom(pi_1 abelianized, Lambda)."""
    coeffs = graded_coefficients(quandle, coeffs)
    out = []
    for comp, q in enumerate(quandle.basepoints):
        lam = coeffs[comp]
        if not lam.invariants:
            raise ValueError("counting needs abelian invariant-factor groups")
        pres = fundamental.pi1_presentation(quandle, q)
        inv = fpgroup.abelian_invariants(pres)
        count = fpgroup.count_homs_to_abelian(inv, lam.abelian_invariants())
        out.append((inv, count))
    return out


# ---------------------------------------------------------------------------
# extensions


@dataclass(frozen=True)
class Extension:
    """A principal graded covering Lambda acting on a total quandle.

    action[i][k] is the permutation of total elements by the k-th
    element of the i-th coefficient group (identity off component i's
    fibres).
    """

    total: FiniteQuandle
    projection: QuandleHom
    coeffs: tuple
    action: tuple

    def act(self, component: int, lam_elt: int, element: int) -> int:
        return self.action[component][lam_elt][element]


def check_extension(ext: Extension):
    """Verify axioms: equivariant free transitive fibre actions over a
    covering projection.  Returns (bool, reason)."""
    ok, wit = qmod.is_covering(ext.projection)
    if not ok:
        return False, f"projection is not a covering: {wit}"
    total, base = ext.total, ext.projection.target
    for i, lam in enumerate(ext.coeffs):
        fibres = {}
        for x in range(total.n):
            q = ext.projection.map[x]
            if base.grading[q] == i:
                fibres.setdefault(q, []).append(x)
        for k in range(lam.order):
            perm = ext.action[i][k]
            for x in range(total.n):
                q = ext.projection.map[x]
                if base.grading[q] != i:
                    if perm[x] != x:
                        return False, "action moves a foreign fibre"
                elif ext.projection.map[perm[x]] != q:
                    return False, "action leaves its fibre"
        for k in range(lam.order):
            for m in range(lam.order):
                km = lam.mul(k, m)
                for x in range(total.n):
                    if ext.action[i][k][ext.action[i][m][x]] != \
                            ext.action[i][km][x]:
                        return False, "action is not a homomorphism"
        for q, fib in fibres.items():
            hit = {ext.action[i][k][fib[0]] for k in range(lam.order)}
            if len(hit) != lam.order or hit != set(fib):
                return False, f"action not free/transitive on fibre of {q}"
        for k in range(lam.order):
            perm = ext.action[i][k]
            for x in range(total.n):
                for y in range(total.n):
                    if total.op[perm[x]][y] != perm[total.op[x][y]]:
                        return False, "(E1) left equivariance fails"
                    if total.op[x][perm[y]] != total.op[x][y]:
                        return False, "(E1) right invariance fails"
    return True, None


def extension_from_cocycle(quandle: FiniteQuandle, coeffs, f) -> Extension:
    """The quandle Lambda x_f Q with (u,a)*(v,b) = (u f(a,b), a*b)."""
    coeffs = graded_coefficients(quandle, coeffs)
    ok, wit = is_cocycle(f, quandle, coeffs)
    if not ok:
        raise ValueError(f"not a cocycle, witness {wit}")
    values = f.values if isinstance(f, Cocycle2) else f
    n, gr = quandle.n, quandle.grading
    elements = [(u, a) for a in range(n)
                for u in range(coeffs[gr[a]].order)]
    index = {e: i for i, e in enumerate(elements)}
    table = []
    for (u, a) in elements:
        lam = coeffs[gr[a]]
        row = []
        for (v, b) in elements:
            row.append(index[(lam.mul(u, values[a][b]), quandle.op[a][b])])
        table.append(row)
    grading = tuple(gr[a] for (_, a) in elements)
    basepoints = []
    for i, q in enumerate(quandle.basepoints):
        basepoints.append(index[(coeffs[i].identity, q)])
    total = qmod.validate(table, grading=grading,
                          basepoints=tuple(basepoints))
    projection = QuandleHom(total, quandle,
                            tuple(a for (_, a) in elements))
    action = []
    for i, lam in enumerate(coeffs):
        perms = []
        for k in range(lam.order):
            perm = []
            for (u, a) in elements:
                if gr[a] == i:
                    perm.append(index[(lam.mul(k, u), a)])
                else:
                    perm.append(index[(u, a)])
            perms.append(tuple(perm))
        action.append(tuple(perms))
    return Extension(total=total, projection=projection,
                     coeffs=coeffs, action=tuple(action))


def cocycle_from_extension(ext: Extension, section=None) -> Cocycle2:
    """Read the cocycle off a section: s(a)*s(b) = f(a,b) s(a*b)."""
    base = ext.projection.target
    if section is None:
        section = tuple(min(ext.projection.fibre(a)) for a in range(base.n))
    else:
        section = tuple(section)
        for a in range(base.n):
            if ext.projection.map[section[a]] != a:
                raise ValueError("not a section of the projection")
    rows = []
    for a in range(base.n):
        i = base.grading[a]
        lam = ext.coeffs[i]
        row = []
        for b in range(base.n):
            t = ext.total.op[section[a]][section[b]]
            target = section[base.op[a][b]]
            found = None
            for k in range(lam.order):
                if ext.action[i][k][target] == t:
                    found = k
                    break
            if found is None:
                raise AssertionError("fibre action misses the product")
            row.append(found)
        rows.append(tuple(row))
    return Cocycle2(tuple(rows))


# ---------------------------------------------------------------------------
# the correspondence with Hom(pi_1, Lambda)


def _canonical_cosets(table, endpoints):
    """Minimal coset over each base element of one component."""
    canon = {}
    for c in range(table.coset_count):
        canon.setdefault(endpoints[c], c)
    return canon


def _deck_element_taking(deck, target: int, source: int):
    """Index of the deck element whose permutation sends source to
    target; unique because the action is free."""
    for k, perm in enumerate(deck.elements):
        if perm[source] == target:
            return k
    raise AssertionError("deck action is not transitive on the fibre")


def cocycle_from_hom(quandle: FiniteQuandle, coeffs, homs,
                     budget: int = fpgroup.DEFAULT_COSET_BUDGET) -> Cocycle2:
    """Cocycle of the extension classified by homs: pi_1 -> Lambda.

    homs[i] maps deck-element indices of component i (in the order of
    universal_cover(...).deck[i].elements) to Lambda_i elements.  The
    value f(a,b) is the image of the deck element comparing the
    canonical path to a*b with the path through a and b.
    """
    coeffs = graded_coefficients(quandle, coeffs)
    cover = fundamental.universal_cover(quandle, budget=budget)
    n, gr = quandle.n, quandle.grading
    rows = []
    for a in range(n):
        i = gr[a]
        table, ends = cover.tables[i], cover.endpoints[i]
        canon = _canonical_cosets(table, ends)
        row = []
        for b in range(n):
            c = table.trace(canon[a], (-(a + 1), b + 1))
            k = _deck_element_taking(cover.deck[i],
                                     c, canon[quandle.op[a][b]])
            row.append(homs[i][k])
        rows.append(tuple(row))
    f = Cocycle2(tuple(rows))
    ok, wit = is_cocycle(f, quandle, coeffs)
    if not ok:
        raise ValueError(f"hom was not relator-consistent, witness {wit}")
    return f


def extension_from_hom(quandle: FiniteQuandle, coeffs, homs,
                       budget: int = fpgroup.DEFAULT_COSET_BUDGET
                       ) -> Extension:
    """Extension classified by per-component homomorphisms pi_1 -> Lambda."""
    coeffs = graded_coefficients(quandle, coeffs)
    return extension_from_cocycle(
        quandle, coeffs, cocycle_from_hom(quandle, coeffs, homs,
                                          budget=budget))


def hom_from_extension(ext: Extension,
                       budget: int = fpgroup.DEFAULT_COSET_BUDGET):
    """Monodromy of an extension as per-component maps pi_1 -> Lambda.

    Returns one list per component, aligned with the deck-element order
    of the base's universal cover; entry k is the Lambda element by
    which the k-th pi_1 element shifts the basepoint lift.
    """
    base = ext.projection.target
    out = []
    for i, q in enumerate(base.basepoints):
        lam = ext.coeffs[i]
        table, ends = fundamental.adj0_enumeration(base, q, budget=budget)
        stabilizer = [c for c in range(table.coset_count) if ends[c] == q]
        lift = min(ext.projection.fibre(q))
        images = []
        for c in stabilizer:
            word = fundamental._adjusted_word(table, q, c)
            moved = fundamental.right_action_on_cover(ext.projection,
                                                      lift, word)
            found = None
            for k in range(lam.order):
                if ext.action[i][k][lift] == moved:
                    found = k
                    break
            if found is None:
                raise AssertionError("monodromy left the fibre")
            images.append(found)
        out.append(images)
    return out


def are_equivalent_extensions(e1: Extension, e2: Extension,
                              budget: int = DEFAULT_SEARCH_BUDGET):
    """Search for a projection-respecting equivariant isomorphism.

    Fixing the image of one basepoint lift per component determines the
    whole map by equivariant propagation, so the search is linear in
    |Lambda| per component.  Returns the mapping tuple or None.
    """
    base = e1.projection.target
    if e2.projection.target.op != base.op:
        raise ValueError("extensions must share their base")
    if tuple(c.table for c in e1.coeffs) != tuple(c.table
                                                  for c in e2.coeffs):
        raise ValueError("extensions must share their coefficient groups")
    if e1.total.n != e2.total.n:
        return None
    phi = [None] * e1.total.n
    steps = 0
    for i, q in enumerate(base.basepoints):
        lam = e1.coeffs[i]
        members = base.component_elements(i)
        s1 = min(e1.projection.fibre(q))
        lift2 = {}  # base element -> one chosen e2 preimage
        for x in range(e2.total.n):
            lift2.setdefault(e2.projection.map[x], x)
        lift1 = {}
        for x in range(e1.total.n):
            lift1.setdefault(e1.projection.map[x], x)
        matched = False
        for mu in e2.projection.fibre(q):
            assign = {q: (s1, mu)}  # base elt -> (anchor in e1, image)
            queue = [q]
            consistent = True
            while queue and consistent:
                a = queue.pop(0)
                x1, x2 = assign[a]
                for b in range(base.n):
                    steps += 1
                    if steps > budget:
                        raise BudgetExceeded(steps, "equivalence search")
                    c = base.op[a][b]
                    y1 = e1.total.op[x1][lift1[b]]
                    y2 = e2.total.op[x2][lift2[b]]
                    if c not in assign:
                        assign[c] = (y1, y2)
                        queue.append(c)
                    else:
                        z1, z2 = assign[c]
                        # compare via the free Lambda shift from z1 to y1
                        k = None
                        for kk in range(lam.order):
                            if e1.action[i][kk][z1] == y1:
                                k = kk
                                break
                        if k is None or e2.action[i][k][z2] != y2:
                            consistent = False
                            break
            if consistent and len(assign) == len(members):
                for a in members:
                    x1, x2 = assign[a]
                    for k in range(lam.order):
                        phi[e1.action[i][k][x1]] = e2.action[i][k][x2]
                matched = True
                break
        if not matched:
            return None
    mapping = tuple(phi)
    # final global verification of the candidate
    if any(v is None for v in mapping):
        return None
    for x in range(e1.total.n):
        if e2.projection.map[mapping[x]] != e1.projection.map[x]:
            return None
        for y in range(e1.total.n):
            if mapping[e1.total.op[x][y]] != \
                    e2.total.op[mapping[x]][mapping[y]]:
                return None
    return mapping


def pullback_cocycle(f_hom: QuandleHom, f, coeffs):
    """Pull a cocycle on the target back along a homomorphism.

    Returns (values, coefficient groups) regraded over the source's
    components via the induced map on components.
    """
    target = f_hom.target
    source = f_hom.source
    coeffs = graded_coefficients(target, coeffs)
    values = f.values if isinstance(f, Cocycle2) else f
    rows = tuple(tuple(values[f_hom.map[x]][f_hom.map[y]]
                       for y in range(source.n))
                 for x in range(source.n))
    comp_map = [None] * source.component_count
    for x in range(source.n):
        comp_map[source.grading[x]] = target.grading[f_hom.map[x]]
    new_coeffs = tuple(coeffs[comp_map[i]]
                       for i in range(source.component_count))
    return Cocycle2(rows), new_coeffs
