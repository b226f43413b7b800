"""Finitely presented groups: adjoint presentations, HLT coset
enumeration, exact Smith normal form, and abelian invariants.

Words are tuples of signed 1-based generator numbers: letter +k is
generator k-1, letter -k its inverse.  Words are not reduced on
construction; relator scans need the raw letters.
"""

from dataclasses import dataclass
from math import gcd

from .errors import BudgetExceeded
from .permgroup import FiniteGroup

DEFAULT_COSET_BUDGET = 1_000_000
DEFAULT_HOM_BUDGET = 1 << 20

Word = tuple


def normalize(word) -> Word:
    """Freely reduce a word (cancel adjacent inverse pairs)."""
    out = []
    for letter in word:
        if letter == 0:
            raise ValueError("0 is not a valid letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def inverse_word(word) -> Word:
    return tuple(-letter for letter in reversed(word))


def word_degree(word) -> int:
    """Exponent sum of all letters (the degree map on adjoint words)."""
    return sum(1 if letter > 0 else -1 for letter in word)


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple

    def __post_init__(self):
        for r in self.relators:
            for letter in r:
                if letter == 0 or abs(letter) > self.generator_count:
                    raise ValueError(f"letter {letter} out of range")


def adjoint_presentation(quandle) -> Presentation:
    """Presentation of the adjoint group of a finite quandle.

    One generator per element; one relator per ordered pair (a, b) with
    a != b, forcing conjugation by b to send a to a*b.  The diagonal
    pair reduces to the empty word and is omitted; duplicate relators
    after free reduction are removed.
    """
    n = quandle.n
    relators = []
    seen = set()
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            w = normalize((-(b + 1), a + 1, b + 1, -(quandle.op[a][b] + 1)))
            if w and w not in seen:
                seen.add(w)
                relators.append(w)
    return Presentation(generator_count=n, relators=tuple(relators))


@dataclass(frozen=True)
class CosetTable:
    """Complete collapsed coset table from a terminated enumeration.

    action[g] is the permutation of cosets induced by generator g,
    action_inv[g] its inverse; coset 0 is the subgroup coset.
    representative_word[c] is a Schreier word taking coset 0 to c.
    """

    generator_count: int
    coset_count: int
    action: tuple
    action_inv: tuple
    representative_word: tuple

    def apply_letter(self, coset: int, letter: int) -> int:
        if letter > 0:
            return self.action[letter - 1][coset]
        return self.action_inv[-letter - 1][coset]

    def trace(self, coset: int, word) -> int:
        for letter in word:
            coset = self.apply_letter(coset, letter)
        return coset


def todd_coxeter(presentation: Presentation, subgroup_generators=(),
                 budget: int = DEFAULT_COSET_BUDGET) -> CosetTable:
    """HLT coset enumeration with immediate coincidence processing.

    Enumerates the cosets of the subgroup generated by the given words.
    Cosets are numbered in definition order and relators scanned in a
    fixed order, so the result is deterministic.  Raises BudgetExceeded
    with the live-coset count if the table grows past the budget.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    ngens = presentation.generator_count
    ncols = 2 * ngens

    def col(letter):
        g = abs(letter) - 1
        return 2 * g if letter > 0 else 2 * g + 1

    def inv_col(c):
        return c ^ 1

    relator_cols = [tuple(col(letter) for letter in r)
                    for r in presentation.relators]
    subgroup_cols = [tuple(col(letter) for letter in w)
                     for w in subgroup_generators]

    table = [[None] * ncols]
    parent = [0]
    live = 1

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def define(alpha, x):
        nonlocal live
        if live >= budget:
            raise BudgetExceeded(live, "coset enumeration")
        beta = len(table)
        table.append([None] * ncols)
        parent.append(beta)
        live += 1
        table[alpha][x] = beta
        table[beta][inv_col(x)] = alpha
        return beta

    def merge(a, b, queue):
        nonlocal live
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        live -= 1
        queue.append(b)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        while queue:
            gamma = queue.pop(0)
            for x in range(ncols):
                delta = table[gamma][x]
                if delta is None:
                    continue
                table[delta][inv_col(x)] = None
                mu, nu = rep(gamma), rep(delta)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][inv_col(x)] is not None:
                    merge(mu, table[nu][inv_col(x)], queue)
                else:
                    table[mu][x] = nu
                    table[nu][inv_col(x)] = mu

    def scan_and_fill(alpha, cols):
        if not cols:
            return
        f, i = alpha, 0
        b, j = alpha, len(cols) - 1
        while True:
            while i <= j and table[f][cols[i]] is not None:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv_col(cols[j])] is not None:
                b = table[b][inv_col(cols[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][cols[i]] = b
                table[b][inv_col(cols[i])] = f
                return
            define(f, cols[i])

    for w in subgroup_cols:
        scan_and_fill(0, w)
    alpha = 0
    while alpha < len(table):
        if rep(alpha) != alpha:
            alpha += 1
            continue
        for r in relator_cols:
            scan_and_fill(alpha, r)
            if rep(alpha) != alpha:
                break
        if rep(alpha) == alpha:
            for x in range(ncols):
                if table[alpha][x] is None:
                    define(alpha, x)
        alpha += 1

    # compact to live cosets, keeping definition order
    old_live = [c for c in range(len(table)) if rep(c) == c]
    renumber = {c: i for i, c in enumerate(old_live)}
    n = len(old_live)
    action = [[None] * n for _ in range(ngens)]
    action_inv = [[None] * n for _ in range(ngens)]
    for c in old_live:
        i = renumber[c]
        for g in range(ngens):
            action[g][i] = renumber[rep(table[c][2 * g])]
            action_inv[g][i] = renumber[rep(table[c][2 * g + 1])]

    # Schreier representative words by BFS over generators in order
    reps = [None] * n
    reps[0] = ()
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for g in range(ngens):
                for letter, d in ((g + 1, action[g][c]),
                                  (-(g + 1), action_inv[g][c])):
                    if reps[d] is None:
                        reps[d] = reps[c] + (letter,)
                        nxt.append(d)
        frontier = nxt
    if any(r is None for r in reps):
        raise AssertionError("coset table is not transitive")

    return CosetTable(generator_count=ngens, coset_count=n,
                      action=tuple(tuple(row) for row in action),
                      action_inv=tuple(tuple(row) for row in action_inv),
                      representative_word=tuple(reps))


# ---------------------------------------------------------------------------
# Smith normal form, exact over the integers


def smith_normal_form(matrix):
    """Smith normal form S = U*M*V with unimodular U, V.

    S is diagonal with d1 | d2 | ..., all entries >= 0.  Exact big-int
    arithmetic; pivots are chosen by minimal absolute value.
    """
    s = [list(row) for row in matrix]
    rows = len(s)
    cols = len(s[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        s[i] = [a - q * b for a, b in zip(s[i], s[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in s:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def negate_row(i):
        s[i] = [-a for a in s[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while t < min(rows, cols):
        # pivot: nonzero entry of minimal absolute value in the block
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                a = abs(s[i][j])
                if a and (best is None or a < best):
                    best, pivot = a, (i, j)
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            if s[t][t] < 0:
                negate_row(t)
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    row_op(i, t, q)
                    if s[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    col_op(j, t, q)
                    if s[t][j]:
                        dirty = True
            if not dirty:
                # force divisibility of the remaining block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if s[i][j] % s[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_op(t, bad, -1)  # pivot row absorbs the offending row
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    a = abs(s[i][j])
                    if a and (best is None or a < best):
                        best, pivot = a, (i, j)
        t += 1
    return s, u, v


def _snf_invariants_sparse(entries, nrows, ncols):
    """Invariant factors (nonzero, d1 | d2 | ...) of a sparse matrix.

    entries is a dict (i, j) -> value.  Unit pivots are eliminated with
    cheap sparse sweeps; whatever remains goes through the dense SNF.
    Boundary matrices are nearly all +-1 so the dense leftover is tiny.
    """
    row_cols = {}
    col_rows = {}
    for (i, j), val in entries.items():
        if val:
            row_cols.setdefault(i, {})[j] = val
            col_rows.setdefault(j, set()).add(i)
    ones = 0
    while True:
        pivot = None
        for i in sorted(row_cols):
            for j, val in row_cols[i].items():
                if abs(val) == 1:
                    pivot = (i, j, val)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj, pval = pivot
        prow = dict(row_cols[pi])
        for i in list(col_rows.get(pj, ())):
            if i == pi:
                continue
            q = row_cols[i][pj] * pval  # pval in {1,-1}: row_i -= q * prow
            target = row_cols[i]
            for j, val in prow.items():
                newval = target.get(j, 0) - q * val
                if newval:
                    target[j] = newval
                    col_rows.setdefault(j, set()).add(i)
                elif j in target:
                    del target[j]
                    col_rows[j].discard(i)
            if not target:
                del row_cols[i]
        for j in prow:
            col_rows[j].discard(pi)
            if not col_rows[j]:
                del col_rows[j]
        del row_cols[pi]
        for i in list(col_rows.get(pj, ())):
            del row_cols[i][pj]
            if not row_cols[i]:
                del row_cols[i]
        col_rows.pop(pj, None)
        ones += 1
    factors = [1] * ones
    if row_cols:
        rows_left = sorted(row_cols)
        cols_left = sorted({j for cols in row_cols.values() for j in cols})
        cindex = {j: k for k, j in enumerate(cols_left)}
        dense = [[0] * len(cols_left) for _ in rows_left]
        for k, i in enumerate(rows_left):
            for j, val in row_cols[i].items():
                dense[k][cindex[j]] = val
        s, _, _ = smith_normal_form(dense)
        factors.extend(s[k][k] for k in range(min(len(s), len(s[0]) if s else 0))
                       if s[k][k])
    return factors


@dataclass(frozen=True)
class AbelianInvariants:
    """Finitely generated abelian group: free rank plus torsion chain."""

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion entries must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion chain must be divisible")

    @property
    def order(self):
        """Group order, or None when the free rank is positive."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n


def invariants_from_factors(ngens: int, factors) -> AbelianInvariants:
    nonzero = [d for d in factors if d]
    return AbelianInvariants(free_rank=ngens - len(nonzero),
                             torsion=tuple(d for d in nonzero if d >= 2))


def abelian_invariants(presentation: Presentation) -> AbelianInvariants:
    """Abelianization of a presented group via SNF of the relator matrix."""
    entries = {}
    for i, r in enumerate(presentation.relators):
        for letter in r:
            j = abs(letter) - 1
            entries[(i, j)] = entries.get((i, j), 0) + (1 if letter > 0 else -1)
    factors = _snf_invariants_sparse(entries, len(presentation.relators),
                                     presentation.generator_count)
    return invariants_from_factors(presentation.generator_count, factors)


def count_homs_to_abelian(src: AbelianInvariants,
                          target: AbelianInvariants) -> int:
    """|Hom(src, target)| for a finite abelian target.

    Equals |target|^rank * prod over source torsion d of |target[d]|,
    where |target[d]| multiplies gcd(d, e) over target factors e.
    """
    if target.free_rank:
        raise ValueError("target must be finite")
    total = target.order ** src.free_rank
    for d in src.torsion:
        for e in target.torsion:
            total *= gcd(d, e)
    return total


def enumerate_homs(presentation: Presentation, target: FiniteGroup,
                   budget: int = DEFAULT_HOM_BUDGET):
    """All homomorphisms into a finite group, as element-index tuples.

    Brute force over generator images in lexicographic order of element
    indices; a relator check filters non-homomorphisms.
    """
    from itertools import product

    ngens = presentation.generator_count
    if target.order ** ngens > budget:
        raise BudgetExceeded(target.order ** ngens, "homomorphism search")
    inv = [target.inv_idx(i) for i in range(target.order)]
    out = []
    for images in product(range(target.order), repeat=ngens):
        ok = True
        for r in presentation.relators:
            acc = target.identity_index
            for letter in r:
                g = images[abs(letter) - 1]
                acc = target.mul_idx(acc, g if letter > 0 else inv[g])
            if acc != target.identity_index:
                ok = False
                break
        if ok:
            out.append(images)
    return out
