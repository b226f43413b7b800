"""Shared corpus of quandles used by the property and acceptance suites."""

import random

import pytest

from quandelier import permgroup, quandle as qmod


def symmetric_group(n):
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    return permgroup.closure(gens)


def cyclic_group(n):
    return permgroup.closure([tuple((i + 1) % n for i in range(n))],
                             degree=n)


def cyclic_table(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def transposition_quandle(n):
    """Conjugation quandle on the transpositions of S_n."""
    seed = tuple([1, 0] + list(range(2, n)))
    return qmod.conj_class(symmetric_group(n), seed)


def constructor_corpus():
    """Named quandles from every constructor, sizes <= 12."""
    out = []
    for n in range(1, 13):
        out.append((f"dihedral({n})", qmod.dihedral(n)))
    for n in (1, 2, 3, 6):
        out.append((f"trivial({n})", qmod.trivial(n)))
    for m, n in ((1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 4)):
        out.append((f"q_mn({m},{n})", qmod.q_mn(m, n)))
    out.append(("conj(S3,transposition)", transposition_quandle(3)))
    out.append(("conj(S4,transposition)", transposition_quandle(4)))
    out.append(("conj(S5,transposition)", transposition_quandle(5)))
    s4 = symmetric_group(4)
    out.append(("conj(S4,3-cycle)", qmod.conj_class(s4, (1, 2, 0, 3))))
    out.append(("conj(S4,4-cycle)", qmod.conj_class(s4, (1, 2, 3, 0))))
    for n in (3, 4, 5, 6):
        out.append((f"core(Z{n})", qmod.core(cyclic_group(n))))
    out.append(("core(S3)", qmod.core(symmetric_group(3))))
    out.append(("alexander(Z5,x2)",
                qmod.alexander(cyclic_table(5),
                               [(2 * a) % 5 for a in range(5)])))
    out.append(("alexander(Z7,x3)",
                qmod.alexander(cyclic_table(7),
                               [(3 * a) % 7 for a in range(7)])))
    out.append(("alexander(Z4,x3)",
                qmod.alexander(cyclic_table(4),
                               [(3 * a) % 4 for a in range(4)])))
    return out


def random_quandle(rng, sizes=(1, 2, 3, 4, 5, 6), attempts=5000):
    """One random valid table by rejection.

    Q1/Q2 are enforced structurally (each column is a random
    permutation fixing its own index); candidates are rejected until Q3
    holds.  Sizes whose attempt budget runs out are redrawn, so large
    sizes appear only as often as rejection allows.
    """
    while True:
        n = rng.choice(sizes)
        for _ in range(attempts):
            cols = []
            for b in range(n):
                rest = [a for a in range(n) if a != b]
                images = rest[:]
                rng.shuffle(images)
                col = [0] * n
                col[b] = b
                for a, v in zip(rest, images):
                    col[a] = v
                cols.append(col)
            op = [[cols[b][a] for b in range(n)] for a in range(n)]
            ok = True
            for a in range(n):
                for b in range(n):
                    ab = op[a][b]
                    for c in range(n):
                        if op[ab][c] != op[op[a][c]][op[b][c]]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                return qmod.validate(op)


def random_corpus(count=50, seed=20260824):
    rng = random.Random(seed)
    return [(f"random[{i}]", random_quandle(rng)) for i in range(count)]


@pytest.fixture(scope="session")
def corpus():
    return constructor_corpus() + random_corpus()
