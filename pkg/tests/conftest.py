import pytest

from sldual.core import Semilattice, semilattices_of_size, validate_semilattice


def mask(*indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def lattice_from_covers(labels, covers, top):
    """Independent cover-to-meet derivation used to build fixtures."""
    n = len(labels)
    idx = {s: i for i, s in enumerate(labels)}
    leq = [[i == j for j in range(n)] for i in range(n)]
    for x, y in covers:
        leq[idx[x]][idx[y]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            lower = [x for x in range(n) if leq[x][a] and leq[x][b]]
            (best,) = [x for x in lower if all(leq[y][x] for y in lower)]
            table[a][b] = best
    return validate_semilattice(table, idx[top], labels)


def chain(n):
    table = [[min(a, b) for b in range(n)] for a in range(n)]
    return validate_semilattice(table, n - 1)


L_COVERS = [
    ("0", "a"), ("0", "b"), ("0", "c"),
    ("a", "e"), ("b", "e"), ("c", "e"), ("c", "d"),
    ("e", "1"), ("d", "1"),
]


@pytest.fixture(scope="session")
def L() -> Semilattice:
    """A non-distributive 7-element lattice whose dual space has 4 points."""
    return lattice_from_covers(["0", "a", "b", "c", "d", "e", "1"], L_COVERS, "1")


def el(S: Semilattice, name: str) -> int:
    return S.labels.index(name)


@pytest.fixture(scope="session")
def diamond() -> Semilattice:
    return lattice_from_covers(
        ["0", "x", "y", "1"], [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")], "1"
    )


@pytest.fixture(scope="session")
def small():
    """All semilattices up to isomorphism, keyed by size, for n <= 5."""
    return {n: tuple(semilattices_of_size(n)) for n in range(1, 6)}


@pytest.fixture(scope="session")
def small6(small):
    out = dict(small)
    out[6] = tuple(semilattices_of_size(6))
    return out
