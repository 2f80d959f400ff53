"""Built-in constructors.

Quantum matrix algebras with their quantum minors; Cartan matrices with
symmetrizers; predecessor/successor combinatorics of reduced words; and
the closed-form exchange matrices for quantum Schubert cells and double
Bruhat cells.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import PresentationError
from .ore import CGLPresentation, NCPoly
from .scalars import LaurentScalar


# -- quantum matrices --------------------------------------------------------


@dataclass(frozen=True)
class QuantumMatrixAlgebra:
    """R_q[M_{m x n}] with generators t_ij listed row by row."""
    m: int
    n: int
    presentation: CGLPresentation
    names: tuple[str, ...]

    def gen_index(self, i: int, j: int) -> int:
        """0-based PBW index of t_ij (i, j are 1-based)."""
        return (i - 1) * self.n + j - 1

    def generator(self, i: int, j: int) -> NCPoly:
        return NCPoly.generator(self.m * self.n, self.gen_index(i, j))


def quantum_matrix_names(m: int, n: int) -> tuple[str, ...]:
    wide = m > 9 or n > 9
    return tuple(("t%d_%d" if wide else "t%d%d") % (i, j)
                 for i in range(1, m + 1) for j in range(1, n + 1))


def quantum_matrices(m: int, n: int) -> QuantumMatrixAlgebra:
    """The algebra of quantum m x n matrices.

    Generator (i-1)n + j is the matrix entry t_ij.  The torus (K^x)^{m+n}
    rescales rows and columns; t_ij has weight e_i - e_{m+j}, and the k-th
    torus element carries q^{-1} in slot i and q in slot m+j, so its own
    eigenvalue is q^{-2}.
    """
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    size = m * n
    rank = m + n
    weights = []
    h = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            chi = [0] * rank
            chi[i - 1] = 1
            chi[m + j - 1] = -1
            weights.append(tuple(chi))
            vec = [0] * rank
            vec[i - 1] = -1
            vec[m + j - 1] = 1
            h.append(tuple(vec))
    minus_qdiff = LaurentScalar({2: Fraction(-1), -2: Fraction(1)})  # -(q - q^-1)
    delta = {}
    for i2 in range(1, m + 1):
        for j2 in range(1, n + 1):
            k = (i2 - 1) * n + j2 - 1
            for i1 in range(1, i2):
                for j1 in range(1, j2):
                    l = (i1 - 1) * n + j1 - 1
                    exp = [0] * size
                    exp[(i1 - 1) * n + j2 - 1] += 1
                    exp[(i2 - 1) * n + j1 - 1] += 1
                    delta[(k, l)] = NCPoly.monomial(size, exp, minus_qdiff)
    pres = CGLPresentation(weights, h, delta)
    return QuantumMatrixAlgebra(m, n, pres, quantum_matrix_names(m, n))


def quantum_minor(qm: QuantumMatrixAlgebra, rows: Sequence[int], cols: Sequence[int]) -> NCPoly:
    """The quantum minor on the given 1-based row and column sets,

        sum over permutations of (-q)^{inversions} t_{i_1 j_s(1)} ... ,

    already in PBW normal form since row indices increase along each term.
    """
    rows = sorted(rows)
    cols = sorted(cols)
    if len(rows) != len(cols):
        raise ValueError("row and column sets must have equal size")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("row and column sets must not repeat indices")
    if rows and not (1 <= rows[0] and rows[-1] <= qm.m):
        raise ValueError("row index out of range")
    if cols and not (1 <= cols[0] and cols[-1] <= qm.n):
        raise ValueError("column index out of range")
    size = qm.m * qm.n
    terms = {}
    for sigma in permutations(range(len(cols))):
        inv = sum(1 for a in range(len(sigma)) for b in range(a + 1, len(sigma))
                  if sigma[a] > sigma[b])
        exp = [0] * size
        for a, i in enumerate(rows):
            exp[qm.gen_index(i, cols[sigma[a]])] += 1
        terms[tuple(exp)] = LaurentScalar.q_power(inv, Fraction(-1) ** inv)
    return NCPoly(size, terms)


def solid_minor_positions(m: int, n: int, i: int, j: int) -> tuple[list[int], list[int]]:
    """Row/column windows of the solid minor ending at position (i, j)."""
    size = min(i, j)
    return list(range(i - size + 1, i + 1)), list(range(j - size + 1, j + 1))


# -- Cartan data --------------------------------------------------------------


@dataclass(frozen=True)
class CartanData:
    """A Cartan matrix with its symmetrizers.

    Convention: c[i][j] = 2 <a_i, a_j> / <a_i, a_i>, with d_i = <a_i, a_i>/2
    relatively prime positive integers making (d_i c_ij) symmetric.
    """
    r: int
    c: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    def __post_init__(self):
        for i in range(self.r):
            if self.c[i][i] != 2:
                raise ValueError("Cartan diagonal must be 2")
            for j in range(self.r):
                if i != j and self.c[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if self.d[i] * self.c[i][j] != self.d[j] * self.c[j][i]:
                    raise ValueError("symmetrizers do not symmetrize the matrix")

    @classmethod
    def from_type(cls, type_name: str) -> "CartanData":
        return cartan_data(type_name)


def _chain(r: int) -> list[list[int]]:
    c = [[0] * r for _ in range(r)]
    for i in range(r):
        c[i][i] = 2
        if i + 1 < r:
            c[i][i + 1] = -1
            c[i + 1][i] = -1
    return c


def cartan_data(type_name: str) -> CartanData:
    """Finite-type Cartan data from a label like "A2", "B3", "G2"."""
    name = type_name.strip().upper()
    if len(name) < 2 or name[0] not in "ABCDEFG":
        raise ValueError("unrecognized Cartan type %r" % type_name)
    family, rank_text = name[0], name[1:]
    r = int(rank_text)
    if r < 1:
        raise ValueError("rank must be positive")
    c = _chain(r)
    d = [1] * r
    if family == "A":
        pass
    elif family == "B":
        if r < 2:
            raise ValueError("type B needs rank >= 2")
        c[r - 1][r - 2] = -2  # short last root
        d = [2] * (r - 1) + [1]
    elif family == "C":
        if r < 2:
            raise ValueError("type C needs rank >= 2")
        c[r - 2][r - 1] = -2  # long last root
        d = [1] * (r - 1) + [2]
    elif family == "D":
        if r < 3:
            raise ValueError("type D needs rank >= 3")
        c = _chain(r - 1)
        for row in c:
            row.append(0)
        c.append([0] * r)
        c[r - 1][r - 1] = 2
        c[r - 3][r - 1] = -1
        c[r - 1][r - 3] = -1
        c[r - 2][r - 1] = 0
        c[r - 1][r - 2] = 0
    elif family == "E":
        if r not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        # Bourbaki numbering: node 2 hangs off node 4 of the A-chain
        # 1-3-4-5-...-r.
        chain = [1, 3] + list(range(4, r + 1))
        c = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
        for a, b in zip(chain, chain[1:]):
            c[a - 1][b - 1] = c[b - 1][a - 1] = -1
        c[2 - 1][4 - 1] = c[4 - 1][2 - 1] = -1
    elif family == "F":
        if r != 4:
            raise ValueError("type F needs rank 4")
        c = _chain(4)
        c[2][1] = -2  # the short pair's row carries the double bond
        d = [2, 2, 1, 1]
    elif family == "G":
        if r != 2:
            raise ValueError("type G needs rank 2")
        c = [[2, -3], [-1, 2]]
        d = [1, 3]
    return CartanData(r, tuple(tuple(row) for row in c), tuple(d))


# -- reduced-word combinatorics ------------------------------------------------


def level_maps(levels: Sequence[int]):
    """Predecessor/successor maps of the level sets of a sequence.

    Entries are 0-based indices or None at the boundary."""
    last: dict[int, int] = {}
    pred: list[int | None] = []
    succ: list[int | None] = [None] * len(levels)
    for k, value in enumerate(levels):
        prev = last.get(value)
        pred.append(prev)
        if prev is not None:
            succ[prev] = k
        last[value] = k
    return pred, succ


@dataclass(frozen=True)
class ReducedWordData:
    """A word in the simple reflections with its level-set combinatorics."""
    word: tuple[int, ...]          # letters, 1-based in [1, r]
    kminus: tuple[int | None, ...]  # predecessor positions, 0-based
    kplus: tuple[int | None, ...]   # successor positions, 0-based
    ex: tuple[int, ...]             # 0-based positions with a predecessor


def word_data(cd: CartanData, word: Sequence[int]) -> ReducedWordData:
    letters = tuple(int(x) for x in word)
    for x in letters:
        if not 1 <= x <= cd.r:
            raise ValueError("word letter %d outside [1, %d]" % (x, cd.r))
    pred, succ = level_maps(letters)
    ex = tuple(k for k, p in enumerate(pred) if p is not None)
    return ReducedWordData(letters, tuple(pred), tuple(succ), ex)


def is_reduced_word(cd: CartanData, word: Sequence[int]) -> bool | None:
    """Length check via the permutation realization; only type A is
    implemented, other types return None (caller's responsibility)."""
    if not _is_type_a(cd):
        return None
    n = cd.r + 1
    perm = list(range(n))
    for letter in word:
        i = letter - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    inversions = sum(1 for a in range(n) for b in range(a + 1, n)
                     if perm[a] > perm[b])
    return inversions == len(word)


def _is_type_a(cd: CartanData) -> bool:
    expect = cartan_data("A%d" % cd.r) if cd.r >= 1 else None
    return expect is not None and expect.c == cd.c and expect.d == cd.d


def schubert_exchange_matrix(cd: CartanData, word: Sequence[int]):
    """Closed-form exchange matrix for a quantum Schubert cell.

    Rows are word positions, columns the positions that repeat an earlier
    letter.  The caller is responsible for the word being reduced; type A
    words are checked, other types produce a warning only.
    """
    data = word_data(cd, word)
    reduced = is_reduced_word(cd, word)
    if reduced is False:
        raise ValueError("word %s is not reduced" % (list(word),))
    if reduced is None:
        warnings.warn("reduced-word check not implemented for this Cartan type; "
                      "assuming the word is reduced", stacklevel=2)
    n = len(data.word)
    pred, succ = data.kminus, data.kplus
    columns = data.ex
    matrix = []
    for k in range(n):
        row = []
        for l in columns:
            row.append(_schubert_entry(cd, data, pred, succ, k, l))
        matrix.append(tuple(row))
    return data, tuple(matrix)


def _schubert_entry(cd, data, pred, succ, k, l) -> int:
    if pred[l] == k:
        return 1
    if succ[l] == k:
        return -1
    pk, pl = pred[k], pred[l]
    if pl is not None and (pk is None or pk < pl) and pl < k < l:
        return cd.c[data.word[k] - 1][data.word[l] - 1]
    if pk is not None and (pl is None or pl < pk) and pk < l < k:
        return -cd.c[data.word[k] - 1][data.word[l] - 1]
    return 0


# -- double Bruhat cells --------------------------------------------------------


@dataclass(frozen=True)
class BZData:
    """Index combinatorics for a double word: r frozen-ish leading slots,
    then the letters of v, then the letters of w."""
    r: int
    m: int
    n: int
    levels: tuple[int, ...]
    eps: tuple[int, ...]
    pred: tuple[int | None, ...]
    succ: tuple[int | None, ...]
    ex: tuple[int, ...]


def bz_data(cd: CartanData, word_w: Sequence[int], word_v: Sequence[int]) -> BZData:
    for x in list(word_w) + list(word_v):
        if not 1 <= x <= cd.r:
            raise ValueError("word letter %d outside [1, %d]" % (x, cd.r))
    r, m, n = cd.r, len(word_v), len(word_w)
    levels = tuple(range(1, r + 1)) + tuple(word_v) + tuple(word_w)
    eps = tuple(1 if k < r + m else -1 for k in range(r + m + n))
    pred, succ = level_maps(levels)
    ex = tuple(range(r)) + tuple(k for k in range(r, r + m + n) if succ[k] is not None)
    return BZData(r, m, n, levels, eps, tuple(pred), tuple(succ), ex)


def bz_exchange_matrix(cd: CartanData, word_w: Sequence[int], word_v: Sequence[int]):
    """Closed-form exchange matrix for a quantum double Bruhat cell."""
    data = bz_data(cd, word_w, word_v)
    total = data.r + data.m + data.n
    matrix = []
    for k in range(total):
        row = []
        for l in data.ex:
            row.append(_bz_entry(cd, data, k, l))
        matrix.append(tuple(row))
    return data, tuple(matrix)


def _bz_entry(cd: CartanData, data: BZData, k: int, l: int) -> int:
    pred, succ, eps = data.pred, data.succ, data.eps
    rm = data.r + data.m

    def cartan(a: int, b: int) -> int:
        return cd.c[data.levels[a] - 1][data.levels[b] - 1]

    if pred[l] == k:
        return -eps[l]
    if succ[l] == k:
        return eps[k]
    sk, sl = succ[k], succ[l]
    if k < l:
        if sk is not None and (sl is None or sk < sl) and l < sk \
                and eps[l] == eps[sk]:
            return -eps[l] * cartan(k, l)
        if l < rm and sl is not None and (sk is None or sl < sk) \
                and rm <= sl:
            return -eps[l] * cartan(k, l)
    if l < k:
        if sl is not None and (sk is None or sl < sk) and k < sl \
                and eps[k] == eps[sl]:
            return eps[k] * cartan(k, l)
        if k < rm and sk is not None and (sl is None or sk < sl) \
                and rm <= sk:
            return eps[k] * cartan(k, l)
    return 0
