"""Random comodule generators and brute-force oracles shared by the tests."""

import itertools

from comodcat import linalg
from comodcat.algebra import Matrix
from comodcat.comodule import change_of_basis, direct_sum
from comodcat.fixtures import load_fixture


def f1():
    return load_fixture("F1")


def f2():
    return load_fixture("F2")


def f3():
    return load_fixture("F3")


def random_invertible_fp(rng, field, n):
    while True:
        rows = [[field(rng.randrange(field.characteristic)) for _ in range(n)] for _ in range(n)]
        if linalg.rank(field, rows, n) == n:
            return rows


def random_f1_comodule(rng, max_dim=4):
    """A random 𝔽₂[ℤ/2]-module (sum of trivial and regular pieces) in a random basis."""
    C = f1().comodules
    pieces, dim = [], 0
    target = rng.randint(1, max_dim)
    while dim < target:
        piece = rng.choice([C["unit"], C["regular"]])
        if dim + piece.ngens > max_dim:
            piece = C["unit"]
        pieces.append(piece)
        dim += piece.ngens
    S = direct_sum(*pieces) if len(pieces) > 1 else pieces[0]
    H = S.algebroid
    P = Matrix(H.A0, random_invertible_fp(rng, H.field, S.ngens), S.ngens)
    N, _, _ = change_of_basis(S, P)
    N.name = f"random{'+'.join(str(p) for p in pieces)}"
    return N


def random_f3_comodule(rng, max_pieces=2):
    """A random sum of the F3 fixture comodules, re-presented by a unipotent change of basis."""
    C = f3().comodules
    names = ["unit", "twisted", "A_mod_x", "A_mod_x2", "A_mod_x2_twisted"]
    pieces = [C[rng.choice(names)] for _ in range(rng.randint(1, max_pieces))]
    S = direct_sum(*pieces) if len(pieces) > 1 else pieces[0]
    A0 = S.A0
    x = A0.gens[0]
    n = S.ngens
    rows = [[A0.one if i == j else (A0(rng.randint(-2, 2)) * x ** rng.randint(0, 1) if i < j else A0.zero)
             for j in range(n)] for i in range(n)]
    N, _, _ = change_of_basis(S, Matrix(A0, rows, n))
    N.name = f"random[{'+'.join(str(p) for p in pieces)}]"
    return N


# F1 comodules are 𝔽₂[ℤ/2]-modules: the coaction is (1+e)·I + e·S for the involution S

def involution(M):
    """The action of the non-identity element: the coaction evaluated at e = 1."""
    rows = []
    for r in M.coaction.rows:
        rows.append([sum(c for _, c in x.poly.items()) % 2 for x in r])
    return rows


def kron(a, b):
    return [[x * y % 2 for x in ra for y in rb] for ra in a for rb in b]


def matmul2(a, b):
    return [[sum(x * b[k][j] for k, x in enumerate(r)) % 2 for j in range(len(b[0]))] for r in a]


def all_matrices(rows, cols):
    for bits in itertools.product((0, 1), repeat=rows * cols):
        yield [list(bits[i * cols:(i + 1) * cols]) for i in range(rows)]


def brute_hom_count(SM, SN):
    """Number of 𝔽₂-matrices F with F·S_M = S_N·F."""
    m, n = len(SM), len(SN)
    return sum(1 for F in all_matrices(n, m) if matmul2(F, SM) == matmul2(SN, F))


def brute_invariant_count(S):
    n = len(S)
    return sum(1 for v in itertools.product((0, 1), repeat=n)
               if all(sum(S[i][k] * v[k] for k in range(n)) % 2 == v[i] for i in range(n)))


# explicit unnormalized cobar complex of 𝔽₂[e]/(e² + e) with Δe = e⊗1 + 1⊗e, Δ1 = 1⊗1

_COPRODUCT = {0: [(0, 0)], 1: [(1, 0), (0, 1)]}  # letters: 0 = 1, 1 = e


def cobar_word_differential(s):
    """d^s on words of length s as bitmask images; over 𝔽₂ every sign is +1."""
    index = {w: i for i, w in enumerate(itertools.product((0, 1), repeat=s + 1))}
    images = []
    for w in itertools.product((0, 1), repeat=s):
        terms = [(0,) + w, w + (0,)]
        for i, a in enumerate(w):
            for x, y in _COPRODUCT[a]:
                terms.append(w[:i] + (x, y) + w[i + 1:])
        mask = 0
        for t in terms:
            mask ^= 1 << index[t]
        images.append(mask)
    return images


def span_size(images):
    """Number of distinct 𝔽₂-combinations of the images, by enumeration in Gray-code order."""
    seen = {0}
    acc = 0
    for k in range(1, 2 ** len(images)):
        acc ^= images[(k & -k).bit_length() - 1]
        seen.add(acc)
    return len(seen)


def cobar_word_ext_dims(depth):
    """dim H^s of the cobar complex for 0 ≤ s ≤ depth with ranks read off from span sizes."""
    ranks = [span_size(cobar_word_differential(s)).bit_length() - 1 for s in range(depth + 1)]
    return [2 ** s - ranks[s] - (ranks[s - 1] if s else 0) for s in range(depth + 1)]
