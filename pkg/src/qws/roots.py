"""Root systems and Coxeter data for the simple types A-G (E6 excluded).

Roots live in the simple-root basis as integer vectors; the invariant
form is the symmetrized Cartan matrix normalized so long roots have
squared length 2.  The Coxeter element is the product of the simple
reflections in the fixed ordering below, as a rational matrix on the
root space; its eigenbasis is computed exactly over a cyclotomic field,
extended by explicit square roots of rationals where the biorthogonal
normalization requires them.

Simple-root ordering: chains are numbered along the diagram; for types
D and E the branch node follows Bourbaki.  For type A the ordering
makes the Coxeter element act on diagonal matrices of SL(n) exactly as
the signed-cycle representative used in the loop module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclotomic import Cyclo, CycloField, embed, rational_sqrt
from .errors import ExcludedTypeError
from .linalg import identity, kernel, mat_inv, mat_mul, mat_vec

POSITIVE_ROOT_COUNTS = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {7: 63, 8: 120}[l],
    "F": lambda l: 24,
    "G": lambda l: 6,
}


def cartan_matrix(type_label: str, rank: int) -> list[list[int]]:
    t, l = type_label, rank
    if t == "E" and l == 6:
        raise ExcludedTypeError("type E6 is excluded for these constructions")
    ok = {
        "A": l >= 1, "B": l >= 2, "C": l >= 2, "D": l >= 4,
        "E": l in (7, 8), "F": l == 4, "G": l == 2,
    }
    if t not in ok or not ok[t]:
        raise ExcludedTypeError(f"no simple type {t}{l} in the supported family")
    a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def chain(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if t in ("A", "B", "C"):
        for i in range(l - 1):
            chain(i, i + 1)
        if t == "B":
            a[l - 2][l - 1], a[l - 1][l - 2] = -1, -2
        if t == "C":
            a[l - 2][l - 1], a[l - 1][l - 2] = -2, -1
    elif t == "D":
        for i in range(l - 2):
            chain(i, i + 1)
        chain(l - 3, l - 1)
    elif t == "G":
        a[0][1], a[1][0] = -1, -3
    elif t == "F":
        chain(0, 1)
        a[1][2], a[2][1] = -1, -2
        chain(2, 3)
    elif t == "E":
        # Bourbaki: chain 1-3-4-5-6-7(-8), node 2 attached to 4
        edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)]
        if l == 8:
            edges.append((6, 7))
        for i, j in edges:
            chain(i, j)
    return a


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan: tuple
    positive_roots: tuple  # integer coordinate tuples in the simple-root basis
    root_lengths: tuple  # (alpha_i, alpha_i)/2 per simple root
    gram: tuple  # invariant form on the simple-root basis

    @property
    def all_roots(self):
        return self.positive_roots + tuple(
            tuple(-x for x in r) for r in self.positive_roots
        )

    def height(self, root) -> int:
        return sum(root)

    def is_root(self, v) -> bool:
        return tuple(v) in set(self.all_roots)

    def reflection_matrix(self, i: int) -> list[list[Fraction]]:
        l = self.rank
        m = [[Fraction(1 if r == c else 0) for c in range(l)] for r in range(l)]
        for j in range(l):
            m[i][j] = Fraction((1 if i == j else 0) - self.cartan[i][j])
        return m

    def form(self, x, y) -> Fraction:
        out = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj and self.gram[i][j]:
                    out += Fraction(xi) * self.gram[i][j] * Fraction(yj)
        return out


def build_root_system(type_label: str, rank: int) -> RootSystem:
    a = cartan_matrix(type_label, rank)
    l = rank
    simple = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]

    def reflect(i, root):
        out = list(root)
        out[i] -= sum(a[i][j] * root[j] for j in range(l))
        return tuple(out)

    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(l):
                s = reflect(i, r)
                if s not in roots:
                    roots.add(s)
                    nxt.append(s)
        frontier = nxt
    positives = sorted(
        (r for r in roots if all(x >= 0 for x in r)), key=lambda r: (sum(r), r)
    )
    expected = POSITIVE_ROOT_COUNTS[type_label](l)
    assert len(positives) == expected, (type_label, rank, len(positives))
    assert len(roots) == 2 * expected

    # symmetrizing weights: d_i * a_ij = d_j * a_ji, max d = 1 (long roots)
    d: list = [None] * l
    d[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(l):
            if i != j and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * Fraction(a[i][j], a[j][i])
                queue.append(j)
    top = max(d)
    d = [x / top for x in d]
    gram = tuple(tuple(d[i] * a[i][j] for j in range(l)) for i in range(l))
    return RootSystem(
        type_label, rank, tuple(tuple(row) for row in a),
        tuple(positives), tuple(d), gram,
    )


@dataclass
class CoxeterData:
    rs: RootSystem
    matrix: list  # R_s over Fractions, simple-root basis
    h: int
    exponents: list  # k_p, ascending with multiplicity, length = rank
    field: CycloField  # extended enough for the normalized eigenbasis
    eigenvectors: list  # H_p over field with R_s H_p = zeta_h^(k_p) H_p
    sigma: list  # index permutation with <H_p, H_sigma(p)> = 1

    def zeta_h(self, power: int = 1) -> Cyclo:
        return self.field.zeta((self.field.H // self.h) * power)

    def pair(self, x, y) -> Cyclo:
        g = self.rs.gram
        out = self.field.zero
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if not yj.is_zero() and g[i][j]:
                    out = out + xi * yj * g[i][j]
        return out


def coxeter_matrix(rs: RootSystem) -> list[list[Fraction]]:
    m = identity(rs.rank, Fraction(0), Fraction(1))
    for i in range(rs.rank):
        m = mat_mul(m, rs.reflection_matrix(i))
    return m


def matrix_order(m, max_order: int = 64) -> int:
    l = len(m)
    p = m
    for k in range(1, max_order + 1):
        if all(p[i][j] == (1 if i == j else 0) for i in range(l) for j in range(l)):
            return k
        p = mat_mul(p, m)
    raise ValueError("matrix order exceeds bound")


def _pair_in(field, gram, x, y):
    out = field.zero
    for i, xi in enumerate(x):
        if xi.is_zero():
            continue
        for j, yj in enumerate(y):
            if not yj.is_zero() and gram[i][j]:
                out = out + xi * yj * gram[i][j]
    return out


def _gram_schmidt_symmetric(field, gram, vectors):
    """Orthogonal basis for a nondegenerate symmetric form, division only."""
    vs = [list(v) for v in vectors]
    out = []
    while vs:
        pick = None
        for i, v in enumerate(vs):
            if not _pair_in(field, gram, v, v).is_zero():
                pick = vs.pop(i)
                break
        if pick is None:
            found = False
            for i in range(len(vs)):
                for j in range(i + 1, len(vs)):
                    if not _pair_in(field, gram, vs[i], vs[j]).is_zero():
                        vs[i] = [a + b for a, b in zip(vs[i], vs[j])]
                        found = True
                        break
                if found:
                    break
            assert found, "form degenerate on eigenspace"
            continue
        norm = _pair_in(field, gram, pick, pick)
        for j, w in enumerate(vs):
            c = _pair_in(field, gram, w, pick) / norm
            vs[j] = [wx - c * px for wx, px in zip(w, pick)]
        out.append(pick)
    return out


def coxeter_data(rs: RootSystem) -> CoxeterData:
    r_s = coxeter_matrix(rs)
    h = matrix_order(r_s)
    base = CycloField(h)

    spaces = []  # (k, basis over base field), ascending k
    total = 0
    for k in range(1, h):
        zk = base.zeta(k)
        m = [
            [base.from_rational(r_s[i][j]) - (zk if i == j else base.zero)
             for j in range(rs.rank)]
            for i in range(rs.rank)
        ]
        basis = kernel(m, base.zero, base.one)
        if basis:
            spaces.append((k, basis))
            total += len(basis)
    assert total == rs.rank, "Coxeter element not semisimple without eigenvalue 1"

    # the self-paired eigenvalue is -1 (exponent h/2); orthonormalizing it
    # needs square roots of rational norms, which fix the final conductor
    conductor = base.H
    half_norms = []
    for k, basis in spaces:
        if 2 * k == h:
            ortho = _gram_schmidt_symmetric(base, rs.gram, basis)
            half_norms = []
            for v in ortho:
                norm = _pair_in(base, rs.gram, v, v)
                assert norm.is_rational(), "eigenvalue -1 norms must be rational"
                f, root = rational_sqrt(norm.as_fraction())
                conductor = lcm(conductor, f.H)
                half_norms.append(norm.as_fraction())
            spaces = [
                (kk, ortho if kk == k else bb) for kk, bb in spaces
            ]
    field = CycloField(conductor)

    def lift(vec):
        return [embed(x, field) for x in vec]

    gram = rs.gram
    exponents = []
    eigenvectors = []
    sigma_map = {}
    positions = {}  # k -> list of global indices
    for k, basis in spaces:
        positions[k] = list(range(len(exponents), len(exponents) + len(basis)))
        for v in basis:
            exponents.append(k)
            eigenvectors.append(lift(v))
    for k, basis in spaces:
        if 2 * k == h:
            for idx in positions[k]:
                v = eigenvectors[idx]
                norm = _pair_in(field, gram, v, v)
                _, root = rational_sqrt(norm.as_fraction(), min_conductor=field.H)
                inv = root.inverse()
                eigenvectors[idx] = [x * inv for x in v]
                sigma_map[idx] = idx
        elif k < h - k:
            vs = [eigenvectors[i] for i in positions[k]]
            ws = [eigenvectors[i] for i in positions[h - k]]
            m = [[_pair_in(field, gram, v, w) for w in ws] for v in vs]
            n = mat_inv(m, field.zero, field.one)
            new_ws = []
            for b in range(len(ws)):
                w = [field.zero] * rs.rank
                for c in range(len(ws)):
                    for t in range(rs.rank):
                        w[t] = w[t] + ws[c][t] * n[c][b]
                new_ws.append(w)
            for b, idx in enumerate(positions[h - k]):
                eigenvectors[idx] = new_ws[b]
            for a, (i, j) in enumerate(zip(positions[k], positions[h - k])):
                sigma_map[i] = j
                sigma_map[j] = i
    sigma = [sigma_map[i] for i in range(rs.rank)]

    cd = CoxeterData(rs, r_s, h, exponents, field, eigenvectors, sigma)
    _validate_coxeter_data(cd)
    return cd


def _validate_coxeter_data(cd: CoxeterData) -> None:
    f = cd.field
    l = cd.rs.rank
    # eigenvector property and exact biorthogonality
    for p, (k, v) in enumerate(zip(cd.exponents, cd.eigenvectors)):
        image = [
            sum((f.from_rational(cd.matrix[i][j]) * v[j] for j in range(l)),
                start=f.zero)
            for i in range(l)
        ]
        lam = cd.zeta_h(k)
        assert all((image[i] == lam * v[i]) for i in range(l)), "not an eigenvector"
    for p in range(l):
        for r in range(l):
            val = cd.pair(cd.eigenvectors[p], cd.eigenvectors[cd.sigma[r]])
            want = f.one if p == r else f.zero
            assert val == want, ("biorthogonality failed", p, r)
    # exponents pair up as k, h-k and sum to the number of positive roots
    assert sorted(cd.exponents) == sorted(cd.h - k for k in cd.exponents)
    assert sum(cd.exponents) == len(cd.rs.positive_roots)


def coxeter_orbits(cd: CoxeterData) -> list[list[tuple]]:
    """Orbits of the root system under the Coxeter element.

    Each orbit is listed in cyclic order r, s(r), s^2(r), ... starting at
    a positive root whose predecessor in the cycle is negative; orbits are
    sorted by the minimal height of their positive members.
    """
    rs = cd.rs
    m = cd.matrix

    def act(root):
        img = mat_vec(m, [Fraction(x) for x in root])
        out = tuple(int(x) for x in img)
        assert all(Fraction(o) == x for o, x in zip(out, img))
        return out

    seen = set()
    orbits = []
    for r in rs.all_roots:
        if r in seen:
            continue
        cycle = [r]
        cur = act(r)
        while cur != r:
            cycle.append(cur)
            cur = act(cur)
        seen.update(cycle)
        n = len(cycle)
        start = next(
            i for i in range(n)
            if sum(cycle[i]) > 0 and sum(cycle[(i - 1) % n]) < 0
        )
        orbits.append(cycle[start:] + cycle[:start])
    orbits.sort(key=lambda orb: min(sum(r) for r in orb if sum(r) > 0))
    assert len(orbits) == rs.rank
    assert all(len(orb) == cd.h for orb in orbits)
    return orbits


def delta_plus_p(cd: CoxeterData, p: int) -> list[tuple]:
    """Positive roots alpha with s^(-p) alpha negative."""
    rs = cd.rs
    inv = mat_inv(cd.matrix, Fraction(0), Fraction(1))
    power = identity(rs.rank, Fraction(0), Fraction(1))
    for _ in range(p):
        power = mat_mul(power, inv)
    out = []
    for r in rs.positive_roots:
        img = mat_vec(power, [Fraction(x) for x in r])
        if sum(img) < 0:
            out.append(r)
    return out


def inversion_slices(cd: CoxeterData) -> list[list[tuple]]:
    """The nested inversion sets of s^p sliced into rank-sized layers.

    For the even-Coxeter-number types the sets delta_plus_p(cd, p) grow by
    exactly rank roots per step up to p = h/2 and exhaust the positive
    roots; each layer spans an abelian subalgebra.
    """
    slices = []
    prev: set = set()
    for p in range(1, cd.h // 2 + 1):
        cur = set(delta_plus_p(cd, p))
        assert prev <= cur, "inversion sets must be nested"
        slices.append(sorted(cur - prev))
        prev = cur
    assert len(prev) == len(cd.rs.positive_roots)
    return slices
