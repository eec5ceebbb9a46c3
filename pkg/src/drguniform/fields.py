"""Arithmetic in GF(p) and GF(p^2) for small primes, with conjugation.

Elements of GF(p^2) are encoded as integers a + b*p standing for a + b*t,
where t is a root of the fixed irreducible polynomial below.  Using fixed
irreducibles keeps every derived vertex ordering reproducible.  Operations
are table-driven, so they are plain list lookups in hot loops.
"""

from .errors import UnsupportedField

# fixed irreducible t^2 + u1*t + u0 over GF(p), stored as (u1, u0)
_IRREDUCIBLE = {
    2: (1, 1),  # t^2 + t + 1
    3: (0, 1),  # t^2 + 1
    5: (0, 2),  # t^2 + 2
    7: (0, 1),  # t^2 + 1
}


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FiniteField:
    """GF(p^k) with k in {1, 2}; elements are ints in range(p**k)."""

    def __init__(self, p, k=1):
        if not _is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        if k == 2 and p not in _IRREDUCIBLE:
            raise UnsupportedField(f"no fixed irreducible stored for GF({p}^2)")
        if k not in (1, 2):
            raise UnsupportedField("only GF(p) and GF(p^2) are supported")
        self.p = p
        self.k = k
        self.order = p**k
        self._build_tables()

    def _build_tables(self):
        p, q = self.p, self.order
        self.add = [[0] * q for _ in range(q)]
        self.mul = [[0] * q for _ in range(q)]
        if self.k == 1:
            for x in range(q):
                for y in range(q):
                    self.add[x][y] = (x + y) % p
                    self.mul[x][y] = (x * y) % p
        else:
            u0, u1 = _IRREDUCIBLE[p][1], _IRREDUCIBLE[p][0]
            # t^2 = -u1*t - u0
            for x in range(q):
                a1, b1 = x % p, x // p
                for y in range(q):
                    a2, b2 = y % p, y // p
                    self.add[x][y] = (a1 + a2) % p + p * ((b1 + b2) % p)
                    hi = b1 * b2
                    a = (a1 * a2 - hi * u0) % p
                    b = (a1 * b2 + a2 * b1 - hi * u1) % p
                    self.mul[x][y] = a + p * b
        self.neg = [self.mul[x][self._mod_neg_one()] for x in range(q)]
        self.inv = [0] * q
        for x in range(1, q):
            for y in range(1, q):
                if self.mul[x][y] == 1:
                    self.inv[x] = y
                    break
        # Frobenius x -> x^p fixes GF(p) and is the conjugation on GF(p^2)
        self.conj = [self._pow(x, p) for x in range(q)] if self.k == 2 else list(range(q))

    def _mod_neg_one(self):
        return (self.p - 1) % self.p  # -1 lives in the prime subfield

    def _pow(self, x, e):
        acc = 1
        for _ in range(e):
            acc = self.mul[acc][x]
        return acc

    def sub(self, x, y):
        return self.add[x][self.neg[y]]

    def elements(self):
        return range(self.order)

    def prime_subfield(self):
        """Elements fixed by conjugation (= GF(p) inside GF(p^2))."""
        return [x for x in range(self.order) if self.conj[x] == x]


def hermitian_inner(field, u, v):
    """sum_i u_i * conj(v_i) over GF(r^2)."""
    mul, conj, add = field.mul, field.conj, field.add
    acc = 0
    for a, b in zip(u, v):
        acc = add[acc][mul[a][conj[b]]]
    return acc


def vec_add(field, u, v):
    add = field.add
    return tuple(add[a][b] for a, b in zip(u, v))


def vec_scale(field, c, u):
    mul = field.mul
    return tuple(mul[c][x] for x in u)


def rref_gf(field, rows):
    """Reduced row echelon form over the field; returns (rows, pivots)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    mul, inv, neg, add = field.mul, field.inv, field.neg, field.add
    pivots = []
    r = 0
    for c in range(ncols):
        pick = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pick is None:
            continue
        m[r], m[pick] = m[pick], m[r]
        s = inv[m[r][c]]
        m[r] = [mul[s][x] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = neg[m[i][c]]
                m[i] = [add[x][mul[f][y]] for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank_gf(field, rows):
    return len(rref_gf(field, rows)[0])
