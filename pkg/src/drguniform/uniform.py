"""Certification of (strongly) uniform structures.

For a base vertex x the layer equation

    e_i^- * RL^2 + LRL + e_i^+ * L^2R = f_i * L      on the i-th subconstituent

is turned into an exact linear system per layer by restricting every
operator to the blocks between consecutive layers.  The per-layer affine
solution sets are then combined and searched for a point satisfying the
parameter-matrix conditions: unit diagonal, one nowhere-zero off-diagonal
family, and all tridiagonal principal minors nonsingular.  Everything is
decided in exact rational arithmetic; when solution sets have free
parameters, seeded rational sampling with exact verification is tried
first and a symbolic analysis of the determinant polynomials settles
existence if sampling keeps missing.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT
from .errors import DecompositionUnavailable
from .exactla import IntRowBasis, solve_affine
from .graph_core import bfs_layers
from .terwilliger import lfr_split

_FLOAT_SAFE = 2**52


def _imatmul(a, b):
    """Exact product of small-entry integer matrices through float BLAS."""
    c = a.astype(np.float64) @ b.astype(np.float64)
    assert np.abs(c).max(initial=0.0) < _FLOAT_SAFE
    return np.rint(c).astype(np.int64)


def layer_operator_blocks(split, i):
    """Blocks of RL^2, LRL, L^2R, L restricted to (layer i-1, layer i)."""
    eps = split.eccentricity
    L_i = split.l_block(i)
    Y = _imatmul(_imatmul(L_i, L_i.T), L_i)
    if i >= 2:
        L_prev = split.l_block(i - 1)
        X = _imatmul(L_prev.T, _imatmul(L_prev, L_i))
    else:
        X = np.zeros_like(L_i)
    if i <= eps - 1:
        L_next = split.l_block(i + 1)
        Z = _imatmul(L_i, _imatmul(L_next, L_next.T))
    else:
        Z = np.zeros_like(L_i)
    return X, Y, Z, L_i


@dataclass(frozen=True)
class LayerSolution:
    """Affine solution set for (e_i^-, e_i^+, f_i) at one layer.

    Coordinates pinned by convention (e_1^- and e_eps^+) are zero in both
    the particular point and every basis vector.  ``empty`` marks an
    inconsistent layer; ``system`` keeps the deduplicated coefficient rows
    (e_minus_coeff, e_plus_coeff, f_coeff, rhs) as the witness.
    """

    layer: int
    empty: bool
    particular: tuple
    basis: tuple
    system: tuple

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, point):
        """Exact membership of (e_minus, e_plus, f) in the affine set."""
        if self.empty:
            return False
        delta = [Fraction(p) - q for p, q in zip(point, self.particular)]
        if not self.basis:
            return all(d == 0 for d in delta)
        rows = [[h[j] for h in self.basis] for j in range(3)]
        return solve_affine(rows, delta) is not None


def solve_layer(split, i):
    """Exact affine solution set of the layer equation on E*_i V."""
    eps = split.eccentricity
    if not 1 <= i <= eps:
        raise ValueError(f"layer {i} out of range 1..{eps}")
    X, Y, Z, W = layer_operator_blocks(split, i)
    stacked = np.stack(
        [X.ravel(), Z.ravel(), W.ravel(), Y.ravel()], axis=1
    )
    rows = np.unique(stacked, axis=0)
    rows = rows[np.abs(rows).sum(axis=1) > 0]
    active = []
    if i >= 2:
        active.append(0)  # e_minus
    if i <= eps - 1:
        active.append(1)  # e_plus
    active.append(2)  # f
    system = []
    rhs = []
    for em, ep, fc, y in rows.tolist():
        coeffs = {0: em, 1: ep, 2: -fc}
        system.append([Fraction(coeffs[a]) for a in active])
        rhs.append(Fraction(-y))
    sol = solve_affine(system, rhs)
    witness = tuple((int(r[0]), int(r[1]), int(r[2]), int(r[3])) for r in rows.tolist())
    if sol is None:
        return LayerSolution(
            layer=i, empty=True, particular=(), basis=(), system=witness
        )
    part, hom = sol

    def embed(vec):
        full = [Fraction(0)] * 3
        for a, v in zip(active, vec):
            full[a] = v
        return tuple(full)

    return LayerSolution(
        layer=i,
        empty=False,
        particular=embed(part),
        basis=tuple(embed(h) for h in hom),
        system=witness,
    )


@dataclass(frozen=True)
class ParameterMatrix:
    """Tridiagonal matrix with unit diagonal; e_minus[i] is entry (i, i-1)
    for 2 <= i <= eps, e_plus[i] is entry (i, i+1) for 1 <= i <= eps-1."""

    epsilon: int
    e_minus: tuple  # length eps-1, indices 2..eps
    e_plus: tuple  # length eps-1, indices 1..eps-1

    def e_minus_at(self, i):
        if 2 <= i <= self.epsilon:
            return self.e_minus[i - 2]
        return Fraction(0)

    def e_plus_at(self, i):
        if 1 <= i <= self.epsilon - 1:
            return self.e_plus[i - 1]
        return Fraction(0)

    def dense(self):
        U = [
            [Fraction(0)] * self.epsilon for _ in range(self.epsilon)
        ]
        for i in range(1, self.epsilon + 1):
            U[i - 1][i - 1] = Fraction(1)
            if i >= 2:
                U[i - 1][i - 2] = self.e_minus_at(i)
            if i <= self.epsilon - 1:
                U[i - 1][i] = self.e_plus_at(i)
        return U


@dataclass(frozen=True)
class UniformStructure:
    U: ParameterMatrix
    f: tuple  # f_1 .. f_eps

    @property
    def epsilon(self):
        return self.U.epsilon


def principal_determinant(U, s, t):
    """det of the principal submatrix (rows/cols s..t) via the three-term
    recurrence det(U_{s,t}) = det(U_{s+1,t}) - e_s^+ e_{s+1}^- det(U_{s+2,t})."""
    if not 1 <= s <= t <= U.epsilon:
        raise ValueError("need 1 <= s <= t <= epsilon")
    d_after = Fraction(1)  # det(U_{t+1,t}), empty matrix
    d = Fraction(1)  # det(U_{t,t})
    for j in range(t - 1, s - 1, -1):
        d, d_after = d - U.e_plus_at(j) * U.e_minus_at(j + 1) * d_after, d
    return d


def check_parameter_conditions(U):
    """Evaluate the off-diagonal family condition and all principal minors.

    Returns a dict {ok, family_minus, family_plus, violations} where
    violations lists the singular (s, t) pairs.
    """
    eps = U.epsilon
    family_minus = all(U.e_minus_at(i) != 0 for i in range(2, eps + 1))
    family_plus = all(U.e_plus_at(i) != 0 for i in range(1, eps))
    violations = []
    for s in range(1, eps + 1):
        for t in range(s, eps + 1):
            if principal_determinant(U, s, t) == 0:
                violations.append((s, t))
    return {
        "ok": (family_minus or family_plus) and not violations,
        "family_minus": family_minus,
        "family_plus": family_plus,
        "violations": tuple(violations),
    }


def is_strongly_uniform(U):
    eps = U.epsilon
    return all(U.e_minus_at(i) != 0 for i in range(2, eps + 1)) and all(
        U.e_plus_at(i) != 0 for i in range(1, eps)
    )


def verify_given(split, us):
    """Exact check that the layer equation holds on every subconstituent."""
    eps = split.eccentricity
    if us.epsilon != eps:
        return False
    for i in range(1, eps + 1):
        X, Y, Z, W = layer_operator_blocks(split, i)
        em = us.U.e_minus_at(i)
        ep = us.U.e_plus_at(i)
        fi = Fraction(us.f[i - 1])
        den = np.lcm.reduce(
            [em.denominator, ep.denominator, fi.denominator]
        )
        den = int(den)
        lhs = (
            int(em * den) * X
            + den * Y
            + int(ep * den) * Z
            - int(fi * den) * W
        )
        if np.any(lhs):
            return False
    return True


# ---------------------------------------------------------------------------
# tiny multivariate polynomials over Q, used for the symbolic fallback


class _Poly:
    """Polynomial as {monomial: Fraction} with monomial = sorted var tuple."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                if c != 0:
                    self.terms[mono] = c

    @classmethod
    def const(cls, c):
        return cls({(): Fraction(c)}) if c else cls()

    @classmethod
    def var(cls, idx):
        return cls({(idx,): Fraction(1)})

    def __add__(self, other):
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
            if out[mono] == 0:
                del out[mono]
        return _Poly(out)

    def __sub__(self, other):
        return self + other * Fraction(-1)

    def __mul__(self, other):
        if isinstance(other, Fraction):
            return _Poly({m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return _Poly(out)

    def is_zero(self):
        return not self.terms

    def eval(self, values):
        acc = Fraction(0)
        for mono, c in self.terms.items():
            term = c
            for v in mono:
                term *= values[v]
            acc += term
        return acc


def _affine_poly(const, coeffs):
    p = _Poly.const(const)
    for idx, c in coeffs:
        p = p + _Poly.var(idx) * Fraction(c)
    return p


@dataclass(frozen=True)
class UniformCertificate:
    verdict: str  # StronglyUniform | Uniform | NoUniform
    epsilon: int
    layers: tuple  # LayerSolutions
    structure: object  # UniformStructure or None
    failure: dict  # None unless verdict == NoUniform
    checks: dict  # None unless a structure was chosen

    @property
    def supports_uniform(self):
        return self.verdict != "NoUniform"


def certify_uniform(g, x=0, config=DEFAULT):
    """Decide whether ``g`` supports a uniform structure with respect to x.

    Same-layer edges never enter the blocks, so the split of the original
    graph already carries the lowering/raising pair of the flattened
    graph; bipartite inputs are certified directly.
    """
    dp = bfs_layers(g, x)
    split = lfr_split(g, dp)
    eps = dp.eccentricity
    layers = []
    for i in range(1, eps + 1):
        sol = solve_layer(split, i)
        if sol.empty:
            return UniformCertificate(
                verdict="NoUniform",
                epsilon=eps,
                layers=tuple(layers) + (sol,),
                structure=None,
                failure={
                    "layer": i,
                    "kind": "inconsistent_layer_system",
                    "detail": "no (e-, e+, f) satisfies the layer equation",
                    "system_rows": sol.system,
                },
                checks=None,
            )
        layers.append(sol)
    layers = tuple(layers)

    # free-parameter bookkeeping: variable index per (layer, basis vector)
    var_of = {}
    for sol in layers:
        for k in range(sol.dim):
            var_of[(sol.layer, k)] = len(var_of)
    nvars = len(var_of)

    def structure_at(values):
        e_minus, e_plus, f = [], [], []
        for sol in layers:
            coords = list(sol.particular)
            for k, h in enumerate(sol.basis):
                tval = values[var_of[(sol.layer, k)]]
                coords = [c + tval * hv for c, hv in zip(coords, h)]
            i = sol.layer
            if i >= 2:
                e_minus.append(coords[0])
            if i <= eps - 1:
                e_plus.append(coords[1])
            f.append(coords[2])
        U = ParameterMatrix(
            epsilon=eps, e_minus=tuple(e_minus), e_plus=tuple(e_plus)
        )
        return UniformStructure(U=U, f=tuple(f))

    def finish(us, strongly):
        verdict = "StronglyUniform" if strongly else "Uniform"
        report = check_parameter_conditions(us.U)
        checks = {
            "verify_given": verify_given(split, us),
            "def_ii": report["family_minus"] or report["family_plus"],
            "def_iii": not report["violations"],
        }
        assert all(checks.values())
        return UniformCertificate(
            verdict=verdict,
            epsilon=eps,
            layers=layers,
            structure=us,
            failure=None,
            checks=checks,
        )

    def attempt(values):
        us = structure_at(values)
        report = check_parameter_conditions(us.U)
        if report["ok"]:
            return us
        return None

    # unique solution: decide directly
    if nvars == 0:
        us = structure_at([])
        report = check_parameter_conditions(us.U)
        if report["ok"]:
            return finish(us, is_strongly_uniform(us.U))
        return UniformCertificate(
            verdict="NoUniform",
            epsilon=eps,
            layers=layers,
            structure=None,
            failure={
                "layer": None,
                "kind": "parameter_conditions",
                "detail": _condition_failure_text(report),
                "report": report,
            },
            checks=None,
        )

    # seeded sampling with exact verification
    rng = random.Random(config.decomposition_seed)
    for round_no in range(config.retry_count):
        span = 3 + 2 * round_no
        values = [
            Fraction(rng.randint(-span, span), rng.randint(1, span))
            for _ in range(nvars)
        ]
        us = attempt(values)
        if us is not None and is_strongly_uniform(us.U):
            return finish(us, True)

    # symbolic analysis of the conditions over the affine solution product
    e_minus_polys, e_plus_polys = {}, {}
    f_polys = {}
    for sol in layers:
        i = sol.layer
        for coord, store in ((0, e_minus_polys), (1, e_plus_polys), (2, f_polys)):
            if coord == 0 and i < 2:
                continue
            if coord == 1 and i > eps - 1:
                continue
            store[i] = _affine_poly(
                sol.particular[coord],
                [
                    (var_of[(i, k)], h[coord])
                    for k, h in enumerate(sol.basis)
                    if h[coord] != 0
                ],
            )

    # determinant polynomials via the same three-term recurrence
    det_polys = {}
    one = _Poly.const(1)
    for t in range(1, eps + 1):
        d_after, d = one, one
        det_polys[(t, t)] = d
        for j in range(t - 1, 0, -1):
            d, d_after = (
                d - e_plus_polys[j] * e_minus_polys[j + 1] * d_after,
                d,
            )
            det_polys[(j, t)] = d

    dets_ok = all(not p.is_zero() for p in det_polys.values())
    minus_ok = all(not p.is_zero() for p in e_minus_polys.values())
    plus_ok = all(not p.is_zero() for p in e_plus_polys.values())
    if not (dets_ok and (minus_ok or plus_ok)):
        if not dets_ok:
            bad = next(st for st, p in sorted(det_polys.items()) if p.is_zero())
            detail = (
                f"principal submatrix ({bad[0]},{bad[1]}) is singular for every "
                "solution of the layer equations"
            )
        else:
            detail = (
                "both off-diagonal families contain an identically zero entry "
                "over the solution set"
            )
        return UniformCertificate(
            verdict="NoUniform",
            epsilon=eps,
            layers=layers,
            structure=None,
            failure={
                "layer": None,
                "kind": "parameter_conditions",
                "detail": detail,
            },
            checks=None,
        )

    strongly_possible = dets_ok and minus_ok and plus_ok
    # a verifying point exists; enlarge the sampling range until it shows up
    for round_no in range(64):
        span = 5 + 3 * round_no
        values = [
            Fraction(rng.randint(-span, span), rng.randint(1, span))
            for _ in range(nvars)
        ]
        us = attempt(values)
        if us is None:
            continue
        if strongly_possible and not is_strongly_uniform(us.U):
            continue
        return finish(us, is_strongly_uniform(us.U))
    raise RuntimeError("sampling failed although a valid point exists")


def _condition_failure_text(report):
    if report["violations"]:
        s, t = report["violations"][0]
        return f"principal submatrix ({s},{t}) of the parameter matrix is singular"
    return "both off-diagonal families of the parameter matrix contain a zero"


def non_thin_diagnostic(g, x, modules):
    """Look for an endpoint-1 module whose second slice has dimension >= 2.

    ``modules`` is a decomposition produced by the module machinery; for
    every endpoint-1 module the vectors R w and L R^2 w (w spanning the
    first slice) are also compared for linear independence, mirroring the
    obstruction computation.  Returns a witness dict or None.
    """
    if not modules:
        raise DecompositionUnavailable("no module decomposition supplied")
    dp = bfs_layers(g, x)
    split = lfr_split(g, dp)
    witness = None
    reports = []
    for mod in modules:
        if mod.endpoint != 1:
            continue
        dims = mod.slice_dims()
        dim2 = dims.get(2, 0)
        w = mod.slice_basis(1)[0]
        rw = split.apply_R(1, w)
        if dp.eccentricity >= 3:
            lr2w = split.apply_L(3, split.apply_R(2, rw))
        else:
            lr2w = [0] * len(rw)
        basis = IntRowBasis(len(rw))
        independent = basis.add(rw) is not None and basis.add(lr2w) is not None
        report = {
            "module_dim": mod.dim,
            "slice_dims": dims,
            "rw_lr2w_independent": independent,
        }
        reports.append(report)
        if dim2 >= 2 and witness is None:
            witness = {"module": mod, "report": report}
    if witness is None:
        return None
    witness["all_endpoint1_reports"] = reports
    return witness
