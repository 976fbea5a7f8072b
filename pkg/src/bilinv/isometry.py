"""Analysis of unipotent isometries of a verified form: orthogonal
decomposition into indecomposables and standard pairs, Witt index over
prime fields, and the level bounds.

The orthogonal decomposition peels the current space greedily at the top
nilpotency level k of N = T - I (after flipping the sign when the
minimal polynomial is a power of x + 1):

  * when the parity of k matches the symmetry, some vector v has
    B(v, N^(k-1) v) != 0; its N-chain spans a non-degenerate
    indecomposable summand and the B-orthogonal complement is invariant;
  * otherwise every chain Gram is degenerate on the anti-diagonal, and a
    standard pair is carved out instead: pick u of height k, a partner w
    pairing against N^(k-1) u, and make both chains totally isotropic by
    a triangular sweep of corrections c * N^s (partner); the correction
    at level j changes B(u, N^j u) by an invertible multiple of the
    pairing and leaves all higher levels alone, so the sweep terminates
    with exact zeros.

The Witt index over F_p (p odd) splits off hyperbolic planes repeatedly;
isotropic vectors come from a coordinate-plane square test and then a
deterministic lexicographic prefix scan that solves for the last
coordinate, so the search is exact and reproducible.
"""

from dataclasses import dataclass

from .certificates import (INVARIANT, SKEW, SYMMETRIC, FormCertificate,
                           symmetry_of, verify_gram)
from .errors import (Degenerate, NotSquare, NotUnipotent, NotUnipotentType,
                     RationalsUnsupported, SmallCharacteristic, UnverifiedForm)
from .fields import PrimeField, sqrt_mod
from .linalg import Matrix
from .poly import Poly

ODD_INDECOMPOSABLE = "OddIndecomposable"
EVEN_INDECOMPOSABLE = "EvenIndecomposable"
STANDARD_PAIR = "StandardPair"

WITHIN_WITT = "WithinWitt"
EVEN_DIM_2L = "EvenDim2l"
GENERAL_ODD = "GeneralOdd"
SYMPLECTIC_EVEN = "SymplecticEven"


@dataclass
class OrthogonalSummand:
    basis: Matrix          # ambient columns
    kind: str
    block_size: int        # k: chain length of each indecomposable piece
    halves: tuple = None   # (half_1, half_2) column matrices, standard pairs

    def to_json(self):
        return {"kind": self.kind, "block_size": self.block_size,
                "dim": self.basis.ncols,
                "basis": self.basis.transpose().to_str_rows()}


@dataclass
class OrthogonalSummandReport:
    summands: list
    symmetry: str

    def to_json(self):
        return {"symmetry": self.symmetry,
                "summands": [s.to_json() for s in self.summands]}


def _unipotent_sign(T: Matrix):
    """+1 / -1 when min poly of T is (x - 1)^k / (x + 1)^k, else None."""
    from .canonical import min_poly
    F = T.field
    m = min_poly(T)
    for sign in (1, -1):
        target = Poly.x_minus(F, F.coerce(sign)) ** m.degree
        if m == target:
            return sign
    return None


def _nilpotency_level(N: Matrix) -> int:
    k = 0
    P = Matrix.identity(N.field, N.nrows)
    while not P.is_zero():
        P = P * N
        k += 1
        if k > N.nrows:
            raise NotUnipotent("matrix is not unipotent")
    return k


def _bil(field, B, u, v):
    return field.dot(B.apply(v), u)


def _chain(N: Matrix, v, k: int):
    cols = [v]
    for _ in range(k - 1):
        cols.append(N.apply(cols[-1]))
    return cols


def _isotropize(field, B, N, k, u, partner):
    """Kill B(u, N^j u) for all j by corrections from the partner chain."""
    npow = [Matrix.identity(field, N.nrows)]
    for _ in range(k):
        npow.append(npow[-1] * N)
    for j in range(k - 2, -1, -2):
        psi = _bil(field, B, u, npow[j].apply(u))
        if field.is_zero(psi):
            continue
        z = npow[k - 1 - j].apply(partner)
        njz = npow[j].apply(z)
        lin = field.add(_bil(field, B, u, njz),
                        _bil(field, B, z, npow[j].apply(u)))
        quad = _bil(field, B, z, njz)
        assert field.is_zero(quad), "partner chain correction not linear"
        assert not field.is_zero(lin), "pairing lost during sweep"
        c = field.neg(field.div(psi, lin))
        u = tuple(field.add(a, field.mul(c, b)) for a, b in zip(u, z))
    for j in range(k):
        assert field.is_zero(_bil(field, B, u, npow[j].apply(u))), \
            "chain failed to isotropize"
    return u


def orthogonal_decomposition(T: Matrix, form) -> OrthogonalSummandReport:
    """Split a verified (T, B) with unipotent-type T orthogonally.

    `form` is a FormCertificate or a Gram Matrix; it is re-verified
    against T.  Every summand is exactly B-orthogonal to the others,
    carries a non-degenerate restriction, and is of the kind the
    symmetry admits: odd (resp. even) indecomposable chains, or standard
    pairs of two totally isotropic chains.
    """
    if isinstance(form, FormCertificate):
        B = form.gram
    else:
        B = form
    F = T.field
    if not T.is_square:
        raise NotSquare("isometry analysis needs a square matrix")
    symmetry = symmetry_of(B)
    if symmetry is None:
        raise UnverifiedForm("Gram matrix is neither symmetric nor skew")
    if not all(verify_gram(T, B, symmetry, INVARIANT).values()):
        raise UnverifiedForm("form does not verify against the map")
    sign = _unipotent_sign(T)
    if sign is None:
        raise NotUnipotentType(
            "minimal polynomial is not a power of (x - 1) or (x + 1)")
    W = T if sign == 1 else -T
    n = T.nrows
    ident = Matrix.identity(F, n)
    cols = ident                      # ambient basis of the current subspace
    T_cur, B_cur = W, B
    summands = []
    while cols.ncols > 0:
        d = cols.ncols
        N = T_cur - Matrix.identity(F, d)
        k = _nilpotency_level(N)
        nk1 = N ** (k - 1)
        parity_ok = (k % 2 == 1) == (symmetry == SYMMETRIC)
        if parity_ok:
            M2 = B_cur * nk1
            v = None
            for i in range(d):
                if not F.is_zero(M2.rows[i][i]):
                    v = tuple(F.one if t == i else F.zero for t in range(d))
                    break
            if v is None:
                for i in range(d):
                    for j in range(i + 1, d):
                        val = F.add(F.add(M2.rows[i][i], M2.rows[j][j]),
                                    F.add(M2.rows[i][j], M2.rows[j][i]))
                        if not F.is_zero(val):
                            v = tuple(F.one if t in (i, j) else F.zero
                                      for t in range(d))
                            break
                    if v is not None:
                        break
            assert v is not None, "no anisotropic top chain found"
            local = Matrix.from_cols(F, _chain(N, v, k))
            kind = ODD_INDECOMPOSABLE if symmetry == SYMMETRIC \
                else EVEN_INDECOMPOSABLE
            summand_cols = cols * local
            summands.append(OrthogonalSummand(summand_cols, kind, k))
        else:
            u = next(tuple(F.one if t == i else F.zero for t in range(d))
                     for i in range(d)
                     if any(not F.is_zero(c) for c in nk1.col(i)))
            lhs = Matrix(F, [B_cur.apply(nk1.apply(u))], coerce=False)
            w = tuple(lhs.solve_right(
                Matrix(F, [[F.one]], coerce=False)).col(0))
            u = _isotropize(F, B_cur, N, k, u, w)
            w = _isotropize(F, B_cur, N, k, w, u)
            half_u = Matrix.from_cols(F, _chain(N, u, k))
            half_w = Matrix.from_cols(F, _chain(N, w, k))
            local = half_u.hstack(half_w)
            summand_cols = cols * local
            summands.append(OrthogonalSummand(
                summand_cols, STANDARD_PAIR, k,
                halves=(cols * half_u, cols * half_w)))
        gram = local.transpose() * B_cur * local
        assert not F.is_zero(gram.det()), "summand restriction degenerate"
        # B-orthogonal complement inside the current subspace
        Z = (local.transpose() * B_cur).kernel_basis()
        if not Z:
            break
        Zm = Matrix.from_cols(F, Z)
        cols = cols * Zm
        T_cur = Zm.solve_right(T_cur * Zm)
        B_cur = Zm.transpose() * B_cur * Zm
    report = OrthogonalSummandReport(summands, symmetry)
    _validate_orthogonal_report(T, B, report)
    return report


def _validate_orthogonal_report(T, B, report):
    F = T.field
    total = 0
    for i, s in enumerate(report.summands):
        total += s.basis.ncols
        gram = s.basis.transpose() * B * s.basis
        assert not F.is_zero(gram.det())
        s.basis.solve_right(T * s.basis)    # invariance
        if s.kind == STANDARD_PAIR:
            for half in s.halves:
                assert (half.transpose() * B * half).is_zero()
        for other in report.summands[i + 1:]:
            assert (s.basis.transpose() * B * other.basis).is_zero()
    assert total == T.nrows


# --- Witt index -----------------------------------------------------------------

def _plane_isotropic(F, a, b, c):
    """t with a t^2 + 2 c t + b = 0 over F_p, a != 0; None if anisotropic."""
    p = F.p
    disc = (c * c - a * b) % p
    root = sqrt_mod(disc, p)
    if root is None:
        return None
    return (-c + root) * pow(a, p - 2, p) % p


def _isotropic_vector(F, B):
    """Deterministic isotropic vector of a non-degenerate symmetric B
    over F_p (dimension >= 2 assumed; None only in dimension 2)."""
    n = B.nrows
    p = F.p
    for i in range(n):
        if B.rows[i][i] == 0:
            return tuple(F.one if t == i else F.zero for t in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            t = _plane_isotropic(F, B.rows[i][i], B.rows[j][j], B.rows[i][j])
            if t is not None:
                return tuple(t if s == i else (F.one if s == j else F.zero)
                             for s in range(n))
    if n < 3:
        return None
    # lexicographic prefix scan, solving for the last coordinate; the
    # diagonal is all nonzero here so the trailing equation is quadratic
    from itertools import product as iproduct
    a_nn = B.rows[n - 1][n - 1]
    for prefix in iproduct(range(p), repeat=n - 1):
        if all(c == 0 for c in prefix):
            continue
        q1 = 2 * sum(prefix[i] * B.rows[i][n - 1] for i in range(n - 1)) % p
        q0 = sum(prefix[i] * B.rows[i][j] * prefix[j]
                 for i in range(n - 1) for j in range(n - 1)) % p
        # a_nn t^2 + q1 t + q0 = 0
        disc = (q1 * q1 - 4 * a_nn * q0) % p
        root = sqrt_mod(disc, p)
        if root is None:
            continue
        t = (-q1 + root) * pow(2 * a_nn, p - 2, p) % p
        return tuple(prefix) + (t,)
    raise AssertionError("no isotropic vector found in dimension >= 3")


def witt_index(B: Matrix, field=None) -> int:
    """Maximal dimension of a totally isotropic subspace, over F_p only.

    Skew forms have index n/2.  Symmetric forms are split by repeated
    extraction of hyperbolic planes; a 2-dimensional leftover is
    isotropic iff -det(B) is a square mod p.
    """
    F = field if field is not None else B.field
    if not isinstance(F, PrimeField):
        raise RationalsUnsupported(
            "Witt index computation is limited to odd prime fields")
    if F.p == 2:
        raise SmallCharacteristic("characteristic 2 is out of scope")
    symmetry = symmetry_of(B)
    if symmetry is None:
        raise Degenerate("Gram matrix is neither symmetric nor skew")
    if F.is_zero(B.det()):
        raise Degenerate("Witt index needs a non-degenerate form")
    if symmetry == SKEW:
        assert B.nrows % 2 == 0
        return B.nrows // 2
    p = F.p
    index = 0
    cur = B
    while cur.nrows >= 2:
        v = _isotropic_vector(F, cur)
        if v is None:
            break
        n = cur.nrows
        bv = cur.apply(v)
        j = next(i for i in range(n) if bv[i] != 0)
        w0 = tuple(F.one if t == j else F.zero for t in range(n))
        lam = F.div(cur.rows[j][j], F.mul(F.coerce(2), bv[j]))
        w = tuple(F.sub(a, F.mul(lam, b)) for a, b in zip(w0, v))
        assert F.is_zero(_bil(F, cur, w, w)) and F.is_zero(_bil(F, cur, v, v))
        index += 1
        rows = [cur.apply(v), cur.apply(w)]
        Z = Matrix(F, rows, coerce=False).kernel_basis()
        if not Z:
            return index
        Zm = Matrix.from_cols(F, Z)
        cur = Zm.transpose() * cur * Zm
    return index


# --- level bounds -----------------------------------------------------------------

@dataclass
class LevelReport:
    level: int
    witt_index: int
    dim: int
    bound_case: str
    bound_satisfied: bool

    def to_json(self):
        return {"level": self.level, "witt_index": self.witt_index,
                "dim": self.dim, "bound_case": self.bound_case,
                "bound_satisfied": self.bound_satisfied}


def level_analysis(T: Matrix, form) -> LevelReport:
    """Level of a unipotent isometry against the Witt index bounds.

    Symmetric: k <= l, or k odd with k <= 2l - 1 when dim = 2l, or k odd
    with k <= 2l + 1 when dim >= 2l + 1.  Skew: k <= l, or k even with
    k <= 2l.  A genuine unipotent isometry always satisfies its bound;
    the report records which case applied.
    """
    if isinstance(form, FormCertificate):
        B = form.gram
    else:
        B = form
    F = T.field
    if not isinstance(F, PrimeField):
        raise RationalsUnsupported(
            "level analysis needs the Witt index, available over F_p only")
    symmetry = symmetry_of(B)
    if symmetry is None:
        raise UnverifiedForm("Gram matrix is neither symmetric nor skew")
    if not all(verify_gram(T, B, symmetry, INVARIANT).values()):
        raise UnverifiedForm("form does not verify against the map")
    n = T.nrows
    k = _nilpotency_level(T - Matrix.identity(F, n))
    l = witt_index(B, F)
    if symmetry == SYMMETRIC:
        if k <= l:
            case, ok = WITHIN_WITT, True
        elif n == 2 * l:
            case, ok = EVEN_DIM_2L, (k % 2 == 1 and k <= 2 * l - 1)
        else:
            case, ok = GENERAL_ODD, (k % 2 == 1 and k <= 2 * l + 1)
    else:
        if k <= l:
            case, ok = WITHIN_WITT, True
        else:
            case, ok = SYMPLECTIC_EVEN, (k % 2 == 0 and k <= 2 * l)
    return LevelReport(k, l, n, case, ok)
