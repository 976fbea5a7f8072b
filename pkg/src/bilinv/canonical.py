"""Module structure of a linear map: invariant factors, elementary
divisors, primary decomposition, indecomposable summands with explicit
bases, and the semisimple/unipotent (or nilpotent) splitting.

Everything is driven by one kernel: the Smith normal form of xI - T over
F[x], computed with partial pivoting on lowest-degree entries.  Tracking
the inverse row transform yields, for each nonconstant invariant factor,
an explicit generator of the corresponding cyclic summand; splitting the
generators along the factorization of their annihilators produces the
indecomposable decomposition with a basis per summand.

Basis convention inside a summand with divisor p^k and generator v:

  * p = x - 1:  v, (T-I)v, ..., (T-I)^{deg-1} v          (chain basis)
  * p = x + 1:  v, -(T+I)v, (T+I)^2 v, ...               (signed chain)
  * otherwise:  v, Tv, T^2 v, ...                        (power basis)

so the restriction of T is the lower unit bidiagonal block (respectively
its negative, respectively the companion block) that the form
constructions assume.
"""

from dataclasses import dataclass

from .errors import NotSquare, Singular, SmallCharacteristic
from .linalg import (Matrix, char_poly, eval_poly_at_matrix, matrix_powers,
                     restriction)
from .poly import (DEFAULT_DEGREE_LIMIT, Poly, factor, invert_mod, poly_gcd)


# --- Smith normal form over F[x] -------------------------------------------

def _poly_identity(field, n):
    z, o = Poly.zero(field), Poly.one(field)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def smith_normal_form(A, track: bool = False):
    """Smith normal form of a square polynomial matrix.

    Returns (diag, pinv) where diag is the list of monic (or zero)
    diagonal entries with d_1 | d_2 | ... and, when track is set, pinv is
    the inverse of the accumulated row transform, as a polynomial matrix.
    Column transforms are not tracked (the applications never need them).
    """
    n = len(A)
    M = [row[:] for row in A]
    field = None
    for row in M:
        for e in row:
            field = e.field
            break
        break
    pinv = _poly_identity(field, n) if track else None

    def row_axpy(dst, src, q):
        # row_dst -= q * row_src ; inverse transform: col_src += q * col_dst
        for j in range(n):
            M[dst][j] = M[dst][j] - q * M[src][j]
        if track:
            for a in range(n):
                pinv[a][src] = pinv[a][src] + q * pinv[a][dst]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        if track:
            for a in range(n):
                pinv[a][i], pinv[a][j] = pinv[a][j], pinv[a][i]

    def row_add(dst, src):
        # row_dst += row_src ; inverse transform: col_src -= col_dst
        for j in range(n):
            M[dst][j] = M[dst][j] + M[src][j]
        if track:
            for a in range(n):
                pinv[a][src] = pinv[a][src] - pinv[a][dst]

    for t in range(n):
        while True:
            # lowest-degree nonzero pivot in the trailing block
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if not M[i][j].is_zero():
                        if best is None or M[i][j].degree < best[0]:
                            best = (M[i][j].degree, i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                for row in M:
                    row[t], row[bj] = row[bj], row[t]
            clean = True
            for r in range(t + 1, n):
                if not M[r][t].is_zero():
                    q = M[r][t] // M[t][t]
                    row_axpy(r, t, q)
                    if not M[r][t].is_zero():
                        clean = False
            for c in range(t + 1, n):
                if not M[t][c].is_zero():
                    q = M[t][c] // M[t][t]
                    for row in M:
                        row[c] = row[c] - q * row[t]
                    if not M[t][c].is_zero():
                        clean = False
            if not clean:
                continue
            if any(not M[r][t].is_zero() for r in range(t + 1, n)) or \
               any(not M[t][c].is_zero() for c in range(t + 1, n)):
                continue
            # enforce divisibility into the trailing block
            culprit = None
            for r in range(t + 1, n):
                for c in range(t + 1, n):
                    if not (M[r][c] % M[t][t]).is_zero():
                        culprit = r
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            row_add(t, culprit)
    diag = []
    for i in range(n):
        d = M[i][i]
        if not (d.is_zero() or d.is_monic()):
            lc = d.lc
            M[i][i] = d.monic()
            if track:
                for a in range(n):
                    pinv[a][i] = pinv[a][i].scale(lc)
        diag.append(M[i][i])
    return diag, pinv


def _char_matrix(T: Matrix):
    F = T.field
    n = T.nrows
    return [[Poly(F, ([F.neg(T.rows[i][j])] if i != j
                      else [F.neg(T.rows[i][j]), F.one]))
             for j in range(n)] for i in range(n)]


def invariant_factors(T: Matrix):
    """Monic invariant factors d_1 | ... | d_n of xI - T (constants included)."""
    if not T.is_square:
        raise NotSquare("invariant factors of a non-square matrix")
    diag, _ = smith_normal_form(_char_matrix(T))
    assert all(not d.is_zero() for d in diag)
    return diag


def min_poly(T: Matrix) -> Poly:
    """Monic minimal polynomial: the largest invariant factor of xI - T."""
    return invariant_factors(T)[-1]


# --- elementary divisors -----------------------------------------------------

@dataclass(frozen=True)
class ElementaryDivisor:
    """An irreducible power p^k occurring in `multiplicity` summands."""

    p: Poly
    k: int
    multiplicity: int

    @property
    def dim(self) -> int:
        return self.p.degree * self.k * self.multiplicity

    def sort_key(self):
        return (self.p.degree, self.p.coeffs, self.k)

    def label(self) -> str:
        base = self.p.to_str()
        return f"({base})^{self.k}" if self.k > 1 else f"({base})"


def elementary_divisors(T: Matrix, seed: int = 0,
                        degree_limit: int = DEFAULT_DEGREE_LIMIT):
    """Complete multiset of elementary divisors, deterministically ordered."""
    counts: dict = {}
    for d in invariant_factors(T):
        if d.degree < 1:
            continue
        for p, k in factor(d, seed=seed, degree_limit=degree_limit):
            counts[(p, k)] = counts.get((p, k), 0) + 1
    divisors = [ElementaryDivisor(p, k, m) for (p, k), m in counts.items()]
    divisors.sort(key=ElementaryDivisor.sort_key)
    total = sum(d.dim for d in divisors)
    assert total == T.nrows
    return divisors


def divisor_multiset(divisors):
    """Hashable multiset view {(p coeffs, k): multiplicity}."""
    return {(d.p.coeffs, d.k): d.multiplicity for d in divisors}


# --- primary decomposition ---------------------------------------------------

@dataclass
class PrimaryDecomposition:
    """Splitting V = V_1 + V_-1 + V_o along eigenvalues 1, -1 and the rest."""

    e: int                 # exponent of (x - 1) in the characteristic poly
    f: int                 # exponent of (x + 1)
    chi_o: Poly            # reduced characteristic polynomial
    basis_plus: Matrix     # columns spanning the generalized 1-eigenspace
    basis_minus: Matrix
    basis_o: Matrix
    T_o: Matrix            # restriction of T to V_o in basis_o


def _strip_linear_factor(chi: Poly, a):
    lin = Poly.x_minus(chi.field, a)
    e = 0
    while chi.degree > 0:
        q, r = divmod(chi, lin)
        if not r.is_zero():
            break
        chi, e = q, e + 1
    return chi, e


def primary_decomposition(T: Matrix) -> PrimaryDecomposition:
    if not T.is_square:
        raise NotSquare("primary decomposition of a non-square matrix")
    F = T.field
    n = T.nrows
    chi = char_poly(T)
    if F.is_zero(chi.constant_term()):
        raise Singular("primary decomposition requires an invertible map")
    chi_o, e = _strip_linear_factor(chi, F.one)
    chi_o, f = _strip_linear_factor(chi_o, F.neg(F.one))

    def kernel_cols(M):
        ker = M.kernel_basis()
        if not ker:
            return Matrix(F, [[] for _ in range(n)], coerce=False)
        return Matrix.from_cols(F, ker)

    ident = Matrix.identity(F, n)
    basis_plus = kernel_cols((T - ident) ** e) if e else \
        Matrix(F, [[] for _ in range(n)], coerce=False)
    basis_minus = kernel_cols((T + ident) ** f) if f else \
        Matrix(F, [[] for _ in range(n)], coerce=False)
    basis_o = kernel_cols(eval_poly_at_matrix(chi_o, T)) if chi_o.degree else \
        Matrix(F, [[] for _ in range(n)], coerce=False)
    assert basis_plus.ncols == e and basis_minus.ncols == f
    assert basis_o.ncols == chi_o.degree
    stacked = basis_plus.hstack(basis_minus).hstack(basis_o)
    assert stacked.rank() == n, "primary blocks do not span"
    T_o = restriction(T, basis_o) if basis_o.ncols else \
        Matrix(F, [], coerce=False)
    return PrimaryDecomposition(e, f, chi_o, basis_plus, basis_minus,
                                basis_o, T_o)


# --- indecomposable decomposition --------------------------------------------

@dataclass
class IndecomposableSummand:
    """One cyclic summand with annihilator p^k and an explicit basis."""

    p: Poly
    k: int
    copy_index: int
    basis: Matrix          # n x (deg p * k) columns in the ambient basis
    cyclic_vector: tuple

    @property
    def dim(self) -> int:
        return self.p.degree * self.k

    def divisor_key(self):
        return (self.p.coeffs, self.k)


def _summand_basis(T: Matrix, p: Poly, k: int, v, powers):
    F = T.field
    r = p.degree * k
    if p.degree == 1 and p.coeff(0) in (F.neg(F.one), F.one):
        lam = F.neg(p.coeff(0))      # p = x - lam with lam = +-1
        ident = Matrix.identity(F, T.nrows)
        N = T - ident if lam == F.one else T + ident
        cols = [v]
        for i in range(1, r):
            cols.append(N.apply(cols[-1]))
        if lam != F.one:
            cols = [tuple(F.neg(c) for c in col) if i % 2 else col
                    for i, col in enumerate(cols)]
        return Matrix.from_cols(F, cols)
    cols = [v]
    for i in range(1, r):
        cols.append(powers[1].apply(cols[-1]))
    return Matrix.from_cols(F, cols)


def indecomposable_decomposition(T: Matrix, seed: int = 0,
                                 degree_limit: int = DEFAULT_DEGREE_LIMIT):
    """Split V into T-cyclic summands, one per elementary divisor copy.

    Generators come from the tracked Smith form of xI - T projected to
    each invariant-factor summand, then separated along the coprime
    factorization of the annihilator.  The direct-sum property is
    verified exactly before returning.
    """
    if not T.is_square:
        raise NotSquare("decomposition of a non-square matrix")
    F = T.field
    n = T.nrows
    diag, pinv = smith_normal_form(_char_matrix(T), track=True)
    max_deg = max([n] + [e.degree for row in pinv for e in row])
    powers = matrix_powers(T, max(1, max_deg))
    summands = []
    for idx in range(n):
        d = diag[idx]
        if d.degree < 1:
            continue
        gen = tuple(F.zero for _ in range(n))
        for j in range(n):
            entry = pinv[j][idx]
            if entry.is_zero():
                continue
            col = tuple(eval_poly_at_matrix(entry, T, powers).col(j))
            gen = tuple(F.add(a, b) for a, b in zip(gen, col))
        assert all(F.is_zero(c)
                   for c in eval_poly_at_matrix(d, T, powers).apply(gen)), \
            "generator not annihilated by its invariant factor"
        for p, k in factor(d, seed=seed, degree_limit=degree_limit):
            cof = d // p ** k
            w = eval_poly_at_matrix(cof, T, powers).apply(gen)
            basis = _summand_basis(T, p, k, w, powers)
            summands.append(IndecomposableSummand(p, k, 0, basis, w))
    summands.sort(key=lambda s: (s.p.degree, s.p.coeffs, s.k))
    counters: dict = {}
    for s in summands:
        key = s.divisor_key()
        s.copy_index = counters.get(key, 0)
        counters[key] = s.copy_index + 1
    if summands:
        whole = summands[0].basis
        for s in summands[1:]:
            whole = whole.hstack(s.basis)
        assert whole.ncols == n and whole.rank() == n, \
            "summand bases do not assemble to a basis"
        for s in summands:
            restriction(T, s.basis)   # raises Singular unless invariant
    return summands


# --- semisimple / unipotent splitting ----------------------------------------

@dataclass
class JordanChevalley:
    """Commuting exact splitting of a map into semisimple and unipotent
    (multiplicative) or semisimple and nilpotent (additive) parts."""

    semisimple: Matrix
    unipotent_or_nilpotent: Matrix
    mode: str  # "multiplicative" | "additive"


def jordan_chevalley(T: Matrix, mode: str = "multiplicative") -> JordanChevalley:
    """Newton iteration on the squarefree part of the minimal polynomial.

    Large characteristic keeps the squarefree part separable, which the
    iteration needs; the computed parts are polynomials in T, hence the
    splitting commutes with everything commuting with T.
    """
    if mode not in ("multiplicative", "additive"):
        raise ValueError(f"unknown mode {mode!r}")
    if not T.is_square:
        raise NotSquare("Jordan-Chevalley of a non-square matrix")
    F = T.field
    n = T.nrows
    if not F.char_exceeds(n):
        raise SmallCharacteristic(
            f"need characteristic 0 or > {n}, have {F.characteristic}")
    m = min_poly(T)
    rad = m // poly_gcd(m, m.derivative())
    z = Poly.x(F) % m if m.degree > 1 else Poly.x(F)
    steps = 0
    while not (rad.compose(z) % m).is_zero():
        u = invert_mod(rad.derivative().compose(z) % m, m)
        z = (z - (rad.compose(z) % m) * u) % m
        steps += 1
        assert steps <= n + 1, "Newton iteration failed to converge"
    Ts = eval_poly_at_matrix(z, T)
    if mode == "additive":
        part = T - Ts
        assert (part ** n).is_zero(), "additive part not nilpotent"
    else:
        chi0 = char_poly(T).constant_term()
        if F.is_zero(chi0):
            raise Singular("multiplicative splitting needs an invertible map")
        part = Ts.inverse() * T
        ident = Matrix.identity(F, n)
        assert ((part - ident) ** n).is_zero(), "quotient not unipotent"
    assert Ts * part == part * Ts
    ms = min_poly(Ts)
    assert poly_gcd(ms, ms.derivative()).is_one(), \
        "semisimple part has a repeated factor"
    return JordanChevalley(Ts, part, mode)
