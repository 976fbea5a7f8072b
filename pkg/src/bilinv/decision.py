"""Decision procedures: existence of invariant forms, the infinitesimal
variant, and the reality classifier.

Everything reads off the elementary divisors.  For an invertible T over
a field of characteristic 0 or > dim, a non-degenerate invariant form of
the requested symmetry exists iff

  (i)  every divisor p^k with p away from x -+ 1 is self-dual or paired
       with its dual divisor at equal multiplicity, and
  (ii) every (x -+ 1)^k divisor either has the parity matching the
       symmetry (k odd for symmetric, k even for skew) or occurs with
       even multiplicity,

plus an even ambient dimension in the skew case.  Infinitesimally the
same shape applies with additive duals, x^k playing the unipotent role
(k even needs even multiplicity for symmetric, k odd for skew).

Reality of T in the general linear group is divisor-multiset equality of
T and T^-1; real maps split into a symmetric-witness part and a
skew-witness part along their indecomposable summands.
"""

from dataclasses import dataclass, field as dc_field

from .canonical import (ElementaryDivisor, divisor_multiset,
                        elementary_divisors, indecomposable_decomposition)
from .certificates import (INFINITESIMAL, INVARIANT, SKEW, SYMMETRIC,
                           FormCertificate)
from .errors import SmallCharacteristic, Singular
from .linalg import Matrix, char_poly
from .poly import (DEFAULT_DEGREE_LIMIT, Poly, additive_dual_poly, dual_poly,
                   is_additively_self_dual, is_self_dual)

UNPAIRED_DUAL = "UnpairedDual"
BAD_UNIPOTENT_PARITY = "BadUnipotentParity"
ODD_DIMENSION_SKEW = "OddDimensionSkew"
UNPAIRED_ADDITIVE_DUAL = "UnpairedAdditiveDual"
BAD_NILPOTENT_PARITY = "BadNilpotentParity"


@dataclass
class ObstructionRecord:
    kind: str
    divisor: ElementaryDivisor
    detail: str

    def to_json(self):
        return {"kind": self.kind, "divisor": self.divisor.label(),
                "multiplicity": self.divisor.multiplicity,
                "detail": self.detail}


@dataclass
class DecisionReport:
    symmetry: str
    setting: str
    exists: bool
    obstructions: list
    divisors: list
    witness: FormCertificate = None

    def to_json(self):
        out = {
            "setting": self.setting,
            "symmetry": self.symmetry,
            "exists": self.exists,
            "divisors": [{"divisor": d.label(), "multiplicity": d.multiplicity}
                         for d in self.divisors],
            "obstructions": [o.to_json() for o in self.obstructions],
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _linear_root_pm_one(p: Poly):
    F = p.field
    if p.degree != 1:
        return None
    c = p.coeff(0)
    if c == F.neg(F.one):
        return "x - 1"
    if c == F.one:
        return "x + 1"
    return None


def _is_x(p: Poly) -> bool:
    return p.degree == 1 and p.field.is_zero(p.coeff(0))


def decide_invariant_form(T: Matrix, symmetry: str, construct: bool = False,
                          seed: int = 0,
                          degree_limit: int = DEFAULT_DEGREE_LIMIT
                          ) -> DecisionReport:
    """Does a T-invariant non-degenerate form of this symmetry exist?

    All violations are reported, not only the first.  With construct
    set, a verified witness certificate is attached to a positive
    report.
    """
    F = T.field
    n = T.nrows
    if not F.char_exceeds(n):
        raise SmallCharacteristic(
            f"need characteristic 0 or > {n}, have {F.characteristic}")
    if F.is_zero(char_poly(T).constant_term()):
        raise Singular("invariant-form decision needs an invertible map")
    divisors = elementary_divisors(T, seed=seed, degree_limit=degree_limit)
    have = divisor_multiset(divisors)
    obstructions = []
    if symmetry == SKEW and n % 2 == 1:
        anchor = divisors[0]
        obstructions.append(ObstructionRecord(
            ODD_DIMENSION_SKEW, anchor,
            f"ambient dimension {n} is odd"))
    for d in divisors:
        label = _linear_root_pm_one(d.p)
        if label is not None:
            ok = (d.k % 2 == 1) if symmetry == SYMMETRIC else (d.k % 2 == 0)
            if not ok and d.multiplicity % 2 == 1:
                need = "odd" if symmetry == SYMMETRIC else "even"
                obstructions.append(ObstructionRecord(
                    BAD_UNIPOTENT_PARITY, d,
                    f"({label})^{d.k} needs exponent {need} or even "
                    f"multiplicity, found multiplicity {d.multiplicity}"))
            continue
        if is_self_dual(d.p):
            continue
        dual_mult = have.get((dual_poly(d.p).coeffs, d.k), 0)
        if dual_mult != d.multiplicity:
            obstructions.append(ObstructionRecord(
                UNPAIRED_DUAL, d,
                f"dual divisor multiplicity {dual_mult} != {d.multiplicity}"))
    report = DecisionReport(symmetry, INVARIANT, not obstructions,
                            obstructions, divisors)
    if construct and report.exists:
        from .construction import construct_invariant_form
        report.witness = construct_invariant_form(T, symmetry)
    return report


def decide_infinitesimal_form(S: Matrix, symmetry: str,
                              construct: bool = False, seed: int = 0,
                              degree_limit: int = DEFAULT_DEGREE_LIMIT
                              ) -> DecisionReport:
    """Does B with S^t B + B S = 0, non-degenerate, of this symmetry
    exist?  S may be singular."""
    F = S.field
    n = S.nrows
    if not F.char_exceeds(n):
        raise SmallCharacteristic(
            f"need characteristic 0 or > {n}, have {F.characteristic}")
    divisors = elementary_divisors(S, seed=seed, degree_limit=degree_limit)
    have = divisor_multiset(divisors)
    obstructions = []
    if symmetry == SKEW and n % 2 == 1:
        obstructions.append(ObstructionRecord(
            ODD_DIMENSION_SKEW, divisors[0],
            f"ambient dimension {n} is odd"))
    for d in divisors:
        if _is_x(d.p):
            ok = (d.k % 2 == 1) if symmetry == SYMMETRIC else (d.k % 2 == 0)
            if not ok and d.multiplicity % 2 == 1:
                need = "odd" if symmetry == SYMMETRIC else "even"
                obstructions.append(ObstructionRecord(
                    BAD_NILPOTENT_PARITY, d,
                    f"x^{d.k} needs exponent {need} or even multiplicity, "
                    f"found multiplicity {d.multiplicity}"))
            continue
        if is_additively_self_dual(d.p):
            continue
        dual_mult = have.get((additive_dual_poly(d.p).coeffs, d.k), 0)
        if dual_mult != d.multiplicity:
            obstructions.append(ObstructionRecord(
                UNPAIRED_ADDITIVE_DUAL, d,
                f"additive dual multiplicity {dual_mult} != {d.multiplicity}"))
    report = DecisionReport(symmetry, INFINITESIMAL, not obstructions,
                            obstructions, divisors)
    if construct and report.exists:
        from .construction import construct_infinitesimal_form
        report.witness = construct_infinitesimal_form(S, symmetry)
    return report


@dataclass
class RealityReport:
    """Is T conjugate to its inverse, and the symmetric/skew splitting."""

    is_real: bool
    mismatches: list                    # (divisor of T, divisor of T^-1 | None)
    splitting: tuple = None             # (basis_1, basis_2) or None
    divisors: list = dc_field(default_factory=list)

    def to_json(self):
        out = {
            "is_real": self.is_real,
            "mismatches": [
                {"divisor": d.label(), "multiplicity": d.multiplicity,
                 "inverse_multiplicity":
                     (m.multiplicity if m is not None else 0)}
                for d, m in self.mismatches],
        }
        if self.splitting is not None:
            b1, b2 = self.splitting
            out["splitting"] = {
                "symmetric_part": b1.transpose().to_str_rows(),
                "skew_part": b2.transpose().to_str_rows(),
                "dims": [b1.ncols, b2.ncols],
            }
        return out


def decide_real(T: Matrix, seed: int = 0,
                degree_limit: int = DEFAULT_DEGREE_LIMIT) -> RealityReport:
    """T is real in GL(V) iff T and T^-1 share all elementary divisors.

    Both divisor lists are computed outright and compared as multisets.
    When T is real and the characteristic allows it, the summands are
    grouped into a part carrying a symmetric witness (odd unipotent-type
    exponents, self-dual and paired divisors) and a part carrying a skew
    witness (even unipotent-type exponents).
    """
    F = T.field
    if F.is_zero(char_poly(T).constant_term()):
        raise Singular("reality concerns invertible maps")
    div_T = elementary_divisors(T, seed=seed, degree_limit=degree_limit)
    div_inv = elementary_divisors(T.inverse(), seed=seed,
                                  degree_limit=degree_limit)
    inv_index = {(d.p.coeffs, d.k): d for d in div_inv}
    mismatches = []
    for d in div_T:
        other = inv_index.get((d.p.coeffs, d.k))
        if other is None or other.multiplicity != d.multiplicity:
            mismatches.append((d, other))
    is_real = not mismatches and \
        divisor_multiset(div_T) == divisor_multiset(div_inv)
    report = RealityReport(is_real, mismatches, divisors=div_T)
    if is_real and F.char_exceeds(T.nrows):
        summands = indecomposable_decomposition(T, seed=seed,
                                                degree_limit=degree_limit)
        sym_cols, skew_cols = [], []
        for s in summands:
            unipotent_type = (s.p.degree == 1
                              and s.p.coeff(0) in (F.one, F.neg(F.one)))
            if unipotent_type and s.k % 2 == 0:
                skew_cols.extend(s.basis.cols())
            else:
                sym_cols.extend(s.basis.cols())

        def to_matrix(cols):
            if not cols:
                return Matrix(F, [[] for _ in range(T.nrows)], coerce=False)
            return Matrix.from_cols(F, cols)

        report.splitting = (to_matrix(sym_cols), to_matrix(skew_cols))
    return report
