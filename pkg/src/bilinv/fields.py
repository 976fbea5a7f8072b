"""Exact scalar arithmetic over Q and over prime fields F_p.

A field object owns the representation of its scalars and performs all
arithmetic on them; the scalars themselves are plain values:

  * over Q, a scalar is a ``fractions.Fraction`` (always in lowest terms
    with positive denominator),
  * over F_p, a scalar is an ``int`` in ``[0, p)``.

Containers (polynomials, matrices) carry a reference to their field and
coerce every entry on construction, so scalars of different fields never
meet in arithmetic; cross-field container operations raise MixedFields.

Scalar text form: ``"a/b"`` or ``"a"`` over Q, a decimal residue over F_p.
"""

from fractions import Fraction

from .errors import MixedFields, ZeroInverse


def is_prime(n: int) -> bool:
    """Deterministic trial division; intended for moduli up to ~10**6."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of the two scalar fields."""

    characteristic = 0

    def char_exceeds(self, n: int) -> bool:
        """True when the characteristic is 0 or greater than n."""
        return self.characteristic == 0 or self.characteristic > n

    def require_same(self, other: "Field") -> None:
        if self != other:
            raise MixedFields(f"cannot mix scalars of {self} and {other}")

    # subclasses provide: zero, one, coerce, add, sub, mul, neg, inv,
    # div, is_zero, parse, to_str, dot


class RationalField(Field):
    """The field Q with Fraction scalars."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroInverse("0 has no inverse in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroInverse("division by zero in Q")
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def dot(self, xs, ys):
        return sum((x * y for x, y in zip(xs, ys)), Fraction(0))

    def parse(self, text: str):
        return Fraction(text.strip())

    def to_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    """The field F_p with residues stored in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            # exact rational literals are accepted when the denominator
            # is invertible mod p
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise ZeroInverse(f"denominator of {x} vanishes mod {self.p}")
            return num * pow(den, self.p - 2, self.p) % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(text) % self.p

    def to_str(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"


QQ = RationalField()


def sqrt_mod(a: int, p: int):
    """Square root of a mod an odd prime p, or None for a non-residue.

    Tonelli-Shanks with a deterministic scan for the auxiliary
    non-residue, so the returned root is reproducible; of the two roots
    the smaller representative is returned.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # write p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)
