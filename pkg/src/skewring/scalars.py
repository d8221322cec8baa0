"""Exact scalar carriers: prime fields, the rationals, and modular rings.

Every computation in this package is exact; values are plain ints (modular
carriers) or Fractions (rationals), and all arithmetic goes through a
carrier object so code downstream never has to branch on the scalar kind.
"""

from fractions import Fraction


class CarrierError(ValueError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class ModCarrier:
    """Arithmetic modulo n.  A field exactly when n is prime."""

    def __init__(self, n, require_prime=False):
        if not isinstance(n, int) or n < 2:
            raise CarrierError(f"modulus must be an integer >= 2, got {n!r}")
        if require_prime and not _is_prime(n):
            raise CarrierError(f"gf carrier needs a prime modulus, got {n}")
        self.n = n
        self.is_field = _is_prime(n)
        self.is_finite = True
        self.zero = 0
        self.one = 1 % n

    @property
    def name(self):
        return f"gf:{self.n}" if self.is_field else f"zmod:{self.n}"

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def inv(self, a):
        if not self.is_field:
            raise CarrierError(f"division is not defined in {self.name}")
        if a % self.n == 0:
            raise ZeroDivisionError
        return pow(a, self.n - 2, self.n)

    def from_int(self, k):
        return k % self.n

    def elements(self):
        return range(self.n)

    def parse_value(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise CarrierError(f"{self.name} value must be an integer, got {v!r}")
        return v % self.n

    def encode_value(self, v):
        return v

    def __eq__(self, other):
        return isinstance(other, ModCarrier) and other.n == self.n

    def __hash__(self):
        return hash(("mod", self.n))

    def __repr__(self):
        return f"ModCarrier({self.n})"


class RationalCarrier:
    """Exact rational arithmetic via Fraction."""

    is_field = True
    is_finite = False
    name = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / Fraction(a)

    def from_int(self, k):
        return Fraction(k)

    def elements(self):
        raise CarrierError("the rationals cannot be enumerated")

    def parse_value(self, v):
        if isinstance(v, bool):
            raise CarrierError(f"rational value must be an int or 'a/b', got {v!r}")
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return Fraction(v)
        raise CarrierError(f"rational value must be an int or 'a/b', got {v!r}")

    def encode_value(self, v):
        v = Fraction(v)
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalCarrier)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "RationalCarrier()"


def parse_carrier(desc):
    """Build a carrier from 'gf:2' / 'q' / 'zmod:6' or the JSON object form."""
    if isinstance(desc, (ModCarrier, RationalCarrier)):
        return desc
    if isinstance(desc, str):
        if desc in ("q", "rational"):
            return RationalCarrier()
        kind, _, arg = desc.partition(":")
        if kind == "gf" and arg:
            return ModCarrier(int(arg), require_prime=True)
        if kind == "zmod" and arg:
            return ModCarrier(int(arg))
        raise CarrierError(f"unknown carrier {desc!r}")
    if isinstance(desc, dict):
        kind = desc.get("carrier", desc.get("kind"))
        if kind == "gf":
            return ModCarrier(int(desc["p"]), require_prime=True)
        if kind == "zmod":
            return ModCarrier(int(desc["n"]))
        if kind in ("q", "rational"):
            return RationalCarrier()
    raise CarrierError(f"unknown carrier {desc!r}")
