"""Coefficient domains and the conversions between them.

Two domains are provided: the ring of integers :data:`ZZ` (Python ``int`` is
the arbitrary-precision pivot type) and word-size prime fields
:class:`ModularField`.  Elements are plain ``int`` values; the domain object
carries the arithmetic, so elements stay immutable and cheap to share.

:class:`Hom` maps elements of one domain into another.  Every pair of domains
has the generic route ``target.init(source.convert(x))`` through the
integers; pairs registered with :func:`register_direct` additionally get a
one-step specialization which must agree with the generic route.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import Exhausted, NonInvertible, NotPrime

MODULUS_BOUND = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for ``n < 3.3 * 10**24``."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) = s*a + t*b`` and ``g >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class IntegerRing:
    """The ring Z.  Use the module-level singleton :data:`ZZ`."""

    zero = 0
    one = 1

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash(IntegerRing)

    def init(self, z: int) -> int:
        return int(z)

    def convert(self, e: int) -> int:
        return e

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NonInvertible(f"{a} is not a unit of ZZ")

    def is_zero(self, a) -> bool:
        return a == 0

    def random_element(self, rng: random.Random, bound: int = 100) -> int:
        return rng.randint(-bound, bound)


ZZ = IntegerRing()


@dataclass(frozen=True)
class ModularField:
    """The prime field Z/pZ for a prime ``2 <= p < 2**31``.

    Elements are canonical residues in ``[0, p)``.
    """

    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        if not 2 <= p < MODULUS_BOUND:
            raise NotPrime(f"modulus {p} outside [2, 2**31)")
        if not is_prime(p):
            raise NotPrime(f"modulus {p} is not prime")

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def cardinality(self) -> int:
        return self.p

    def init(self, z: int) -> int:
        # Python's % already yields the nonnegative residue for negative z.
        return int(z) % self.p

    def convert(self, e: int) -> int:
        return e

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        d = a - b
        return d + self.p if d < 0 else d

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if a == 0:
            raise NonInvertible(f"0 has no inverse in GF({self.p})")
        g, s, _ = xgcd(a, self.p)
        if g != 1:
            raise NonInvertible(f"{a} is not invertible mod {self.p}")
        return s % self.p

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def elements(self) -> range:
        return range(self.p)

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)


def GF(p: int) -> ModularField:
    return ModularField(p)


# ---------------------------------------------------------------- Hom

_DIRECT: dict[tuple[type, type], Callable] = {}


def register_direct(source_type: type, target_type: type):
    """Register a direct conversion factory for a ``(source, target)`` type pair.

    The decorated function takes ``(source, target)`` domain instances and
    returns a unary element map.
    """

    def deco(factory):
        _DIRECT[(source_type, target_type)] = factory
        return factory

    return deco


@register_direct(IntegerRing, IntegerRing)
def _zz_to_zz(source, target):
    return lambda x: x


@register_direct(IntegerRing, ModularField)
def _zz_to_gf(source, target):
    p = target.p
    return lambda x: x % p


@register_direct(ModularField, ModularField)
def _gf_to_gf(source, target):
    if source.p == target.p:
        return lambda x: x
    # A canonical residue is already an Integer in [0, q); one reduction suffices.
    p = target.p
    if source.p < p:
        return lambda x: x
    return lambda x: x % p


GENERIC = "generic"
DIRECT = "direct"


@dataclass
class Hom:
    """Element map from ``source`` to ``target``.

    ``route`` is chosen from the type pair: ``"direct"`` when a specialization is
    registered, ``"generic"`` otherwise.  Pass ``route="generic"`` to force the
    route through the integers.
    """

    source: object
    target: object
    route: str | None = None
    _image: Callable = field(init=False, repr=False)

    def __post_init__(self):
        factory = _DIRECT.get((type(self.source), type(self.target)))
        if self.route is None:
            self.route = DIRECT if factory is not None else GENERIC
        if self.route == DIRECT:
            if factory is None:
                raise ValueError(
                    f"no direct conversion {self.source!r} -> {self.target!r}"
                )
            self._image = factory(self.source, self.target)
        elif self.route == GENERIC:
            self._image = self.generic_image
        else:
            raise ValueError(f"unknown route {self.route!r}")

    def image(self, x):
        return self._image(x)

    __call__ = image

    def generic_image(self, x):
        return self.target.init(self.source.convert(x))

    @property
    def image_function(self) -> Callable:
        """The bare element map, for tight loops."""
        return self._image


# ---------------------------------------------------------------- primes


class PrimeStream:
    """Yields distinct primes, hence pairwise coprime moduli.

    By default primes are produced in descending order strictly below
    ``start`` (``2**bits`` when ``start`` is not given).  With ``seed`` set,
    primes are drawn at random from ``[2**(bits-1), 2**bits)`` without
    repetition.

    Drawing is serialized by an internal lock, so concurrent drivers may share
    one stream.
    """

    def __init__(self, bits: int = 29, start: int | None = None, seed=None):
        if not 2 <= bits <= 31:
            raise ValueError(f"prime size {bits} bits outside [2, 31]")
        self.bits = bits
        self.seed = seed
        self._lock = threading.Lock()
        self._issued: set[int] = set()
        if seed is None:
            self._cursor = (1 << bits) if start is None else start
            if self._cursor > MODULUS_BOUND:
                raise ValueError(f"start {start} exceeds the word bound 2**31")
        else:
            if start is not None:
                raise ValueError("start and seed are mutually exclusive")
            self._rng = random.Random(seed)
            self._lo = max(2, 1 << (bits - 1))
            self._hi = 1 << bits

    @property
    def issued(self) -> int:
        return len(self._issued)

    def next_prime(self) -> int:
        with self._lock:
            p = self._descend() if self.seed is None else self._draw()
            self._issued.add(p)
            return p

    def __iter__(self) -> Iterator[int]:
        while True:
            try:
                yield self.next_prime()
            except Exhausted:
                return

    def _descend(self) -> int:
        c = self._cursor - 1
        while c >= 2:
            if is_prime(c):
                self._cursor = c
                return c
            c -= 1
        self._cursor = 2
        raise Exhausted("no primes left below the stream cursor")

    def _draw(self) -> int:
        lo, hi = self._lo, self._hi
        span = hi - lo
        c = self._rng.randrange(lo, hi)
        for k in range(span):
            q = lo + (c - lo + k) % span
            if q not in self._issued and is_prime(q):
                return q
        raise Exhausted(f"all primes in [{lo}, {hi}) already issued")
