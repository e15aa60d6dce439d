"""Number field descriptors and Dirichlet characters.

Field invariants are tabulated, not computed.  Characters are stored in
exponent form: chi(a) = exp(2 pi i k(a) / E) with E the exponent of the
unit group, so group-theoretic checks are exact integer arithmetic.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

__all__ = [
    "NumberFieldDescriptor",
    "DirichletCharacter",
    "UnknownFieldError",
    "make_field",
    "catalogue_labels",
    "characters_mod",
    "kronecker_character",
    "kronecker_symbol",
    "is_fundamental_discriminant",
    "factorize",
]


class UnknownFieldError(KeyError):
    pass


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation (small inputs only)."""
    n = abs(int(n))
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _totient(m: int) -> int:
    r = m
    for p in factorize(m):
        r = r // p * (p - 1)
    return r


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod m given as exponents k(a) with chi(a) = e^{2 pi i k(a)/order}."""

    modulus_m: int
    order: int  # exponent of (Z/mZ)*, i.e. common denominator of the exponents
    exponents: Mapping[int, int]  # residue a (coprime to m, 0 <= a < m) -> k mod order
    conductor: int
    label: str = ""

    @property
    def is_principal(self) -> bool:
        return all(k % self.order == 0 for k in self.exponents.values())

    @property
    def values(self) -> dict[int, complex]:
        return {a: self._root(k) for a, k in self.exponents.items()}

    def _root(self, k: int) -> complex:
        k %= self.order
        # exact values at the quarter turns keep real characters exactly real
        q, r = divmod(4 * k, self.order)
        if r == 0:
            return (1 + 0j, 1j, -1 + 0j, -1j)[q]
        return cmath.exp(2j * math.pi * k / self.order)

    def __call__(self, n: int) -> complex:
        a = int(n) % self.modulus_m
        k = self.exponents.get(a)
        if k is None:
            return 0j
        return self._root(k)

    def is_real(self) -> bool:
        return all((2 * k) % self.order == 0 for k in self.exponents.values())

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus_m, self.order,
                                  {a: (-k) % self.order for a, k in self.exponents.items()},
                                  self.conductor, self.label + "*")

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus_m != self.modulus_m:
            raise ValueError("characters have different moduli")
        E = math.lcm(self.order, other.order)
        ex = {a: (self.exponents[a] * (E // self.order) + other.exponents[a] * (E // other.order)) % E
              for a in self.exponents}
        return _normalize(self.modulus_m, E, ex)

    def key(self) -> tuple:
        """Canonical identity for comparisons (reduced exponent fractions)."""
        return (self.modulus_m, tuple(sorted(
            (a, _frac_key(k, self.order)) for a, k in self.exponents.items())))

    def __eq__(self, other):
        return isinstance(other, DirichletCharacter) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def primitive(self) -> "DirichletCharacter":
        """The primitive character mod the conductor that induces this one."""
        f = self.conductor
        if f == self.modulus_m:
            return self
        ex = {}
        for b in range(f):
            if math.gcd(b, f) != 1:
                continue
            # lift b to a residue mod m coprime to m
            a = b
            while math.gcd(a, self.modulus_m) != 1:
                a += f
            ex[b % f if f > 1 else 0] = self.exponents[a % self.modulus_m]
        if f == 1:
            ex = {0: 0}
        return DirichletCharacter(f, self.order, ex, f, self.label + "~")

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus_m


def _frac_key(k: int, E: int):
    k %= E
    g = math.gcd(k, E)
    return (k // g, E // g)


def _conductor(m: int, ex: Mapping[int, int], E: int) -> int:
    for d in sorted(d for d in range(1, m + 1) if m % d == 0):
        if all(ex[a] % E == 0 for a in ex if a % d == 1 % d):
            return d
    return m


def _normalize(m: int, E: int, ex: dict[int, int], label: str = "") -> DirichletCharacter:
    return DirichletCharacter(m, E, dict(sorted(ex.items())), _conductor(m, ex, E), label)


def _cyclic_factors(m: int):
    """Decompose (Z/mZ)* into cyclic factors.

    Returns a list of (generator mod m, order) and a function giving the
    discrete-log vector of a unit.
    """
    gens = []
    for p, k in sorted(factorize(m).items()):
        q = p ** k
        rest = m // q
        if p == 2:
            if k == 1:
                continue
            if k == 2:
                local = [(q - 1, 2)]
            else:
                local = [(q - 1, 2), (5, 2 ** (k - 2))]
        else:
            g = _primitive_root(p, k)
            local = [(g, q // p * (p - 1))]
        for g_local, order in local:
            # CRT: g = g_local mod q, 1 mod rest
            g = _crt(g_local, q, 1, rest)
            gens.append((g, order))
    return gens


def _primitive_root(p: int, k: int) -> int:
    q = p ** k
    phi = q // p * (p - 1)
    primes = list(factorize(phi))
    for g in range(2, q):
        if math.gcd(g, p) != 1:
            continue
        if all(pow(g, phi // r, q) != 1 for r in primes):
            return g
    raise ArithmeticError("no primitive root")


def _crt(a1, m1, a2, m2):
    if m2 == 1:
        return a1 % m1
    return (a1 + m1 * ((a2 - a1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


@lru_cache(maxsize=None)
def _unit_logs(m: int):
    gens = _cyclic_factors(m)
    units = [a for a in range(m) if math.gcd(a, m) == 1] if m > 1 else [0]
    # enumerate the group from generators to build the log table
    logs = {1 % m: tuple(0 for _ in gens)}
    frontier = [1 % m]
    for j, (g, order) in enumerate(gens):
        new = []
        for base in list(logs):
            x = base
            for e in range(1, order):
                x = x * g % m
                if x not in logs:
                    v = list(logs[base])
                    v[j] = e
                    logs[x] = tuple(v)
                    new.append(x)
        frontier += new
    if len(logs) != len(units):
        raise ArithmeticError(f"unit group enumeration failed for m={m}")
    return gens, logs


def characters_mod(m: int) -> list[DirichletCharacter]:
    """All phi(m) Dirichlet characters mod m, principal first."""
    if not 1 <= m <= 100:
        raise ValueError("modulus must satisfy 1 <= m <= 100")
    gens, logs = _unit_logs(m)
    orders = [o for _, o in gens]
    E = math.lcm(*orders) if orders else 1
    out = []

    def rec(j, choice):
        if j == len(orders):
            ex = {a: sum(c * v * (E // o) for c, v, o in zip(choice, logs[a], orders)) % E
                  for a in logs}
            out.append(_normalize(m, E, ex, f"chi_{m}[{','.join(map(str, choice))}]"))
            return
        for c in range(orders[j]):
            rec(j + 1, choice + [c])

    rec(0, [])
    out.sort(key=lambda c: (not c.is_principal, c.label))
    return out


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol (d|n) for n >= 0."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d|n), n odd positive
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    if d % 4 == 1:
        return _squarefree(abs(d))
    if d % 4 == 0:
        q = d // 4
        return q % 4 in (2, 3) and _squarefree(abs(q))
    return False


def kronecker_character(d: int) -> DirichletCharacter:
    """The real character n -> (d|n) mod |d| attached to a fundamental discriminant."""
    if not is_fundamental_discriminant(d) or abs(d) > 100:
        raise ValueError(f"{d} is not a fundamental discriminant with |d| <= 100")
    m = abs(d)
    if m == 1:
        return DirichletCharacter(1, 1, {0: 0}, 1, "chi_1")
    ex = {}
    for a in range(m):
        if math.gcd(a, m) != 1:
            continue
        k = kronecker_symbol(d, a)
        ex[a] = 0 if k == 1 else 1
    return _normalize(m, 2, ex, f"chi_{d}")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumberFieldDescriptor:
    label: str
    degree_n: int
    r1: int
    r2: int
    discriminant: int  # signed
    class_number_h: int
    regulator_R: float
    roots_of_unity_w: int
    # how zeta_k factors: ('Q',), ('quadratic', d) or ('cyclotomic', m)
    kind: tuple = field(default=("Q",))

    def __post_init__(self):
        if self.r1 + 2 * self.r2 != self.degree_n:
            raise ValueError("signature does not match degree")
        if self.roots_of_unity_w % 2:
            raise ValueError("w must be even")

    @property
    def abs_discriminant(self) -> int:
        return abs(self.discriminant)

    @property
    def lambda_k(self) -> float:
        return 2 ** self.r1 * self.class_number_h * self.regulator_R / self.roots_of_unity_w

    @property
    def residue_at_one(self) -> float:
        """Residue of zeta_k at s=1 from the analytic class number formula."""
        return (2 ** self.r1 * (2 * math.pi) ** self.r2 * self.class_number_h * self.regulator_R
                / (self.roots_of_unity_w * math.sqrt(self.abs_discriminant)))

    def as_dict(self) -> dict:
        return {
            "label": self.label, "degree_n": self.degree_n, "r1": self.r1, "r2": self.r2,
            "abs_discriminant": self.abs_discriminant, "discriminant": self.discriminant,
            "class_number_h": self.class_number_h, "regulator_R": self.regulator_R,
            "roots_of_unity_w": self.roots_of_unity_w, "lambda_k": self.lambda_k,
        }


_LOG_PHI = math.log((1 + math.sqrt(5)) / 2)

# label -> (n, r1, r2, disc, h, R, w, kind)
# Values are the classical tables (e.g. Washington, "Introduction to Cyclotomic
# Fields", and the LMFDB number field pages).  For CM fields the regulator is
# 2^{r2-1} R^+ / Q with R^+ the regulator of the maximal real subfield and Q the
# Hasse unit index (Q=1 for prime-power conductor, Q=2 for m=12); the values are
# cross-checked numerically against the class number formula in the tests.
_TABLE = {
    "Q": (1, 1, 0, 1, 1, 1.0, 2, ("Q",)),
    "Q(i)": (2, 0, 1, -4, 1, 1.0, 4, ("quadratic", -4)),
    "Q(sqrt(-1))": (2, 0, 1, -4, 1, 1.0, 4, ("quadratic", -4)),
    "Q(sqrt(-2))": (2, 0, 1, -8, 1, 1.0, 2, ("quadratic", -8)),
    "Q(sqrt(-3))": (2, 0, 1, -3, 1, 1.0, 6, ("quadratic", -3)),
    "Q(sqrt(-7))": (2, 0, 1, -7, 1, 1.0, 2, ("quadratic", -7)),
    "Q(sqrt(-11))": (2, 0, 1, -11, 1, 1.0, 2, ("quadratic", -11)),
    "Q(sqrt(2))": (2, 2, 0, 8, 1, math.log(1 + math.sqrt(2)), 2, ("quadratic", 8)),
    "Q(sqrt(3))": (2, 2, 0, 12, 1, math.log(2 + math.sqrt(3)), 2, ("quadratic", 12)),
    "Q(sqrt(5))": (2, 2, 0, 5, 1, _LOG_PHI, 2, ("quadratic", 5)),
    "Q(zeta_3)": (2, 0, 1, -3, 1, 1.0, 6, ("cyclotomic", 3)),
    "Q(zeta_4)": (2, 0, 1, -4, 1, 1.0, 4, ("cyclotomic", 4)),
    "Q(zeta_5)": (4, 0, 2, 125, 1, 2 * _LOG_PHI, 10, ("cyclotomic", 5)),
    "Q(zeta_8)": (4, 0, 2, 256, 1, 2 * math.log(1 + math.sqrt(2)), 8, ("cyclotomic", 8)),
    "Q(zeta_12)": (4, 0, 2, 144, 1, math.log(2 + math.sqrt(3)), 12, ("cyclotomic", 12)),
}

_ALIASES = {
    "QQ": "Q", "Q(zeta_1)": "Q", "Q(zeta_2)": "Q", "Q(sqrt(-d))": None,
    "Q(sqrt(1))": "Q", "Q(zeta3)": "Q(zeta_3)", "Q(zeta4)": "Q(zeta_4)",
    "Q(zeta5)": "Q(zeta_5)", "Q(zeta8)": "Q(zeta_8)", "Q(zeta12)": "Q(zeta_12)",
}


def _canon(label: str) -> str:
    s = label.strip().replace(" ", "").replace("√", "sqrt").replace("ζ", "zeta_")
    s = s.replace("ℚ", "Q").replace("zeta__", "zeta_")
    m = re.fullmatch(r"Q\(sqrt\(?(-?\d+)\)?\)", s)
    if m:
        s = f"Q(sqrt({m.group(1)}))"
    return _ALIASES.get(s, s) or s


def catalogue_labels() -> list[str]:
    return list(_TABLE)


def make_field(label: str) -> NumberFieldDescriptor:
    key = _canon(label)
    if key not in _TABLE:
        raise UnknownFieldError(f"unknown field label {label!r}")
    n, r1, r2, d, h, R, w, kind = _TABLE[key]
    return NumberFieldDescriptor(key, n, r1, r2, d, h, R, w, kind)
