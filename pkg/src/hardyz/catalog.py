"""Built-in catalog of L-function data.

A SelbergDatum packages everything the evaluator needs: the Dirichlet
coefficients a(n) (through a provider object), the gamma-factor shape
(Q, lambda_j, mu_j), the root number omega, and the order m_F of the pole
at s = 1.  The degree is 2 * sum(lambda_j).

Built-in data, all with real coefficients and omega = +1:

  zeta   Riemann zeta            Q = pi^(-1/2), lambda = (1/2,), mu = (0,)
  chi3   L(s, chi_3), chi_3 the quadratic character mod 3 (odd)
  chi4   L(s, chi_4), chi_4 the quadratic character mod 4 (odd)
  chi5   L(s, chi_5), chi_5 the quadratic character mod 5 (even)
  delta  L(s, Delta) for the weight-12 cusp form, analytic normalization.
         Experimental: series truncation in the critical strip is slow to
         converge, so this entry must be requested explicitly.

Construction validates the axioms it can check cheaply: a(1) = 1, positive
lambda, real nonnegative mu, omega = +-1, a coefficient growth bound, and
(for the entries that converge there) a functional-equation residual at a
generic point.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import AxiomViolationError, CatalogError, DomainError, PrecisionError

_COEFF_CAP = 100_000


class ConstantOneProvider:
    """a(n) = 1 for all n (the Riemann zeta coefficients)."""

    kind = "constant-one"

    def block(self, n_max: int) -> np.ndarray:
        return np.ones(n_max, dtype=np.float64)


class PeriodicProvider:
    """a(n) = table[n mod q]; covers Dirichlet characters."""

    kind = "periodic"

    def __init__(self, table: tuple[float, ...]):
        self.table = tuple(float(x) for x in table)

    def block(self, n_max: int) -> np.ndarray:
        q = len(self.table)
        reps = np.arange(1, n_max + 1) % q
        return np.asarray(self.table, dtype=np.float64)[reps]


class CuspFormProvider:
    """Normalized Ramanujan tau: a(n) = tau(n) / n^(11/2).

    tau comes from the q-expansion Delta = q * prod (1 - q^m)^24, computed
    exactly: the cube of the Euler product is the sparse Jacobi series
    sum (-1)^k (2k+1) q^(k(k+1)/2), and three integer polynomial squarings
    give the 24th power.  Results are cached and extended on demand.
    """

    kind = "cusp-form"

    def __init__(self):
        self._tau: list[int] = []  # tau(1), tau(2), ...
        self._lock = threading.Lock()

    @staticmethod
    def _tau_block(n_max: int) -> list[int]:
        cube = [0] * n_max
        k = 0
        while k * (k + 1) // 2 < n_max:
            cube[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
            k += 1

        # plain truncated self-convolution; exact integers cannot overflow
        def conv(c: list[int]) -> list[int]:
            out = [0] * n_max
            for i, ci in enumerate(c):
                if not ci:
                    continue
                lim = n_max - i
                for j in range(min(lim, len(c))):
                    cj = c[j]
                    if cj:
                        out[i + j] += ci * cj
            return out

        p6 = conv(cube)
        p12 = conv(p6)
        p24 = conv(p12)
        return p24  # tau(n) = p24[n-1] since Delta = q * prod(...)

    def tau(self, n_max: int) -> list[int]:
        if n_max > _COEFF_CAP:
            raise PrecisionError(f"tau expansion limited to n <= {_COEFF_CAP}")
        with self._lock:
            if len(self._tau) < n_max:
                self._tau = self._tau_block(n_max)
            return self._tau[:n_max]

    def block(self, n_max: int) -> np.ndarray:
        t = np.array(self.tau(n_max), dtype=np.float64)
        n = np.arange(1, n_max + 1, dtype=np.float64)
        return t / n ** 5.5


@dataclass(frozen=True)
class SelbergDatum:
    """Structural data of one L-function."""

    name: str
    q_factor: float                    # Q in the completed form Q^s * gammas
    lambdas: tuple[float, ...]
    mus: tuple[float, ...]
    omega: float                       # root number, +-1 for real data
    pole_order: int                    # m_F, order of the pole at s = 1
    provider: object = field(compare=False, repr=False)
    experimental: bool = False

    @property
    def degree(self) -> float:
        return 2.0 * sum(self.lambdas)

    def coefficient_block(self, n_max: int) -> np.ndarray:
        return self.provider.block(n_max)


def _validate_structure(d: SelbergDatum) -> None:
    if d.q_factor <= 0:
        raise AxiomViolationError(f"{d.name}: Q must be positive")
    if len(d.lambdas) != len(d.mus) or not d.lambdas:
        raise AxiomViolationError(f"{d.name}: gamma-factor shape lists must match and be nonempty")
    if any(l <= 0 for l in d.lambdas):
        raise AxiomViolationError(f"{d.name}: lambda factors must be positive")
    if any(m < 0 for m in d.mus):
        raise AxiomViolationError(f"{d.name}: mu shifts must be real and nonnegative")
    if d.omega not in (1.0, -1.0):
        raise AxiomViolationError(f"{d.name}: omega must be +-1 for real coefficient data")
    if d.pole_order not in (0, 1):
        raise AxiomViolationError(f"{d.name}: pole order must be 0 or 1")
    block = d.coefficient_block(200)
    if abs(block[0] - 1.0) > 1e-14:
        raise AxiomViolationError(f"{d.name}: leading coefficient a(1) must be 1")
    n = np.arange(1, 201, dtype=np.float64)
    if np.any(np.abs(block) > 8.0 * np.sqrt(n)):
        raise AxiomViolationError(f"{d.name}: coefficient growth violates |a(n)| << n^(1/2)")


def _validate_functional_equation(d: SelbergDatum) -> None:
    """Residual of xi(s) = omega * xi(1 - s) at a generic point.

    Uses the direct completed form on both sides; for the built-in entries
    with convergent continuation this is an independent consistency check of
    (Q, lambdas, mus, omega) against the coefficients.
    """
    from .evaluator import l_value
    from .specfun import log_gamma

    s0 = 2.35 + 1.2j

    def xi(s: complex) -> complex:
        lg = sum(log_gamma(l * s + m) for l, m in zip(d.lambdas, d.mus))
        pref = (s * (s - 1.0)) ** d.pole_order
        return pref * np.exp(s * math.log(d.q_factor) + lg) * l_value(d, s).value

    a = xi(s0)
    b = d.omega * xi(1.0 - s0)
    if abs(a - b) > 1e-8 * max(abs(a), abs(b)):
        raise AxiomViolationError(f"{d.name}: functional equation residual {abs(a - b):.2e} at s = {s0}")


def _validate_hecke(provider: CuspFormProvider) -> None:
    """Multiplicativity spot checks on the tau expansion."""
    t = provider.tau(12)
    if t[0] != 1:
        raise AxiomViolationError("delta: tau(1) != 1")
    checks = [
        (t[5], t[1] * t[2]),                  # tau(6) = tau(2) tau(3)
        (t[9], t[1] * t[4]),                  # tau(10) = tau(2) tau(5)
        (t[3], t[1] ** 2 - 2 ** 11),          # tau(4) = tau(2)^2 - 2^11
        (t[8], t[2] ** 2 - 3 ** 11),          # tau(9) = tau(3)^2 - 3^11
    ]
    for got, want in checks:
        if got != want:
            raise AxiomViolationError(f"delta: Hecke relation failed ({got} != {want})")


_SQRT_PI = math.sqrt(math.pi)


def _build(name: str) -> SelbergDatum:
    if name == "zeta":
        return SelbergDatum("zeta", 1.0 / _SQRT_PI, (0.5,), (0.0,), 1.0, 1, ConstantOneProvider())
    if name == "chi3":
        return SelbergDatum("chi3", math.sqrt(3.0 / math.pi), (0.5,), (0.5,), 1.0, 0,
                            PeriodicProvider((0.0, 1.0, -1.0)))
    if name == "chi4":
        return SelbergDatum("chi4", 2.0 / _SQRT_PI, (0.5,), (0.5,), 1.0, 0,
                            PeriodicProvider((0.0, 1.0, 0.0, -1.0)))
    if name == "chi5":
        return SelbergDatum("chi5", math.sqrt(5.0 / math.pi), (0.5,), (0.0,), 1.0, 0,
                            PeriodicProvider((0.0, 1.0, -1.0, -1.0, 1.0)))
    if name == "delta":
        return SelbergDatum("delta", 1.0 / (2.0 * math.pi), (1.0,), (5.5,), 1.0, 0,
                            CuspFormProvider(), experimental=True)
    raise CatalogError(f"unknown datum name: {name!r}")


BUILTIN_NAMES = ("zeta", "chi3", "chi4", "chi5")
EXPERIMENTAL_NAMES = ("delta",)


@lru_cache(maxsize=None)
def _builtin_cached(name: str) -> SelbergDatum:
    d = _build(name)
    _validate_structure(d)
    if isinstance(d.provider, CuspFormProvider):
        _validate_hecke(d.provider)
    else:
        _validate_functional_equation(d)
    return d


def builtin(name: str, experimental: bool = False) -> SelbergDatum:
    """Look up a built-in datum by name.

    Experimental entries (currently just delta) raise CatalogError unless
    explicitly enabled, since their strip evaluation carries larger error.
    """
    if name not in BUILTIN_NAMES + EXPERIMENTAL_NAMES:
        raise CatalogError(f"unknown datum name: {name!r}")
    if name in EXPERIMENTAL_NAMES and not experimental:
        raise CatalogError(f"{name!r} is experimental; pass experimental=True to enable")
    return _builtin_cached(name)


def coefficients(datum: SelbergDatum, n_max: int) -> np.ndarray:
    """First n_max Dirichlet coefficients a(1) .. a(n_max)."""
    if not isinstance(n_max, (int, np.integer)) or n_max < 0:
        raise DomainError(f"n_max must be a nonnegative integer, got {n_max!r}")
    if n_max == 0:
        return np.zeros(0, dtype=np.float64)
    if n_max > _COEFF_CAP:
        raise PrecisionError(f"coefficient blocks limited to n <= {_COEFF_CAP}")
    return datum.coefficient_block(int(n_max))


def catalog_listing(experimental: bool = False) -> list[dict]:
    """JSON-ready summary of the available data."""
    names = BUILTIN_NAMES + (EXPERIMENTAL_NAMES if experimental else ())
    out = []
    for name in names:
        d = builtin(name, experimental=True)
        out.append({
            "name": d.name,
            "Q": d.q_factor,
            "lambdas": list(d.lambdas),
            "mus": list(d.mus),
            "omega": d.omega,
            "m_F": d.pole_order,
            "degree": d.degree,
            "provider_kind": d.provider.kind,
        })
    return out
