"""Two-dimensional superintegrable systems built from the new ladder operators.

Two systems separable in Cartesian coordinates are covered: an extended
oscillator paired with an ordinary one (``oscillator_pair``) and two extended
oscillators (``extended_pair``). Their integrals ``I+ = a_x†^n1 a_y^n2`` and
``I- = a_x^n1 a_y†^n2`` close a polynomial algebra realised as a deformed
oscillator with structure function ``Φ(E, u, x)``. Finite-dimensional
representations are found two ways, from the closed-form families and from
the Fock constraints directly, and both are reconciled against a direct
count of product eigenstates.

All energies here use ``H_x = H^(-) - 2m - 1``, so 1D levels are ``2ν + 1``
and 2D levels are ``E = 2N`` with ``N = ν_x + ν_y + 1``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .errors import DomainError, VerificationError
from .exact_poly import ExactPoly, require_even_m, to_exact
from .ladder import ladder_coefficient_squared, lowering_target, pha_Q

OSCILLATOR_PAIR = "oscillator_pair"
EXTENDED_PAIR = "extended_pair"

CASE1_FAMILIES = ("E1", "E2")
CASE2_FAMILIES = ("E11", "E12", "E21", "E22")


@dataclass(frozen=True)
class SystemSpec:
    case: str
    m1: int
    m2: int | None
    lambda_x: int
    lambda_y: int
    n1: int
    n2: int
    lam: int
    Qx: ExactPoly
    Sy: ExactPoly
    q_roots: tuple
    s_roots: tuple

    @property
    def k1(self) -> int:
        return self.m1 + 1

    @property
    def k2(self) -> int:
        return 1 if self.m2 is None else self.m2 + 1

    @property
    def integral_order(self) -> int:
        """Differential order ``k1 n1 + k2 n2`` of ``I+``."""
        return self.k1 * self.n1 + self.k2 * self.n2

    @property
    def n_ground(self) -> int:
        if self.m2 is None:
            return -self.m1
        return -self.m1 - self.m2 - 1

    @property
    def label(self) -> str:
        if self.m2 is None:
            return f"case 1 (m={self.m1})"
        return f"case 2 (m1={self.m1}, m2={self.m2})"

    @property
    def unirreps_per_p(self) -> int:
        if self.m2 is None:
            return (self.m1 + 1) ** 2
        return (self.m1 + 1) ** 2 * (self.m2 + 1) ** 2

    def x_nu_allowed(self, nu: int) -> bool:
        return nu >= 0 or nu == -self.m1 - 1

    def y_nu_allowed(self, nu: int) -> bool:
        if self.m2 is None:
            return nu >= 0
        return nu >= 0 or nu == -self.m2 - 1

    def x_nus(self, nu_max: int) -> list[int]:
        return [-self.m1 - 1] + list(range(nu_max + 1))

    def y_nus(self, nu_max: int) -> list[int]:
        head = [] if self.m2 is None else [-self.m2 - 1]
        return head + list(range(nu_max + 1))

    def Q(self, z):
        return _eval_roots(self.q_roots, z)

    def S(self, z):
        return _eval_roots(self.s_roots, z)


def _eval_roots(roots, z):
    z = to_exact(z)
    out = mpq(1)
    for r in roots:
        out *= z - r
    return out


def _extended_q_roots(m: int) -> tuple:
    # Q of the ladder pair shifted to H_x = H^(-) - 2m - 1
    return tuple(mpq(int(r) - 2 * m - 1) for r in pha_Q(m).roots)


@lru_cache(maxsize=None)
def build_case1(m: int) -> SystemSpec:
    require_even_m(m)
    q_roots = _extended_q_roots(m)
    s_roots = (mpq(1),)
    return SystemSpec(
        case=OSCILLATOR_PAIR, m1=m, m2=None,
        lambda_x=2 * m + 2, lambda_y=2, n1=1, n2=m + 1, lam=2 * (m + 1),
        Qx=ExactPoly.from_roots(q_roots), Sy=ExactPoly.from_roots(s_roots),
        q_roots=q_roots, s_roots=s_roots,
    )


@lru_cache(maxsize=None)
def build_case2(m1: int, m2: int) -> SystemSpec:
    require_even_m(m1)
    require_even_m(m2)
    if m1 < m2:
        raise DomainError(f"need m1 >= m2, got m1={m1}, m2={m2}")
    q_roots = _extended_q_roots(m1)
    s_roots = _extended_q_roots(m2)
    return SystemSpec(
        case=EXTENDED_PAIR, m1=m1, m2=m2,
        lambda_x=2 * m1 + 2, lambda_y=2 * m2 + 2, n1=m2 + 1, n2=m1 + 1,
        lam=2 * (m1 + 1) * (m2 + 1),
        Qx=ExactPoly.from_roots(q_roots), Sy=ExactPoly.from_roots(s_roots),
        q_roots=q_roots, s_roots=s_roots,
    )


def reduced_ladder_choice(m1: int, m2: int) -> tuple[int, int]:
    """Smallest ``(n1, n2)`` with ``n1 λx = n2 λy``."""
    require_even_m(m1)
    require_even_m(m2)
    mu = math.gcd(m1 + 1, m2 + 1)
    return (m2 + 1) // mu, (m1 + 1) // mu


# -- structure function -----------------------------------------------------


def structure_function(sys: SystemSpec, E, u, x):
    """``Φ(E, u, x) = F(x + u, E)`` evaluated exactly from the 1D ``Q`` and ``S``."""
    E, u, x = to_exact(E), to_exact(u), to_exact(x)
    k = x + u
    half = E / 2
    out = mpq(1)
    for i in range(1, sys.n1 + 1):
        out *= sys.Q(half + sys.lam * k - (sys.n1 - i) * sys.lambda_x)
        if out == 0:
            return out
    for j in range(1, sys.n2 + 1):
        out *= sys.S(half - sys.lam * k + j * sys.lambda_y)
        if out == 0:
            return out
    return out


@dataclass(frozen=True)
class UFactor:
    """One linear factor of ``Φ(E, u, 0)`` and the ``u`` at which it vanishes."""

    family: str
    indices: tuple
    u: mpq


def u_roots(sys: SystemSpec, E) -> list[UFactor]:
    """Zeros in ``u`` of ``Φ(E, u, 0)``, read off factor by factor.

    Every factor is linear in ``u``, so no root finding is needed. Factors
    from the ``Q`` side carry family ``u1`` (first root) or ``u2``; those from
    the ``S`` side carry ``u3`` (and ``u4`` for the extended pair).
    """
    E = to_exact(E)
    half = E / 2
    out = []
    for i in range(1, sys.n1 + 1):
        for idx, r in enumerate(sys.q_roots):
            u = (r + (sys.n1 - i) * sys.lambda_x - half) / sys.lam
            fam = "u1" if idx == 0 else "u2"
            out.append(UFactor(fam, (i, idx), u))
    for j in range(1, sys.n2 + 1):
        for idx, s in enumerate(sys.s_roots):
            u = (half + j * sys.lambda_y - s) / sys.lam
            if sys.m2 is None:
                fam = "u3"
            else:
                fam = "u3" if idx == 0 else "u4"
            out.append(UFactor(fam, (j, idx), u))
    return out


# -- representations --------------------------------------------------------


@dataclass(frozen=True, order=True)
class Unirrep:
    """A ``(p+1)``-dimensional representation of the 2D polynomial algebra."""

    family: str
    params: tuple
    energy: int
    u: mpq = field(compare=False)
    structure_values: tuple = field(compare=False)

    @property
    def p(self) -> int:
        return len(self.structure_values) - 2

    @property
    def dimension(self) -> int:
        return self.p + 1

    @property
    def N(self) -> int:
        return self.energy // 2

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    def states(self, sys: SystemSpec) -> list[tuple[int, int]]:
        """Product eigenstates ``(ν_x, ν_y)`` of the Fock basis ``n = 0..p``."""
        return [fock_state(sys, self.energy, self.u, n) for n in range(self.p + 1)]

    def key(self):
        return (self.energy, self.p, self.structure_values)


def fock_state(sys: SystemSpec, E, u, n) -> tuple:
    """``(ν_x, ν_y)`` with ``K = u + n``; labels may be fractional for formal ``u``."""
    ex = to_exact(E) / 2 + sys.lam * (to_exact(u) + n)
    ey = to_exact(E) - ex
    return _label(ex), _label(ey)


def _label(level):
    nu = (level - 1) / 2
    return int(nu) if nu.denominator == 1 else nu


def _check_constraints(values) -> bool:
    p = len(values) - 2
    return values[0] == 0 and values[p + 1] == 0 and all(v > 0 for v in values[1:p + 1])


# -- closed-form families ---------------------------------------------------


def closed_form_energy(sys: SystemSpec, family: str, params: dict) -> int:
    p = params["p"]
    if sys.m2 is None:
        m = sys.m1
        k = params["k"]
        if family == "E1":
            return 2 * ((m + 1) * p + 1 - k)
        if family == "E2":
            return 2 * ((m + 1) * (p + 1) + params["l"] - k + 1)
        raise DomainError(f"unknown case-1 family {family}")
    m1, m2 = sys.m1, sys.m2
    q, s = params["q"], params["s"]
    base = (m1 + 1) * (m2 + 1) * (p + 2) - (m1 + 1) * q - (m2 + 1) * s
    if family == "E11":
        return 2 * (base - (m1 + m2 + 1))
    if family == "E12":
        return 2 * (base - m1 + params["t"])
    if family == "E21":
        return 2 * (base - m2 + params["r"])
    if family == "E22":
        return 2 * (base + params["r"] + params["t"] + 1)
    raise DomainError(f"unknown case-2 family {family}")


def closed_form_u(sys: SystemSpec, family: str, params: dict, E):
    half = to_exact(E) / 2
    if sys.m2 is None:
        m = sys.m1
        if family == "E1":
            return (-half - 2 * m - 1) / (2 * (m + 1))
        return (-half + 2 * params["l"] + 1) / (2 * (m + 1))
    m1, m2 = sys.m1, sys.m2
    base = -half + (2 * m1 + 2) * (m2 + 1 - params["q"])
    if family in ("E11", "E12"):
        return (base - 2 * m1 - 1) / sys.lam
    return (base + 2 * params["r"] + 1) / sys.lam


def closed_form_structure(sys: SystemSpec, family: str, params: dict, x):
    """Product forms of the structure function for each closed-form family."""
    x = to_exact(x)
    p = params["p"]
    if sys.m2 is None:
        m = sys.m1
        k = params["k"]
        out = mpq(2) ** (2 * (m + 1))
        if family == "E1":
            out *= (m + 1) * x
            for i in range(1, m + 1):
                out *= (m + 1) * x - m - 1 - i
        else:
            l = params["l"]
            out *= (m + 1) * x + m + 1 + l
            for i in range(1, m + 1):
                out *= (m + 1) * x + l - i
        for j in range(1, m + 2):
            out *= (m + 1) * (p + 1 - x) + j - k
        return out

    m1, m2 = sys.m1, sys.m2
    a, b = m1 + 1, m2 + 1
    q, s = params["q"], params["s"]
    out = mpq(2) ** (2 * a * b)
    for i in range(1, b + 1):
        if family in ("E11", "E12"):
            out *= a * (b * x - q + i)
            for k in range(1, m1 + 1):
                out *= a * b * x + a * (i - q - 1) - k
        else:
            r = params["r"]
            out *= a * b * x + a * (i - q + 1) + r
            for k in range(1, m1 + 1):
                out *= a * b * x + a * (i - q) + r - k
    y = p + 1 - x
    for j in range(1, a + 1):
        if family in ("E11", "E21"):
            out *= b * (a * y + j - s)
            for l in range(1, m2 + 1):
                out *= a * b * y + b * (j - s - 1) - l
        else:
            t = params["t"]
            out *= a * b * y + b * (j - s + 1) + t
            for l in range(1, m2 + 1):
                out *= a * b * y + b * (j - s) + t - l
    return out


def _family_params(sys: SystemSpec, p: int):
    if sys.m2 is None:
        m = sys.m1
        for k in range(1, m + 2):
            yield "E1", (("p", p), ("k", k))
        for l in range(1, m + 1):
            for k in range(1, m + 2):
                yield "E2", (("p", p), ("k", k), ("l", l))
        return
    m1, m2 = sys.m1, sys.m2
    for q in range(1, m2 + 2):
        for s in range(1, m1 + 2):
            yield "E11", (("p", p), ("q", q), ("s", s))
            for t in range(1, m2 + 1):
                yield "E12", (("p", p), ("q", q), ("s", s), ("t", t))
            for r in range(1, m1 + 1):
                yield "E21", (("p", p), ("q", q), ("r", r), ("s", s))
                for t in range(1, m2 + 1):
                    yield "E22", (("p", p), ("q", q), ("r", r), ("s", s), ("t", t))


def resolve_workers(workers: int | None = None) -> int:
    """Worker count: explicit value, else ``EOP_LAB_THREADS`` (0 means all CPUs)."""
    if workers is None:
        workers = int(os.environ.get("EOP_LAB_THREADS", "1") or 1)
    if workers < 0:
        raise DomainError("worker count must be non-negative")
    return workers or (os.cpu_count() or 1)


def _system_args(sys: SystemSpec) -> tuple:
    return (sys.m1,) if sys.m2 is None else (sys.m1, sys.m2)


def _rebuild(args: tuple) -> SystemSpec:
    return build_case1(*args) if len(args) == 1 else build_case2(*args)


def _unirreps_at_p(sys: SystemSpec, p: int) -> list[Unirrep]:
    out = []
    for family, params in _family_params(sys, p):
        d = dict(params)
        E = closed_form_energy(sys, family, d)
        u = closed_form_u(sys, family, d, E)
        values = tuple(closed_form_structure(sys, family, d, n) for n in range(p + 2))
        if not _check_constraints(values):
            raise VerificationError("Φ(E,u,0)=Φ(E,u,p+1)=0, Φ(E,u,n)>0",
                                    f"{family} {d}", f"values {[str(v) for v in values]}")
        out.append(Unirrep(family, params, E, u, values))
    return out


def _unirreps_task(args_p):
    args, p = args_p
    return _unirreps_at_p(_rebuild(args), p)


def enumerate_unirreps(sys: SystemSpec, p_max: int, workers: int | None = None) -> list[Unirrep]:
    """All closed-form representations with ``p <= p_max``.

    Each candidate's Fock constraints are checked by exact evaluation; a
    failure means a closed form was transcribed wrongly and is raised.
    Values of ``p`` are spread over ``workers`` processes when more than one
    is requested; the result order does not depend on it.
    """
    if p_max < 0:
        raise DomainError("p_max must be non-negative")
    workers = resolve_workers(workers)
    if workers > 1 and p_max > 0:
        tasks = [(_system_args(sys), p) for p in range(p_max + 1)]
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            chunks = list(pool.map(_unirreps_task, tasks))
    else:
        chunks = [_unirreps_at_p(sys, p) for p in range(p_max + 1)]
    out = [u for chunk in chunks for u in chunk]
    out.sort()
    return out


# -- constraint-based solver ------------------------------------------------


@dataclass(frozen=True)
class ConstraintSolution:
    energy: int
    u: mpq
    factors: tuple
    structure_values: tuple
    physical: bool

    @property
    def p(self) -> int:
        return len(self.structure_values) - 2

    @property
    def families(self) -> tuple:
        return tuple(sorted({f.family for f in self.factors}))


def constraint_solutions(sys: SystemSpec, E, p_max: int) -> list[ConstraintSolution]:
    """Every ``(u, p)`` meeting the Fock constraints at energy ``E``.

    ``physical`` records whether every Fock state ``K = u + n`` is an actual
    product eigenstate, i.e. both 1D levels lie in the 1D spectra.
    """
    E = int(E)
    by_u: dict = {}
    for f in u_roots(sys, E):
        by_u.setdefault(f.u, []).append(f)
    out = []
    for u in sorted(by_u):
        values = [structure_function(sys, E, u, 0)]
        p = None
        for n in range(1, p_max + 2):
            v = structure_function(sys, E, u, n)
            values.append(v)
            if v == 0:
                p = n - 1
                break
            if v < 0:
                break
        if p is None or not _check_constraints(values):
            continue
        physical = all(
            isinstance(nx, int) and isinstance(ny, int)
            and sys.x_nu_allowed(nx) and sys.y_nu_allowed(ny)
            for nx, ny in (fock_state(sys, E, u, n) for n in range(p + 1))
        )
        out.append(ConstraintSolution(E, u, tuple(by_u[u]), tuple(values), physical))
    return out


def generic_unirrep_solver(sys: SystemSpec, E, p_max: int) -> list[Unirrep]:
    """Physical representations at energy ``E`` found from the constraints alone."""
    out = []
    for sol in constraint_solutions(sys, E, p_max):
        if not sol.physical:
            continue
        fam = "+".join(sol.families)
        params = (("p", sol.p), ("u", str(sol.u)))
        out.append(Unirrep(fam, params, sol.energy, sol.u, sol.structure_values))
    out.sort()
    return out


# -- spectrum ---------------------------------------------------------------


def brute_force_states(sys: SystemSpec, N_max: int) -> dict[int, list[tuple[int, int]]]:
    """Product eigenstates grouped by ``N = ν_x + ν_y + 1``."""
    span = N_max - sys.n_ground + 1
    levels: dict[int, list] = {}
    for nx in sys.x_nus(span + sys.m1 + 2):
        for ny in sys.y_nus(span + sys.m1 + 2):
            N = nx + ny + 1
            if N <= N_max:
                levels.setdefault(N, []).append((nx, ny))
    return {N: sorted(levels[N]) for N in sorted(levels)}


def brute_force_spectrum(sys: SystemSpec, N_max: int) -> dict[int, int]:
    return {N: len(v) for N, v in brute_force_states(sys, N_max).items()}


def degeneracy_formula(sys: SystemSpec, N: int) -> int:
    if N < sys.n_ground:
        raise DomainError(f"N={N} lies below the ground level N={sys.n_ground}")
    if sys.m2 is None:
        return N + 1 if N >= 0 else 1
    m1, m2 = sys.m1, sys.m2
    return (int(N == -m1 - m2 - 1) + int(N >= -m1) + int(N >= -m2) + max(N, 0))


def required_p_max(sys: SystemSpec, N_max: int) -> int:
    """Largest ``p`` any representation with ``N <= N_max`` can have."""
    return max(0, (N_max - sys.n_ground) // (sys.lam // 2))


def auto_p_max(sys: SystemSpec, N_max: int) -> int:
    # conservative: steps of λ/(m1+1) rather than the tight λ/2
    return int(math.ceil(mpq(N_max - sys.n_ground, sys.lam // (sys.m1 + 1)))) + 2


def table_key(sys: SystemSpec, N: int) -> tuple:
    """``(λ, μ)`` with ``N = (m+1)λ + μ``; case 2 adds ``μ = ρ(m1+1) + σ``."""
    if sys.m2 is None:
        return divmod(N, sys.m1 + 1)
    lam, mu = divmod(N, (sys.m1 + 1) * (sys.m2 + 1))
    rho, sigma = divmod(mu, sys.m1 + 1)
    return lam, mu, rho, sigma


@dataclass
class Level:
    N: int
    unirreps: list[Unirrep]
    oracle_degeneracy: int

    @property
    def energy(self) -> int:
        return 2 * self.N

    @property
    def degeneracy(self) -> int:
        return sum(u.dimension for u in self.unirreps)

    @property
    def n_unirreps(self) -> int:
        return len(self.unirreps)

    @property
    def p_multiset(self) -> Counter:
        return Counter(u.p for u in self.unirreps)


@dataclass
class SpectrumReport:
    system: SystemSpec
    N_max: int
    p_max: int
    levels: list[Level]

    def level(self, N: int) -> Level:
        for lv in self.levels:
            if lv.N == N:
                return lv
        raise KeyError(N)

    def sequence(self) -> list[tuple[int, int]]:
        return [(lv.energy, lv.degeneracy) for lv in self.levels]


def spectrum_report(sys: SystemSpec, N_max: int, p_max: int | None = None,
                    workers: int | None = None) -> SpectrumReport:
    """Merge the closed-form representations level by level and reconcile them.

    Raises :class:`VerificationError` when a level's degeneracy, or the set of
    product states its representations span, differs from direct counting.
    """
    need = required_p_max(sys, N_max)
    if p_max is None:
        p_max = auto_p_max(sys, N_max)
    elif p_max < need:
        raise DomainError(f"p_max={p_max} is too small for N_max={N_max}; need >= {need}")
    by_level: dict[int, list] = {}
    for u in enumerate_unirreps(sys, p_max, workers):
        if u.N <= N_max:
            by_level.setdefault(u.N, []).append(u)
    oracle = brute_force_states(sys, N_max)
    levels = []
    for N in sorted(set(by_level) | set(oracle)):
        reps = sorted(by_level.get(N, []))
        states = oracle.get(N, [])
        lv = Level(N, reps, len(states))
        if lv.degeneracy != lv.oracle_degeneracy:
            raise VerificationError("degeneracy = direct count", f"{sys.label}, N={N}",
                                    f"{lv.degeneracy} from representations vs {lv.oracle_degeneracy}")
        spanned = sorted(s for r in reps for s in r.states(sys))
        if spanned != states:
            raise VerificationError("representations span the level", f"{sys.label}, N={N}",
                                    f"spanned {spanned} vs {states}")
        levels.append(lv)
    return SpectrumReport(sys, N_max, p_max, levels)


# -- unirrep tables -----------------------------------------------------------


def table_prediction(sys: SystemSpec, N: int):
    """Tabulated ``(p multiset, unirrep count, degeneracy)`` for level ``N``.

    Available for the oscillator pair at any ``m`` and for the extended pair
    with ``m1 == m2``; returns ``None`` otherwise or for empty levels.
    """
    if sys.m2 is None:
        m = sys.m1
        lam, mu = divmod(N, m + 1)
        if lam == -1 and mu >= 1:
            ps = Counter({0: 1})
        elif lam == 0 and mu == 0:
            ps = Counter({0: 1})
        elif lam == 0:
            ps = Counter({1: 1, 0: mu - 1})
        elif lam >= 1 and mu == 0:
            ps = Counter({lam: 1, lam - 1: m})
        elif lam >= 1:
            ps = Counter({lam + 1: 1, lam: mu - 1, lam - 1: m - mu + 1})
        else:
            return None
        return +ps, sum((+ps).values()), sum(k * v + v for k, v in ps.items())

    if sys.m1 != sys.m2:
        return None
    m = sys.m1
    lam, mu, rho, sigma = table_key(sys, N)
    M = (m + 1) ** 2
    if lam == -1:
        if rho == m - 1 and sigma == 1:
            ps = Counter({0: 1})
        elif rho == m and sigma >= 1:
            ps = Counter({0: 2})
        else:
            return None
    elif lam == 0:
        if rho == m and sigma >= 1:
            ps = Counter({1: 2, 0: mu - 2})
        elif rho == m - 1 and sigma == 1:
            ps = Counter({1: 1, 0: mu})
        else:
            ps = Counter({0: mu + 2})
    elif lam >= 1:
        if rho == m and sigma >= 1:
            ps = Counter({lam + 1: 2, lam: mu - 2, lam - 1: M - mu})
        elif rho == m - 1 and sigma == 1:
            ps = Counter({lam + 1: 1, lam: mu, lam - 1: M - mu - 1})
        else:
            ps = Counter({lam: mu + 2, lam - 1: M - mu - 2})
    else:
        return None
    ps = +ps
    return ps, sum(ps.values()), sum(k * v + v for k, v in ps.items())


# -- integrals acting on product states --------------------------------------


def _oscillator_lowering_squared(nu: int) -> int:
    return 2 * nu


def _extended_lowering_squared(m: int, nu: int, use_operators: bool):
    """``||c ψ_ν||^2`` for normalised ``ψ_ν``."""
    tgt = lowering_target(m, nu)
    if tgt is None:
        return mpq(0)
    if use_operators:
        c2, _ = ladder_coefficient_squared(m, tgt)
        return to_exact(c2)
    return to_exact(pha_Q(m)(2 * (nu + m + 1)))


def _extended_raising_squared(m: int, nu: int, use_operators: bool):
    if use_operators:
        c2, _ = ladder_coefficient_squared(m, nu)
        return to_exact(c2)
    lam = 2 * m + 2
    return to_exact(pha_Q(m)(2 * (nu + m + 1) + lam))


def raising_norm_squared(sys: SystemSpec, nx: int, ny: int, use_operators: bool = False):
    """``||I+ ψ_{ν_x} ψ_{ν_y}||^2`` from products of 1D ladder coefficients."""
    out = mpq(1)
    nu = nx
    for _ in range(sys.n1):
        out *= _extended_raising_squared(sys.m1, nu, use_operators)
        nu = 0 if nu == -sys.m1 - 1 else nu + sys.m1 + 1
    nu = ny
    for _ in range(sys.n2):
        if out == 0:
            return out
        if sys.m2 is None:
            if nu <= 0:
                return mpq(0)
            out *= _oscillator_lowering_squared(nu)
            nu -= 1
        else:
            tgt = lowering_target(sys.m2, nu)
            out *= _extended_lowering_squared(sys.m2, nu, use_operators)
            if tgt is None:
                return mpq(0)
            nu = tgt
    return out


def verify_fock_action(sys: SystemSpec, rep: Unirrep, use_operators: bool = False) -> bool:
    """``||b† |E,n>||^2 = Φ(E,u,n+1)`` on the product states of ``rep``."""
    for n, (nx, ny) in enumerate(rep.states(sys)):
        if raising_norm_squared(sys, nx, ny, use_operators) != rep.structure_values[n + 1]:
            return False
    return True


__all__ = [
    "OSCILLATOR_PAIR",
    "EXTENDED_PAIR",
    "SystemSpec",
    "Unirrep",
    "Level",
    "SpectrumReport",
    "ConstraintSolution",
    "UFactor",
    "build_case1",
    "build_case2",
    "reduced_ladder_choice",
    "structure_function",
    "u_roots",
    "closed_form_energy",
    "closed_form_u",
    "closed_form_structure",
    "enumerate_unirreps",
    "resolve_workers",
    "constraint_solutions",
    "generic_unirrep_solver",
    "brute_force_states",
    "brute_force_spectrum",
    "degeneracy_formula",
    "required_p_max",
    "auto_p_max",
    "table_key",
    "table_prediction",
    "spectrum_report",
    "raising_norm_squared",
    "verify_fock_action",
]
