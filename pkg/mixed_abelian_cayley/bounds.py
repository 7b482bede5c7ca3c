# Standard Library Imports
import itertools
import logging
import math
import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Optional, Union

# Third Party Imports
import sympy

# Module Imports
from mixed_abelian_cayley.constants import (
    DEFAULT_MULTINOMIAL_CONVENTION,
    DEGREE_SPEC_INDEXED_KEYS,
    DEGREE_SPEC_SCALAR_KEYS,
    ORACLE_STATE_CAP,
    MultinomialConvention,
)
from mixed_abelian_cayley.errors import (
    CertificationException,
    DegreeSpecException,
    OracleCapException,
)

logger = logging.getLogger(__name__)

_SCALAR_TOKEN = re.compile(rf"^({'|'.join(DEGREE_SPEC_SCALAR_KEYS)})=(\d+)$")
_INDEXED_TOKEN = re.compile(rf"^({'|'.join(DEGREE_SPEC_INDEXED_KEYS)})\[(\d+)\]=(\d+)$")
_MIXED_TOKEN = re.compile(r"^(r|z|k)=(\d+)$")


### EXACT COMBINATORICS ###


@lru_cache(maxsize=None)
def binomial(a: int, b: int) -> int:
    """Binomial coefficient that vanishes when the balls do not fit

    Returns:
        int: C(a, b), or 0 when b < 0, a < 0 or a < b
    """
    if b < 0 or a < 0 or a < b:
        return 0
    return math.comb(a, b)


def multinomial(
    total: int,
    parts: tuple[int, ...],
    convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION,
) -> int:
    """Number of ways to give `parts[j]` of `total` boxes exactly j+1 balls

    Args:
        total (int): Number of boxes
        parts (tuple[int, ...]): Box counts per ball count, must sum to at most `total`
        convention (MultinomialConvention): Whether the remaining empty boxes are counted

    Returns:
        int: The multinomial coefficient
    """
    used = sum(parts)
    if used > total or any(part < 0 for part in parts):
        return 0
    denominator = math.prod(math.factorial(part) for part in parts)
    match convention:
        case MultinomialConvention.EXACT:
            denominator *= math.factorial(total - used)
        case MultinomialConvention.PUBLISHED:
            pass
        case _:
            raise ValueError(f"Unknown multinomial convention {convention}")
    return math.factorial(total) // denominator


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Yield every tuple of `parts` nonnegative integers summing to `total` (stars and bars)"""
    if parts == 0:
        if total == 0:
            yield ()
        return
    slots = total + parts - 1
    for bars in itertools.combinations(range(slots), parts - 1):
        edges = (-1,) + bars + (slots,)
        yield tuple(edges[i + 1] - edges[i] - 1 for i in range(parts))


### DEGREE PROFILES ###


def _normalize_counts(counts: Union[Mapping[int, int], tuple, None]) -> tuple:
    items = counts.items() if isinstance(counts, Mapping) else (counts or ())
    return tuple(sorted((int(index), int(count)) for index, count in items if count))


@dataclass(frozen=True)
class DegreeSpec:
    """Full degree profile of a mixed Abelian Cayley graph, plus its diameter

    `r_odd` maps s to the number of +-pairs of order 2s+1 and `z_ord` maps t to
    the number of directed generators of order t+1. Both are stored as sorted
    (index, count) tuples so the profile is hashable; mappings are accepted.
    """

    k: int
    r_alpha: int = 0
    r_odd: tuple[tuple[int, int], ...] = field(default=())
    r_omega: int = 0
    z_ord: tuple[tuple[int, int], ...] = field(default=())
    z_omega: int = 0

    def __post_init__(self):
        object.__setattr__(self, "r_odd", _normalize_counts(self.r_odd))
        object.__setattr__(self, "z_ord", _normalize_counts(self.z_ord))

        # Ensure valid attributes
        if not isinstance(self.k, int) or self.k < 1:
            raise DegreeSpecException(f"Diameter must be a positive integer, got {self.k}.")
        for name in ("r_alpha", "r_omega", "z_omega"):
            if getattr(self, name) < 0:
                raise DegreeSpecException(f"Count {name} must be nonnegative.")
        for s, count in self.r_odd:
            if count < 0:
                raise DegreeSpecException(f"Count r[{s}] must be nonnegative.")
            if not 1 <= s <= self.k:
                raise DegreeSpecException(
                    f"Pairs of order 2s+1 need 1 <= s <= k, got s={s} with k={self.k}."
                )
        for t, count in self.z_ord:
            if count < 0:
                raise DegreeSpecException(f"Count z[{t}] must be nonnegative.")
            if t == 1:
                raise DegreeSpecException(
                    "Directed generators of order 2 are involutions; use r_a instead of z[1]."
                )
            if not 2 <= t <= self.k:
                raise DegreeSpecException(
                    f"Directed generators of order t+1 need 2 <= t <= k, got t={t} with k={self.k}."
                )

    @property
    def r_odd_map(self) -> dict[int, int]:
        return dict(self.r_odd)

    @property
    def z_ord_map(self) -> dict[int, int]:
        return dict(self.z_ord)

    @property
    def r(self) -> int:
        """Undirected degree"""
        return self.r_alpha + 2 * sum(count for _, count in self.r_odd) + 2 * self.r_omega

    @property
    def z(self) -> int:
        """Directed out-degree"""
        return sum(count for _, count in self.z_ord) + self.z_omega

    def coarsened(self) -> "DegreeSpec":
        """The same profile with every known order forgotten"""
        return DegreeSpec(
            k=self.k,
            r_alpha=self.r_alpha,
            r_omega=self.r_omega + sum(count for _, count in self.r_odd),
            z_omega=self.z_omega + sum(count for _, count in self.z_ord),
        )

    def __str__(self) -> str:
        tokens = [f"r_a={self.r_alpha}"]
        tokens += [f"r[{s}]={count}" for s, count in self.r_odd]
        tokens.append(f"r_w={self.r_omega}")
        tokens += [f"z[{t}]={count}" for t, count in self.z_ord]
        tokens.append(f"z_w={self.z_omega}")
        tokens.append(f"k={self.k}")
        return " ".join(tokens)

    @classmethod
    def parse(cls, text: str) -> "DegreeSpec":
        """Parse the canonical textual form, e.g. `r_a=1 r[2]=1 r_w=2 z[3]=2 z_w=0 k=7`

        Keys may appear in any order and every count defaults to 0; `k` is required.

        Args:
            text (str): Whitespace separated `key=value` tokens

        Returns:
            DegreeSpec: The parsed profile
        """
        scalars: dict[str, int] = {}
        indexed: dict[str, dict[int, int]] = {"r": {}, "z": {}}
        for token in text.split():
            if match := _SCALAR_TOKEN.match(token):
                key, value = match.group(1), int(match.group(2))
                if key in scalars:
                    raise DegreeSpecException(f"Duplicate key {key} in degree spec {text!r}.")
                scalars[key] = value
            elif match := _INDEXED_TOKEN.match(token):
                key, index, value = match.group(1), int(match.group(2)), int(match.group(3))
                if index in indexed[key]:
                    raise DegreeSpecException(
                        f"Duplicate key {key}[{index}] in degree spec {text!r}."
                    )
                indexed[key][index] = value
            else:
                raise DegreeSpecException(f"Unknown token {token!r} in degree spec {text!r}.")
        if "k" not in scalars:
            raise DegreeSpecException(f"Degree spec {text!r} does not give the diameter k.")
        return cls(
            k=scalars["k"],
            r_alpha=scalars.get("r_a", 0),
            r_odd=indexed["r"],
            r_omega=scalars.get("r_w", 0),
            z_ord=indexed["z"],
            z_omega=scalars.get("z_w", 0),
        )


def parse_mixed_degrees(text: str) -> tuple[int, int, int]:
    """Parse `r=2 z=0 k=5` into (r, z, k) for the general mixed Moore bound"""
    values: dict[str, int] = {}
    for token in text.split():
        match = _MIXED_TOKEN.match(token)
        if match is None:
            raise DegreeSpecException(f"Unknown token {token!r} in degree profile {text!r}.")
        if match.group(1) in values:
            raise DegreeSpecException(f"Duplicate key {match.group(1)} in {text!r}.")
        values[match.group(1)] = int(match.group(2))
    if "k" not in values:
        raise DegreeSpecException(f"Degree profile {text!r} does not give the diameter k.")
    return values.get("r", 0), values.get("z", 0), values["k"]


### GENERAL MIXED MOORE BOUND ###


@dataclass(frozen=True)
class MooreParams:
    """Characteristic data of the mixed Moore tree, held as exact a + b*sqrt(v) surds"""

    d: int
    z: int
    v: int
    u1: sympy.Expr
    u2: sympy.Expr
    A: sympy.Expr
    B: sympy.Expr

    @classmethod
    def from_degrees(cls, r: int, z: int) -> "MooreParams":
        d = r + z
        v = (d - 1) ** 2 + 4 * z
        if v == 0:
            raise ValueError("The Moore tree with r=1, z=0 has no characteristic roots (v=0).")
        root = sympy.sqrt(v)
        u1 = (d - 1 - root) / 2
        u2 = (d - 1 + root) / 2
        # (sqrt(v) -+ (d+1)) / (2 sqrt(v)) written without the radical in the denominator
        A = sympy.Rational(1, 2) - sympy.Rational(d + 1, 2 * v) * root
        B = sympy.Rational(1, 2) + sympy.Rational(d + 1, 2 * v) * root
        return cls(d=d, z=z, v=v, u1=u1, u2=u2, A=A, B=B)

    def vieta_holds(self) -> bool:
        return (
            sympy.expand(self.u1 * self.u2) == -self.z
            and sympy.expand(self.u1 + self.u2) == self.d - 1
            and sympy.expand(self.A + self.B) == 1
        )

    def closed_form(self, k: int) -> int:
        """Evaluate A(u1^(k+1)-1)/(u1-1) + B(u2^(k+1)-1)/(u2-1) exactly

        A root equal to 1 (r=2, z=0) makes its fraction singular; its limit k+1 is used.
        """
        total = sympy.Integer(0)
        for coefficient, root in ((self.A, self.u1), (self.B, self.u2)):
            if sympy.expand(root - 1) == 0:
                geometric = sympy.Integer(k + 1)
            else:
                geometric = sympy.radsimp((sympy.expand(root ** (k + 1)) - 1) / (root - 1))
            total += sympy.expand(coefficient * geometric)
        total = sympy.expand(sympy.radsimp(total))
        if not total.is_Integer:
            raise CertificationException(
                f"Closed form of the mixed Moore bound did not reduce to an integer: {total}"
            )
        return int(total)


def moore_layers(r: int, z: int, k: int) -> tuple[int, ...]:
    """Layer sizes N_0..N_k of the mixed Moore tree (N_i = (d-1) N_(i-1) + z N_(i-2))"""
    if r < 0 or z < 0:
        raise ValueError("Degrees must be nonnegative.")
    if r + z < 1:
        raise ValueError("The mixed Moore bound needs r + z >= 1.")
    if k < 0:
        raise ValueError("Diameter must be nonnegative.")
    d = r + z
    layers = [1, d]
    for _ in range(2, k + 1):
        layers.append((d - 1) * layers[-1] + z * layers[-2])
    return tuple(layers[: k + 1])


def moore_mixed_general(r: int, z: int, k: int, check: bool = True) -> int:
    """Moore bound M(r, z, k) for mixed graphs of undirected degree r and out-degree z

    Args:
        r (int): Undirected degree
        z (int): Directed out-degree
        k (int): Diameter
        check (bool): Also evaluate the closed form and require agreement

    Returns:
        int: The bound
    """
    if k < 1:
        raise ValueError("Diameter must be a positive integer.")
    value = sum(moore_layers(r, z, k))
    if check and (r + z - 1) ** 2 + 4 * z != 0:
        closed = MooreParams.from_degrees(r, z).closed_form(k)
        if closed != value:
            raise CertificationException(
                f"Mixed Moore bound mismatch for r={r}, z={z}, k={k}: "
                f"recurrence {value}, closed form {closed}"
            )
    return value


### ABELIAN CAYLEY BOUNDS ###


def _require_profile(counts: dict[str, int], k: int):
    for name, value in counts.items():
        if value < 0:
            raise DegreeSpecException(f"Count {name} must be nonnegative, got {value}.")
    if k < 1:
        raise DegreeSpecException(f"Diameter must be a positive integer, got {k}.")


def mac_bound_generating_function_form(r_alpha: int, r_omega: int, z_omega: int, k: int) -> int:
    return sum(
        binomial(r_omega + z_omega + i, i) * binomial(r_alpha + r_omega, k - i)
        for i in range(k + 1)
    )


def mac_bound_combinatorial_form(r_alpha: int, r_omega: int, z_omega: int, k: int) -> int:
    return sum(
        binomial(r_omega, i)
        * 2**i
        * sum(
            binomial(r_alpha, j) * binomial(k + z_omega - j, i + z_omega)
            for j in range(r_alpha + 1)
        )
        for i in range(r_omega + 1)
    )


def mac_bound(r_alpha: int, r_omega: int, z_omega: int, k: int) -> int:
    """Moore bound M_AC for mixed Abelian Cayley graphs with undetermined generator orders

    Both published closed forms are evaluated and must agree.

    Args:
        r_alpha (int): Number of involutions
        r_omega (int): Number of +-pairs
        z_omega (int): Number of directed generators
        k (int): Diameter

    Returns:
        int: The bound
    """
    _require_profile({"r_alpha": r_alpha, "r_omega": r_omega, "z_omega": z_omega}, k)
    first = mac_bound_generating_function_form(r_alpha, r_omega, z_omega, k)
    second = mac_bound_combinatorial_form(r_alpha, r_omega, z_omega, k)
    if first != second:
        raise CertificationException(
            f"M_AC closed forms disagree for ({r_alpha}, {r_omega}, {z_omega}, {k}): {first} != {second}"
        )
    return first


def mac_bound_directed(z_omega: int, k: int) -> int:
    """Abelian Cayley digraph bound C(k+z, z)"""
    _require_profile({"z_omega": z_omega}, k)
    return binomial(k + z_omega, z_omega)


def mac_bound_undirected(r_omega: int, k: int) -> int:
    """Abelian Cayley graph bound without involutions, sum of 2^i C(r, i) C(k, i)"""
    _require_profile({"r_omega": r_omega}, k)
    return sum(2**i * binomial(r_omega, i) * binomial(k, i) for i in range(r_omega + 1))


def mac_bound_single_involution(z: int, k: int) -> int:
    """Bound with one involution and z directed generators, (2k+z)/(k+z) C(k+z, z)"""
    _require_profile({"z": z}, k)
    numerator = (2 * k + z) * binomial(k + z, z)
    if numerator % (k + z):
        raise CertificationException(f"(2k+z) C(k+z, z) is not divisible by k+z for z={z}, k={k}")
    return numerator // (k + z)


### IMPROVED BOUND ###


def _class_ball_weights(
    boxes: int, capacity: int, colours: int, convention: MultinomialConvention
) -> dict[int, int]:
    """Weighted ball counts for `boxes` boxes holding up to `capacity` single-coloured balls each"""
    weights: dict[int, int] = defaultdict(int)
    for filled in range(boxes + 1):
        for parts in compositions(filled, capacity):
            balls = sum((j + 1) * part for j, part in enumerate(parts))
            weights[balls] += colours**filled * multinomial(boxes, parts, convention)
    return dict(weights)


def _convolve(first: dict[int, int], second: dict[int, int]) -> dict[int, int]:
    result: dict[int, int] = defaultdict(int)
    for balls_a, weight_a in first.items():
        for balls_b, weight_b in second.items():
            result[balls_a + balls_b] += weight_a * weight_b
    return dict(result)


def finite_order_ball_weights(
    spec: DegreeSpec,
    convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION,
) -> dict[int, int]:
    """Ball-count distribution of all generator classes with a known order

    Pairs of order 2s+1 put up to s balls of one of two colours in a box; directed
    generators of order t+1 put up to t white balls in a box.

    Returns:
        dict[int, int]: Weighted number of configurations by total balls used
    """
    weights = {0: 1}
    for s, count in spec.r_odd:
        weights = _convolve(weights, _class_ball_weights(count, s, 2, convention))
    for t, count in spec.z_ord:
        weights = _convolve(weights, _class_ball_weights(count, t, 1, convention))
    return weights


@dataclass(frozen=True)
class ImprovedBoundTerm:
    i_alpha: int
    i_omega: int
    finite_balls: int
    finite_weight: int
    binomial: int
    value: int


def improved_bound_terms(
    spec: DegreeSpec,
    convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION,
) -> tuple[ImprovedBoundTerm, ...]:
    """Per-term breakdown of the improved bound

    Each term fixes the number of used involutions (i_alpha), of used pairs of
    undetermined order (i_omega) and of balls taken by the known-order classes;
    the binomial spreads the remaining balls over 1 + i_omega + z_omega boxes.
    """
    finite = finite_order_ball_weights(spec, convention)
    terms = []
    for i_alpha in range(spec.r_alpha + 1):
        for i_omega in range(spec.r_omega + 1):
            prefix = binomial(spec.r_alpha, i_alpha) * binomial(spec.r_omega, i_omega) * 2**i_omega
            for balls, weight in sorted(finite.items()):
                spread = binomial(
                    spec.z_omega + spec.k - i_alpha - balls, i_omega + spec.z_omega
                )
                terms.append(
                    ImprovedBoundTerm(
                        i_alpha=i_alpha,
                        i_omega=i_omega,
                        finite_balls=balls,
                        finite_weight=weight,
                        binomial=spread,
                        value=prefix * weight * spread,
                    )
                )
    return tuple(terms)


def mac_bound_improved(
    spec: DegreeSpec,
    convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION,
) -> int:
    """Moore bound for mixed Abelian Cayley graphs that knows some generator orders

    Args:
        spec (DegreeSpec): The full degree profile and diameter
        convention (MultinomialConvention): EXACT (the true count) or PUBLISHED

    Returns:
        int: The bound
    """
    return sum(term.value for term in improved_bound_terms(spec, convention))


def mac_bound_order5(
    r_alpha: int, r_2: int, r_omega: int, z_omega: int, k: int
) -> int:
    """Improved bound when the only known orders are pairs of order 5

    Written out with the trinomial C(r_2, s1) C(r_2 - s1, s2) rather than through
    the general class convolution.
    """
    _require_profile(
        {"r_alpha": r_alpha, "r_2": r_2, "r_omega": r_omega, "z_omega": z_omega}, k
    )
    total = 0
    for i_alpha in range(r_alpha + 1):
        for i_omega in range(r_omega + 1):
            prefix = binomial(r_alpha, i_alpha) * binomial(r_omega, i_omega) * 2**i_omega
            for i_2 in range(r_2 + 1):
                for sigma_1 in range(i_2 + 1):
                    sigma_2 = i_2 - sigma_1
                    trinomial = binomial(r_2, sigma_1) * binomial(r_2 - sigma_1, sigma_2)
                    total += (
                        prefix
                        * trinomial
                        * 2**i_2
                        * binomial(z_omega + k - i_alpha - sigma_1 - 2 * sigma_2, i_omega + z_omega)
                    )
    return total


### COUNTING ORACLE ###


def oracle_state_space(spec: DegreeSpec) -> int:
    """Product of the coordinate ranges the oracle may visit"""
    size = 2**spec.r_alpha * (2 * spec.k + 1) ** spec.r_omega * (spec.k + 1) ** spec.z_omega
    for s, count in spec.r_odd:
        size *= (2 * s + 1) ** count
    for t, count in spec.z_ord:
        size *= (t + 1) ** count
    return size


def moore_count_oracle(spec: DegreeSpec, cap: Optional[int] = None) -> int:
    """Count the elements of the freest group for `spec` within k steps of 0, by BFS

    The group is Z_2^r_a x prod Z_(2s+1)^r_s x Z^r_w x prod Z_(t+1)^z_t x Z^z_w;
    directed coordinates only move forward.

    Args:
        spec (DegreeSpec): The degree profile and diameter
        cap (Optional[int]): Largest admissible state space, ORACLE_STATE_CAP when None

    Returns:
        int: Number of elements at distance at most k from 0
    """
    cap = ORACLE_STATE_CAP if cap is None else cap
    space = oracle_state_space(spec)
    if space > cap:
        raise OracleCapException(
            f"Oracle state space {space} for {spec} exceeds the cap {cap}."
        )

    # (modulus or None, both directions)
    coordinates: list[tuple[Optional[int], bool]] = [(2, False)] * spec.r_alpha
    for s, count in spec.r_odd:
        coordinates += [(2 * s + 1, True)] * count
    coordinates += [(None, True)] * spec.r_omega
    for t, count in spec.z_ord:
        coordinates += [(t + 1, False)] * count
    coordinates += [(None, False)] * spec.z_omega

    steps = []
    for index, (modulus, both) in enumerate(coordinates):
        for sign in (1, -1) if both else (1,):
            steps.append((index, sign, modulus))

    origin = (0,) * len(coordinates)
    seen = {origin}
    frontier = [origin]
    for _ in range(spec.k):
        next_frontier = []
        for state in frontier:
            for index, sign, modulus in steps:
                value = state[index] + sign
                if modulus is not None:
                    value %= modulus
                neighbour = state[:index] + (value,) + state[index + 1 :]
                if neighbour not in seen:
                    seen.add(neighbour)
                    next_frontier.append(neighbour)
        if not next_frontier:
            break
        frontier = next_frontier
    return len(seen)
