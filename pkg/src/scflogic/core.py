"""Domain types for social choice: outcomes, rankings, profiles, tables, models.

Outcomes are plain name tokens (letters/digits, case-sensitive) and agents are
1-based integers.  A reported preference profile doubles as a *state*: the
states of a model are exactly the profiles over (n, K), in bijection with the
valuations of the reported-preference atoms.  Everything here is immutable and
all functions are pure, so values can be shared freely across workers.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

__all__ = [
    "InvalidDomain",
    "LinearOrder",
    "Profile",
    "RepAtom",
    "ScfTable",
    "ScfModel",
    "GameForm",
    "all_linear_orders",
    "all_profiles",
    "profile_index",
    "profile_from_index",
    "num_states",
    "state_atoms",
    "scf_as_game_form",
]

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+\Z")


class InvalidDomain(ValueError):
    """Raised when an agent/outcome domain is empty, malformed or mismatched."""


def _check_outcomes(outcomes: Sequence[str]) -> tuple[str, ...]:
    names = tuple(outcomes)
    if not names:
        raise InvalidDomain("outcome set must be non-empty")
    for name in names:
        if not isinstance(name, str) or not _TOKEN_RE.match(name):
            raise InvalidDomain(f"invalid outcome name: {name!r}")
    if len(set(names)) != len(names):
        raise InvalidDomain(f"duplicate outcome names in {names}")
    return names


@dataclass(frozen=True)
class LinearOrder:
    """A strict ranking of outcomes, most-preferred first.

    The derived relation ``at_least_as_good`` is reflexive, transitive,
    antisymmetric and total over the outcomes of the ranking.
    """

    ranking: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if not self.ranking:
            raise InvalidDomain("ranking must be non-empty")
        if len(set(self.ranking)) != len(self.ranking):
            raise InvalidDomain(f"ranking repeats an outcome: {self.ranking}")

    @property
    def top(self) -> str:
        return self.ranking[0]

    def rank(self, outcome: str) -> int:
        """Position of ``outcome`` in the ranking; 0 is most preferred."""
        try:
            return self.ranking.index(outcome)
        except ValueError:
            raise InvalidDomain(f"outcome {outcome!r} not in ranking {self.ranking}") from None

    def at_least_as_good(self, x: str, y: str) -> bool:
        """True iff x is ranked at least as high as y (reflexive)."""
        return self.rank(x) <= self.rank(y)

    def strictly_better(self, x: str, y: str) -> bool:
        return self.rank(x) < self.rank(y)

    def __str__(self) -> str:
        return "[" + ",".join(self.ranking) + "]"


@dataclass(frozen=True)
class Profile:
    """One linear order per agent, indexed 1..n.  Also serves as a state."""

    orders: tuple[LinearOrder, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "orders", tuple(self.orders))
        if not self.orders:
            raise InvalidDomain("profile must contain at least one agent")
        base = set(self.orders[0].ranking)
        for order in self.orders:
            if set(order.ranking) != base:
                raise InvalidDomain("all orders in a profile must range over the same outcomes")

    @property
    def n(self) -> int:
        return len(self.orders)

    def order(self, agent: int) -> LinearOrder:
        if not 1 <= agent <= self.n:
            raise InvalidDomain(f"agent {agent} out of range 1..{self.n}")
        return self.orders[agent - 1]

    def replace(self, agent: int, order: LinearOrder) -> "Profile":
        """Profile with agent's order swapped (a unilateral deviation)."""
        self.order(agent)
        parts = list(self.orders)
        parts[agent - 1] = order
        return Profile(tuple(parts))

    def __str__(self) -> str:
        return "(" + ",".join(str(o) for o in self.orders) + ")"


@dataclass(frozen=True)
class RepAtom:
    """Atom "agent reports that left is at least as good as right"."""

    agent: int
    left: str
    right: str

    def __str__(self) -> str:
        return f"rep({self.agent},{self.left},{self.right})"


@lru_cache(maxsize=None)
def _orders_cache(outcomes: tuple[str, ...]) -> tuple[LinearOrder, ...]:
    return tuple(LinearOrder(perm) for perm in itertools.permutations(outcomes))


@lru_cache(maxsize=None)
def _order_index_cache(outcomes: tuple[str, ...]) -> dict[tuple[str, ...], int]:
    return {o.ranking: i for i, o in enumerate(_orders_cache(outcomes))}


def all_linear_orders(outcomes: Sequence[str]) -> tuple[LinearOrder, ...]:
    """All |K|! rankings over the outcome set, in lexicographic order."""
    return _orders_cache(_check_outcomes(outcomes))


def num_states(n: int, outcomes: Sequence[str]) -> int:
    """(|K|!)^n, the number of profiles (= states) over (n, K)."""
    if n < 1:
        raise InvalidDomain(f"need at least one agent, got n={n}")
    return len(all_linear_orders(outcomes)) ** n


@lru_cache(maxsize=None)
def _profiles_cache(n: int, outcomes: tuple[str, ...]) -> tuple[Profile, ...]:
    orders = _orders_cache(outcomes)
    return tuple(Profile(combo) for combo in itertools.product(orders, repeat=n))


def all_profiles(n: int, outcomes: Sequence[str]) -> tuple[Profile, ...]:
    """All (|K|!)^n profiles over (n, K).

    The sequence position equals the mixed-radix index over per-agent
    ranking indices, with agent 1 the most significant digit; this gives a
    canonical O(1) state numbering shared by every module.
    """
    if n < 1:
        raise InvalidDomain(f"need at least one agent, got n={n}")
    return _profiles_cache(n, _check_outcomes(outcomes))


def profile_index(profile: Profile, outcomes: Sequence[str]) -> int:
    """Canonical index of ``profile`` within all_profiles(n, K)."""
    lookup = _order_index_cache(_check_outcomes(outcomes))
    idx = 0
    radix = len(lookup)
    for order in profile.orders:
        try:
            digit = lookup[order.ranking]
        except KeyError:
            raise InvalidDomain(f"order {order} is not a permutation of {tuple(outcomes)}") from None
        idx = idx * radix + digit
    return idx


def profile_from_index(idx: int, n: int, outcomes: Sequence[str]) -> Profile:
    orders = all_linear_orders(outcomes)
    radix = len(orders)
    total = radix**n
    if not 0 <= idx < total:
        raise InvalidDomain(f"profile index {idx} out of range 0..{total - 1}")
    digits = []
    for _ in range(n):
        digits.append(idx % radix)
        idx //= radix
    return Profile(tuple(orders[d] for d in reversed(digits)))


def state_atoms(state: Profile) -> frozenset[RepAtom]:
    """The valuation encoding ``state``: every reported at-least-as-good pair.

    Contains rep(i,x,x) for every agent and outcome, exactly one of
    rep(i,x,y) / rep(i,y,x) for distinct x,y, and is transitively closed;
    it is the unique well-formed valuation corresponding to the profile.
    """
    atoms = set()
    for agent, order in enumerate(state.orders, start=1):
        ranking = order.ranking
        for pos, x in enumerate(ranking):
            for y in ranking[pos:]:
                atoms.add(RepAtom(agent, x, y))
    return frozenset(atoms)


def _freeze_values(
    n: int,
    outcomes: tuple[str, ...],
    fn: Callable[[Profile], str],
) -> tuple[str, ...]:
    values = []
    for profile in all_profiles(n, outcomes):
        outcome = fn(profile)
        if outcome not in outcomes:
            raise InvalidDomain(f"value {outcome!r} for {profile} is not in {outcomes}")
        values.append(outcome)
    return tuple(values)


@dataclass(frozen=True)
class ScfTable:
    """A social choice function as a total map from profiles to outcomes.

    ``values`` stores one outcome per canonical profile index.
    """

    agents: int
    outcomes: tuple[str, ...]
    values: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "outcomes", _check_outcomes(self.outcomes))
        object.__setattr__(self, "values", tuple(self.values))
        expected = num_states(self.agents, self.outcomes)
        if len(self.values) != expected:
            raise InvalidDomain(
                f"SCF table needs {expected} entries for (n={self.agents}, K={self.outcomes}),"
                f" got {len(self.values)}"
            )
        for value in self.values:
            if value not in self.outcomes:
                raise InvalidDomain(f"SCF value {value!r} is not in {self.outcomes}")

    @classmethod
    def from_function(
        cls, agents: int, outcomes: Sequence[str], fn: Callable[[Profile], str]
    ) -> "ScfTable":
        names = _check_outcomes(outcomes)
        return cls(agents, names, _freeze_values(agents, names, fn))

    @classmethod
    def from_mapping(
        cls, agents: int, outcomes: Sequence[str], mapping: Mapping[Profile, str]
    ) -> "ScfTable":
        names = _check_outcomes(outcomes)
        profiles = all_profiles(agents, names)
        missing = [p for p in profiles if p not in mapping]
        if missing:
            raise InvalidDomain(f"SCF mapping is missing profile {missing[0]}")
        if len(mapping) != len(profiles):
            extra = set(mapping) - set(profiles)
            raise InvalidDomain(f"SCF mapping has {len(extra)} entries outside the profile space")
        return cls(agents, names, _freeze_values(agents, names, mapping.__getitem__))

    def __call__(self, profile: Profile) -> str:
        return self.values[profile_index(profile, self.outcomes)]

    @property
    def profiles(self) -> tuple[Profile, ...]:
        return all_profiles(self.agents, self.outcomes)

    def feasible_outcomes(self) -> frozenset[str]:
        """Outcomes actually attained by the function."""
        return frozenset(self.values)


@dataclass(frozen=True)
class ScfModel:
    """A model of social choice: an outcome function over states plus the
    true preference profile of the agents."""

    table: ScfTable
    truth: Profile

    def __post_init__(self) -> None:
        if self.truth.n != self.table.agents:
            raise InvalidDomain(
                f"true profile has {self.truth.n} agents, table has {self.table.agents}"
            )
        if set(self.truth.orders[0].ranking) != set(self.table.outcomes):
            raise InvalidDomain("true profile must range over the table's outcomes")

    @property
    def n(self) -> int:
        return self.table.agents

    @property
    def outcomes(self) -> tuple[str, ...]:
        return self.table.outcomes

    @property
    def states(self) -> tuple[Profile, ...]:
        return self.table.profiles

    def out(self, state: Profile) -> str:
        return self.table(state)

    def true_order(self, agent: int) -> LinearOrder:
        return self.truth.order(agent)


@dataclass(frozen=True, eq=False)
class GameForm:
    """A strategic game form: per-agent action sets and a total outcome map."""

    actions: tuple[tuple[object, ...], ...]
    outcomes: tuple[str, ...]
    table: Mapping[tuple, str] = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "actions", tuple(tuple(acts) for acts in self.actions))
        object.__setattr__(self, "outcomes", _check_outcomes(self.outcomes))
        if not self.actions or any(not acts for acts in self.actions):
            raise InvalidDomain("every agent needs a non-empty action set")
        for combo in itertools.product(*self.actions):
            value = self.table.get(combo)
            if value is None:
                raise InvalidDomain(f"outcome function undefined on action profile {combo}")
            if value not in self.outcomes:
                raise InvalidDomain(f"outcome {value!r} is not in {self.outcomes}")

    @property
    def n(self) -> int:
        return len(self.actions)

    def action_profiles(self) -> Iterable[tuple]:
        return itertools.product(*self.actions)

    def outcome(self, action_profile: tuple) -> str:
        return self.table[action_profile]


def scf_as_game_form(table: ScfTable) -> GameForm:
    """The direct mechanism induced by an SCF: every agent's action set is
    the set of rankings, and the outcome function is the SCF itself."""
    orders = all_linear_orders(table.outcomes)
    mapping = {p.orders: table(p) for p in table.profiles}
    return GameForm(
        actions=tuple(orders for _ in range(table.agents)),
        outcomes=table.outcomes,
        table=mapping,
    )
