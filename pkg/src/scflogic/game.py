"""Game-theoretic oracles, independent of the logic layer.

Everything here works by direct enumeration over action profiles and
preference profiles, straight from the definitions: Nash equilibrium,
dominant strategy equilibrium, (truthful) implementation, strategy-
proofness, monotonicity, citizen sovereignty and dictatorship.  These
routines exist to validate the logical encodings; they never consult the
formula evaluator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .core import (
    GameForm,
    InvalidDomain,
    LinearOrder,
    Profile,
    ScfTable,
    all_linear_orders,
    all_profiles,
    scf_as_game_form,
)

__all__ = [
    "SolutionConcept",
    "NonDirectMechanism",
    "nash_equilibria",
    "dom_equilibria",
    "solution_set",
    "ImplementationReport",
    "implements",
    "truthfully_implements",
    "is_strategy_proof",
    "MonotonicityReport",
    "is_monotonic",
    "has_citsov",
    "is_dictatorial",
    "AuditReport",
    "equivalence_audit",
]


class SolutionConcept(Enum):
    NE = "ne"
    DOMEQ = "dom"


class NonDirectMechanism(InvalidDomain):
    """Raised when a direct mechanism is required but the action sets are
    not the sets of rankings."""


def _check_truth(game: GameForm, truth: Profile) -> None:
    if truth.n != game.n:
        raise InvalidDomain(f"truth profile has {truth.n} agents, game has {game.n}")
    if set(truth.orders[0].ranking) != set(game.outcomes):
        raise InvalidDomain("truth profile must range over the game's outcomes")


def nash_equilibria(game: GameForm, truth: Profile) -> tuple[tuple, ...]:
    """Action profiles from which no agent can strictly improve by a
    unilateral deviation, under the true preferences.  Canonical order."""
    _check_truth(game, truth)
    found = []
    for combo in game.action_profiles():
        current = game.outcome(combo)
        happy = True
        for agent in range(1, game.n + 1):
            order = truth.order(agent)
            for move in game.actions[agent - 1]:
                swapped = combo[: agent - 1] + (move,) + combo[agent:]
                if order.strictly_better(game.outcome(swapped), current):
                    happy = False
                    break
            if not happy:
                break
        if happy:
            found.append(combo)
    return tuple(found)


def dom_equilibria(game: GameForm, truth: Profile) -> tuple[tuple, ...]:
    """Action profiles in which every component is a dominant strategy:
    at least as good as any alternative whatever the others play."""
    _check_truth(game, truth)
    dominant: list[list] = []
    for agent in range(1, game.n + 1):
        order = truth.order(agent)
        others = [game.actions[j] for j in range(game.n) if j != agent - 1]
        keep = []
        for act in game.actions[agent - 1]:
            ok = True
            for rest in itertools.product(*others):
                base = rest[: agent - 1] + (act,) + rest[agent - 1 :]
                value = game.outcome(base)
                for alt in game.actions[agent - 1]:
                    other = rest[: agent - 1] + (alt,) + rest[agent - 1 :]
                    if order.strictly_better(game.outcome(other), value):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                keep.append(act)
        dominant.append(keep)
    return tuple(itertools.product(*dominant))


def solution_set(game: GameForm, truth: Profile, concept: SolutionConcept) -> tuple[tuple, ...]:
    if concept is SolutionConcept.NE:
        return nash_equilibria(game, truth)
    if concept is SolutionConcept.DOMEQ:
        return dom_equilibria(game, truth)
    raise ValueError(f"unknown solution concept {concept}")


@dataclass(frozen=True)
class ImplementationReport:
    """Verdict plus the canonically-first offending pair on failure.

    `failure` is "empty_solution_set" when some game has no equilibrium at
    all, or "wrong_outcome" when an equilibrium's outcome disagrees with
    the choice function.
    """

    ok: bool
    failure: Optional[str] = None
    profile: Optional[Profile] = None
    action_profile: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def implements(game: GameForm, table: ScfTable, concept: SolutionConcept) -> ImplementationReport:
    """Whether the game form implements the SCF under the solution concept:
    every preference profile yields a non-empty solution set, all of whose
    outcomes match the function."""
    if game.n != table.agents or set(game.outcomes) != set(table.outcomes):
        raise InvalidDomain("game form and SCF must share agents and outcomes")
    for profile in all_profiles(table.agents, table.outcomes):
        answers = solution_set(game, profile, concept)
        if not answers:
            return ImplementationReport(False, "empty_solution_set", profile, None)
        target = table(profile)
        for combo in answers:
            if game.outcome(combo) != target:
                return ImplementationReport(False, "wrong_outcome", profile, combo)
    return ImplementationReport(True)


def _require_direct(game: GameForm, outcomes: tuple[str, ...]) -> None:
    orders = set(all_linear_orders(outcomes))
    for acts in game.actions:
        if set(acts) != orders:
            raise NonDirectMechanism(
                "truthful implementation needs a direct mechanism"
                " (every action set must be the set of rankings)"
            )


def truthfully_implements(
    game: GameForm, table: ScfTable, concept: SolutionConcept
) -> ImplementationReport:
    """Whether reporting the true profile is always in the solution set and
    yields the prescribed outcome.  Requires a direct mechanism."""
    if game.n != table.agents or set(game.outcomes) != set(table.outcomes):
        raise InvalidDomain("game form and SCF must share agents and outcomes")
    _require_direct(game, table.outcomes)
    for profile in all_profiles(table.agents, table.outcomes):
        sincere = profile.orders
        answers = solution_set(game, profile, concept)
        if sincere not in answers:
            return ImplementationReport(False, "empty_solution_set", profile, sincere)
        if game.outcome(sincere) != table(profile):
            return ImplementationReport(False, "wrong_outcome", profile, sincere)
    return ImplementationReport(True)


def is_strategy_proof(table: ScfTable) -> bool:
    """Truth-telling is a dominant strategy under the induced direct
    mechanism, for every true profile."""
    return truthfully_implements(scf_as_game_form(table), table, SolutionConcept.DOMEQ).ok


@dataclass(frozen=True)
class MonotonicityReport:
    ok: bool
    profile: Optional[Profile] = None
    profile_after: Optional[Profile] = None
    outcome: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def is_monotonic(table: ScfTable) -> MonotonicityReport:
    """Scan all profile pairs: if the chosen outcome keeps or improves its
    standing in every agent's report, it must stay chosen."""
    profiles = all_profiles(table.agents, table.outcomes)
    for before in profiles:
        x = table(before)
        for after in profiles:
            rises = all(
                after.order(agent).at_least_as_good(x, y)
                for agent in range(1, table.agents + 1)
                for y in table.outcomes
                if before.order(agent).at_least_as_good(x, y)
            )
            if rises and table(after) != x:
                return MonotonicityReport(False, before, after, x)
    return MonotonicityReport(True)


def has_citsov(table: ScfTable) -> bool:
    """Citizen sovereignty: every outcome is attained at some profile."""
    return table.feasible_outcomes() == frozenset(table.outcomes)


def is_dictatorial(table: ScfTable) -> tuple[bool, Optional[int]]:
    """Whether some agent's reported top always wins; returns the first
    such agent if any."""
    for agent in range(1, table.agents + 1):
        if all(table(p) == p.order(agent).top for p in table.profiles):
            return True, agent
    return False, None


@dataclass(frozen=True)
class AuditReport:
    """Cross-check of the four equivalent routes to strategy-proofness:
    truthful dominant-strategy implementation, dominant-strategy
    implementation, monotonicity, and the logical encoding."""

    truthful_dom: bool
    dom_implement: bool
    monotonic: bool
    strproof_encoding: bool

    @property
    def truthful_vs_implement(self) -> bool:
        return self.truthful_dom == self.dom_implement

    @property
    def monotonic_vs_truthful(self) -> bool:
        return self.monotonic == self.truthful_dom

    @property
    def encoding_vs_truthful(self) -> bool:
        return self.strproof_encoding == self.truthful_dom

    @property
    def all_agree(self) -> bool:
        return self.truthful_vs_implement and self.monotonic_vs_truthful and self.encoding_vs_truthful


def equivalence_audit(table: ScfTable) -> AuditReport:
    from .decision import check_scf_property
    from .encodings import STRPROOF

    direct = scf_as_game_form(table)
    return AuditReport(
        truthful_dom=truthfully_implements(direct, table, SolutionConcept.DOMEQ).ok,
        dom_implement=implements(direct, table, SolutionConcept.DOMEQ).ok,
        monotonic=is_monotonic(table).ok,
        strproof_encoding=check_scf_property(table, STRPROOF).status == "valid",
    )
