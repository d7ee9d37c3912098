"""Epistemic states, assignment validity checks, and finite state universes.

A state carries its own assignment: the triple (belief models, scope,
ranked order over the scope).  The three nested validity notions:

* faithful limited: if beliefs meet the scope they are exactly its minimum,
* CLF: beliefs lie inside the scope and equal its minimum,
* FA: scope is all of Ω and beliefs are exactly level 0.

Universes are the quantification domains of the postulates ("for all Ψ").
They are materialised for up to 2 atoms; at 3 atoms the faithful universe
has ~4.4M members, so enumeration turns lazy and the verifier samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .errors import InvariantError, ParseError, TooLargeError
from .orders import RankedOrder, _enumerate_orders_unchecked, min_set
from .prop import Signature, iter_worlds

MAX_ATOMS_MATERIALISED = 2
MAX_ATOMS_LAZY = 3

UNIVERSE_KINDS = ("faithful", "clf", "fa", "il")


@dataclass(frozen=True)
class EpistemicState:
    bel: int
    scope: int
    order: RankedOrder

    def __post_init__(self):
        if self.scope == 0:
            raise InvariantError("scope must be nonempty")
        if self.order.domain != self.scope:
            raise InvariantError("order domain must equal the scope")


def check_faithful_limited(st: EpistemicState) -> bool:
    """Def of faithfulness for limited assignments: bel∩scope, when nonempty, is the minimum."""
    inter = st.bel & st.scope
    return inter == 0 or min_set(st.scope, st.order) == inter


def check_clf(st: EpistemicState) -> bool:
    """CLF validity: bel ⊆ scope and bel is exactly the scope minimum."""
    return st.bel & ~st.scope == 0 and min_set(st.scope, st.order) == st.bel


def check_fa(st: EpistemicState, sig: Signature) -> bool:
    """Total faithful assignment: scope = Ω and level 0 is exactly bel."""
    if st.scope != sig.all_worlds:
        return False
    return st.order.levels[0] == st.bel


@dataclass(frozen=True)
class StateUniverse:
    sig: Signature
    kind: str
    global_consistency: bool
    il_scope: int | None = None
    _states: tuple[EpistemicState, ...] | None = None
    _maker: Callable[[], Iterable[EpistemicState]] | None = None

    @property
    def states(self) -> tuple[EpistemicState, ...]:
        if self._states is None:
            raise TooLargeError(
                "universe is lazy (too large to materialise); use iter_states() or sampling"
            )
        return self._states

    def iter_states(self) -> Iterator[EpistemicState]:
        if self._states is not None:
            return iter(self._states)
        return iter(self._maker())

    def is_unbiased(self) -> bool:
        """Every consistent belief set occurs in some member state."""
        want = (1 << self.sig.all_worlds + 1) - 2  # bits 1..all_worlds
        seen = 0
        for st in self.iter_states():
            if st.bel:
                seen |= 1 << st.bel
        return seen & want == want

    def satisfies_global_consistency(self) -> bool:
        return all(st.bel != 0 for st in self.iter_states())


def _iter_states(
    sig: Signature, kind: str, global_consistency: bool, il_scope: int | None
) -> Iterator[EpistemicState]:
    full = sig.all_worlds
    if kind == "il":
        scopes: Iterable[int] = [il_scope]
    elif kind == "fa":
        scopes = [full]
    else:
        scopes = range(1, full + 1)
    for scope in scopes:
        outside = full & ~scope
        free = list(iter_worlds(outside))
        for order in _enumerate_orders_unchecked(scope):
            if kind in ("clf", "fa"):
                bottom_choices: Iterable[int] = [order.levels[0]]
            else:
                bottom_choices = [0, order.levels[0]]
            for inner in bottom_choices:
                for rest in range(1 << len(free)):
                    bel = inner
                    for i, w in enumerate(free):
                        if (rest >> i) & 1:
                            bel |= 1 << w
                    if kind in ("clf", "fa") and bel != inner:
                        continue
                    if global_consistency and bel == 0:
                        continue
                    yield EpistemicState(bel, scope, order)


def enumerate_states(
    sig: Signature,
    kind: str = "faithful",
    global_consistency: bool = False,
    il_scope: int | None = None,
) -> StateUniverse:
    """All states of the given validity kind over the signature.

    `kind`: faithful (every faithful limited assignment), clf, fa, or il
    (faithful with one fixed scope, passed as `il_scope`).
    """
    if kind not in UNIVERSE_KINDS:
        raise ValueError(f"unknown universe kind {kind!r}; want one of {UNIVERSE_KINDS}")
    if kind == "il":
        if not il_scope or il_scope & ~sig.all_worlds:
            raise InvariantError("il universe needs a nonempty il_scope within the signature")
    if sig.n_atoms > MAX_ATOMS_LAZY:
        raise TooLargeError(f"state enumeration supports at most {MAX_ATOMS_LAZY} atoms")

    if sig.n_atoms <= MAX_ATOMS_MATERIALISED or kind == "il":
        states = tuple(_iter_states(sig, kind, global_consistency, il_scope))
        return StateUniverse(sig, kind, global_consistency, il_scope, states, None)
    maker = lambda: _iter_states(sig, kind, global_consistency, il_scope)  # noqa: E731
    return StateUniverse(sig, kind, global_consistency, il_scope, None, maker)


def sample_states(
    sig: Signature,
    kind: str,
    count: int,
    rng: random.Random,
    global_consistency: bool = False,
    il_scope: int | None = None,
) -> list[EpistemicState]:
    """Random states of the given kind; the seeded complement of enumerate_states."""
    full = sig.all_worlds
    out = []
    for _ in range(count):
        if kind == "il":
            scope = il_scope
        elif kind == "fa":
            scope = full
        else:
            scope = rng.randrange(1, full + 1)
        worlds = list(iter_worlds(scope))
        rng.shuffle(worlds)
        levels: list[int] = []
        for w in worlds:
            if levels and rng.random() < 0.5:
                levels[rng.randrange(len(levels))] |= 1 << w
            else:
                levels.insert(rng.randrange(len(levels) + 1), 1 << w)
        order = RankedOrder(tuple(levels))
        if kind in ("clf", "fa"):
            bel = order.levels[0]
        else:
            inner = order.levels[0] if rng.random() < 0.5 else 0
            bel = inner | (rng.randrange(full + 1) & ~scope)
            if global_consistency and bel == 0:
                bel = order.levels[0]
        out.append(EpistemicState(bel, scope, order))
    return out


# ---------------------------------------------------------------------------
# State files (line-oriented; see dump_state for the shape)


def dump_state(sig: Signature, st: EpistemicState) -> str:
    return (
        f"sig: {' '.join(sig.atoms)}\n"
        f"bel: {sig.worldset_str(st.bel)}\n"
        f"scope: {sig.worldset_str(st.scope)}\n"
        f"order: {st.order.to_text(sig)}\n"
    )


def parse_state(text: str) -> tuple[Signature, EpistemicState]:
    """Parses a state file; raises ParseError with the offending line number."""
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        key = key.strip()
        if key not in ("sig", "bel", "scope", "order"):
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value.strip()
    for key in ("sig", "bel", "scope", "order"):
        if key not in fields:
            raise ParseError(f"missing {key!r} line")
    sig = Signature.of(fields["sig"])
    bel = sig.worldset_of_strs(fields["bel"])
    scope = sig.worldset_of_strs(fields["scope"])
    order = RankedOrder.from_text(fields["order"], sig)
    return sig, EpistemicState(bel, scope, order)
