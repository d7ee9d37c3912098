"""Revision operator families, update policies, and assignment reconstruction.

The semantic core is minimisation over a limited total preorder with a
keep-beliefs fallback when the input misses the order's domain:

* dl   — arbitrary faithful limited assignment (per-state scope),
* cl   — CLF-valid states (beliefs inside the scope, equal to its minimum),
* il   — one fixed scope shared by all states,
* agm  — scope is all of Ω, states FA-valid, and minimisation is plain
         (no fallback: only the contradiction misses a total domain, and
         revising by it empties the belief set).

States carry their own assignment, so iterated revision needs a rule for
the posterior (order, scope).  That rule is the UpdatePolicy, an explicit
(order_rule x scope_rule) parameter; the verifier tests which policies
satisfy which iteration postulates rather than baking one answer in.

`agm_revise_beliefs` is plain minimisation and therefore maps the
contradiction to the inconsistent belief set, while the shared core keeps
the prior beliefs there (its scope never meets an inconsistent input).
The two coincide on every consistent input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import classify, kernels
from .errors import (
    InvariantError,
    NonWeakOrderError,
    ParseError,
    PreconditionError,
    ScopeMismatchError,
    TableMissError,
)
from .orders import RankedOrder, min_set
from .prop import Signature, iter_worlds
from .states import EpistemicState, StateUniverse, check_clf, check_fa

ORDER_RULES = {
    "keep": kernels.ORDER_KEEP,
    "natural": kernels.ORDER_NATURAL,
    "lex": kernels.ORDER_LEX,
}
SCOPE_RULES = {
    "keep": kernels.SCOPE_KEEP,
    "doc": kernels.SCOPE_DOC,
    "result_only": kernels.SCOPE_RESULT_ONLY,
}
FAMILIES = ("dl", "cl", "agm", "il")


@dataclass(frozen=True)
class UpdatePolicy:
    """Posterior (order, scope) rule; `doc` shrinks the scope to the accepted part.

    With faithful_repair the new belief minimum is promoted to a fresh
    level 0 after reordering, keeping iterated states faithful.
    """

    order_rule: str = "keep"
    scope_rule: str = "keep"
    faithful_repair: bool = True

    def __post_init__(self):
        if self.order_rule not in ORDER_RULES:
            raise ValueError(f"unknown order rule {self.order_rule!r}")
        if self.scope_rule not in SCOPE_RULES:
            raise ValueError(f"unknown scope rule {self.scope_rule!r}")

    def __str__(self):
        return f"{self.order_rule}/{self.scope_rule}"


def all_policies() -> tuple[UpdatePolicy, ...]:
    return tuple(
        UpdatePolicy(o, s) for o, s in product(ORDER_RULES, SCOPE_RULES)
    )


# ---------------------------------------------------------------------------
# Belief-level equations


def dl_revise_beliefs(st: EpistemicState, alpha: int) -> int:
    """Minimise alpha over the state's order when alpha meets the scope, else keep."""
    return kernels.revise_mask(st.order.levels, st.scope, st.bel, alpha)


def cl_revise_beliefs(st: EpistemicState, alpha: int) -> int:
    """Same equation with the scope read as the credible set; needs a CLF state."""
    if not check_clf(st):
        raise PreconditionError("cl revision needs a CLF-valid state")
    return dl_revise_beliefs(st, alpha)


def agm_revise_beliefs(st: EpistemicState, alpha: int, sig: Signature) -> int:
    """Plain minimisation over a total faithful order; alpha = ⊥ yields ⊥.

    This is the one place the belief equation differs from the shared
    (fallback) core: revising by the contradiction empties the belief set
    here, while the core keeps the prior beliefs.  They agree on every
    consistent input.
    """
    if not check_fa(st, sig):
        raise PreconditionError("agm revision needs an FA-valid state (scope = Ω)")
    return min_set(alpha, st.order)


def il_revise_beliefs(op: "RevisionOperator", st: EpistemicState, alpha: int) -> int:
    """Fixed-scope revision; the state's scope must equal the operator's."""
    if op.family != "il":
        raise PreconditionError("il revision needs an il-family operator")
    return op.revise_beliefs(st, alpha)


@dataclass(frozen=True)
class RevisionOperator:
    family: str
    policy: UpdatePolicy = field(default_factory=UpdatePolicy)
    il_scope: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "il" and not self.il_scope:
            raise InvariantError("il operator needs a fixed nonempty scope")

    @property
    def name(self) -> str:
        extra = f" scope={self.il_scope}" if self.family == "il" else ""
        return f"{self.family}({self.policy}){extra}"

    def revise_beliefs(self, st: EpistemicState, alpha: int) -> int:
        if self.family == "il" and st.scope != self.il_scope:
            raise ScopeMismatchError(
                f"state scope {st.scope} differs from operator scope {self.il_scope}"
            )
        if self.family == "agm":
            # plain minimisation: no keep-beliefs fallback, ⊥ empties
            return kernels.min_mask(st.order.levels, alpha)
        return kernels.revise_mask(st.order.levels, st.scope, st.bel, alpha)

    def bel_table(self, st: EpistemicState, n_classes: int) -> tuple[int, ...]:
        """Posterior beliefs for every class at once (kernel fast path)."""
        if self.family == "il" and st.scope != self.il_scope:
            raise ScopeMismatchError(
                f"state scope {st.scope} differs from operator scope {self.il_scope}"
            )
        table = list(kernels.bel_table(st.order.levels, st.scope, st.bel, n_classes))
        if self.family == "agm":
            for alpha in range(n_classes):
                if not alpha & st.scope:
                    table[alpha] = kernels.min_mask(st.order.levels, alpha)
        return tuple(table)

    def apply(self, st: EpistemicState, alpha: int) -> EpistemicState:
        """Full posterior state; families with a fixed scope keep it."""
        scope_rule = self.policy.scope_rule
        if self.family in ("agm", "il"):
            scope_rule = "keep"
        if self.family == "il" and st.scope != self.il_scope:
            raise ScopeMismatchError(
                f"state scope {st.scope} differs from operator scope {self.il_scope}"
            )
        if self.family == "agm" and not alpha & st.scope:
            # revision by an input missing the order entirely (⊥ on valid
            # states): beliefs empty, structure untouched
            return EpistemicState(0, st.scope, st.order)
        bel2, scope2, levels2 = kernels.posterior(
            st.order.levels,
            st.scope,
            st.bel,
            alpha,
            ORDER_RULES[self.policy.order_rule],
            SCOPE_RULES[scope_rule],
            1 if self.policy.faithful_repair else 0,
        )
        return EpistemicState(bel2, scope2, RankedOrder(levels2))


@dataclass(frozen=True)
class ExtensionalOperator:
    """A revision operator given by a lookup table over universe x classes."""

    sig: Signature
    states: tuple[EpistemicState, ...]
    mapping: dict[tuple[EpistemicState, int], EpistemicState]

    def revise_beliefs(self, st: EpistemicState, alpha: int) -> int:
        return self.apply(st, alpha).bel

    def apply(self, st: EpistemicState, alpha: int) -> EpistemicState:
        try:
            return self.mapping[(st, alpha)]
        except KeyError:
            raise TableMissError(f"no table entry for state {st} and class {alpha}") from None

    def check_total(self) -> None:
        n_classes = 1 << self.sig.n_worlds
        for st in self.states:
            for alpha in range(n_classes):
                if (st, alpha) not in self.mapping:
                    raise TableMissError(f"missing entry ({st}, {alpha})")


def tabulate(op, universe: StateUniverse) -> ExtensionalOperator:
    """Freezes an operator's behaviour on a universe into a lookup table."""
    sig = universe.sig
    states = tuple(universe.iter_states())
    mapping = {
        (st, alpha): op.apply(st, alpha)
        for st in states
        for alpha in range(1 << sig.n_worlds)
    }
    return ExtensionalOperator(sig, states, mapping)


# ---------------------------------------------------------------------------
# Canonical assignment reconstruction (the representation-theorem construction)


def canonical_assignment(
    op, st: EpistemicState, sig: Signature, family: str = "dl"
) -> tuple[RankedOrder, int]:
    """Rebuilds (order, scope) from the operator's revision behaviour alone.

    The scope is the set of worlds whose minterm formula is latent (for the
    cl family: accepted), and w1 precedes w2 iff w1 survives revision by
    the two-world disjunction.  Raises NonWeakOrderError when the pairwise
    relation is not a weak order, which signals a postulate violation.
    """
    if family == "cl":
        domain = 0
        for w in range(sig.n_worlds):
            if op.revise_beliefs(st, 1 << w) & ~(1 << w) == 0:
                domain |= 1 << w
    else:
        cls = classify.classify_state(op, st, sig)
        domain = 0
        for w in range(sig.n_worlds):
            if (cls.latent >> (1 << w)) & 1:
                domain |= 1 << w
    if domain == 0:
        raise NonWeakOrderError("reconstructed scope is empty")

    worlds = list(iter_worlds(domain))
    pair = {}
    for w1 in worlds:
        for w2 in worlds:
            result = op.revise_beliefs(st, (1 << w1) | (1 << w2))
            pair[(w1, w2)] = bool(result & (1 << w1))
    for w1 in worlds:
        for w2 in worlds:
            if not (pair[(w1, w2)] or pair[(w2, w1)]):
                raise NonWeakOrderError("pairwise relation is not total", witness=(w1, w2))

    levels = []
    remaining = list(worlds)
    placed = 0
    while remaining:
        minimal = [w for w in remaining if all(pair[(w, v)] for v in remaining)]
        if not minimal:
            raise NonWeakOrderError(
                "pairwise relation has no minimal element", witness=tuple(remaining)
            )
        mask = 0
        for w in minimal:
            mask |= 1 << w
        levels.append(mask)
        placed |= mask
        remaining = [w for w in remaining if not placed & (1 << w)]
    order = RankedOrder(tuple(levels))

    for w1 in worlds:
        for w2 in worlds:
            if (order.level_of(w1) <= order.level_of(w2)) != pair[(w1, w2)]:
                raise NonWeakOrderError(
                    "pairwise relation is not transitive", witness=(w1, w2)
                )
    return order, domain


# ---------------------------------------------------------------------------
# Operator spec files


def dump_operator(op: RevisionOperator | ExtensionalOperator) -> str:
    if isinstance(op, ExtensionalOperator):
        return _dump_extensional(op)
    lines = [f"family: {op.family}"]
    if op.family == "il":
        lines.append(f"il_scope: {op.il_scope}")
    lines.append(f"order_rule: {op.policy.order_rule}")
    lines.append(f"scope_rule: {op.policy.scope_rule}")
    return "\n".join(lines) + "\n"


def _dump_extensional(op: ExtensionalOperator) -> str:
    sig = op.sig
    index = {st: i for i, st in enumerate(op.states)}

    def state_line(st: EpistemicState) -> str:
        return (
            f"bel {sig.worldset_str(st.bel)} ; scope {sig.worldset_str(st.scope)} ; "
            f"order {st.order.to_text(sig)}"
        )

    lines = ["family: extensional", f"sig: {' '.join(sig.atoms)}"]
    lines += [f"state {i}: {state_line(st)}" for i, st in enumerate(op.states)]
    for (st, alpha), post in sorted(
        op.mapping.items(), key=lambda kv: (index[kv[0][0]], kv[0][1])
    ):
        lines.append(f"entry: {index[st]} {alpha} {index[post]}")
    return "\n".join(lines) + "\n"


def parse_operator(text: str, sig: Signature | None = None) -> RevisionOperator | ExtensionalOperator:
    """Parses an operator spec file.

    Policy operators are `family:`/`order_rule:`/`scope_rule:` lines
    (plus `il_scope:` for the fixed-scope family).  Extensional operators
    additionally carry a `sig:` line, numbered `state k:` lines, and
    `entry: <state> <class-mask> <posterior-state>` triples.
    """
    fields: dict[str, str] = {}
    state_lines: dict[int, str] = {}
    entries: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if key.startswith("state "):
            state_lines[int(key.split()[1])] = value
        elif key == "entry":
            parts = value.split()
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: entry wants 'state class state', got {value!r}")
            entries.append(tuple(int(x) for x in parts))
        else:
            fields[key] = value
    family = fields.get("family")
    if family == "extensional":
        return _parse_extensional(fields, state_lines, entries)
    if family not in FAMILIES:
        raise ParseError(f"family must be one of {FAMILIES + ('extensional',)}, got {family!r}")
    policy = UpdatePolicy(
        fields.get("order_rule", "keep"), fields.get("scope_rule", "keep")
    )
    il_scope = None
    if family == "il":
        if "il_scope" not in fields:
            raise ParseError("il operator file needs an il_scope line")
        raw_scope = fields["il_scope"]
        if sig is not None and not raw_scope.strip().isdigit():
            il_scope = sig.worldset_of_strs(raw_scope)
        else:
            il_scope = int(raw_scope)
    return RevisionOperator(family, policy, il_scope)


def _parse_extensional(fields, state_lines, entries) -> ExtensionalOperator:
    if "sig" not in fields:
        raise ParseError("extensional operator file needs a sig line")
    sig = Signature.of(fields["sig"])
    states: dict[int, EpistemicState] = {}
    for idx, body in state_lines.items():
        parts = {}
        for chunk in body.split(";"):
            keyword, _, rest = chunk.strip().partition(" ")
            parts[keyword] = rest.strip()
        if set(parts) != {"bel", "scope", "order"}:
            raise ParseError(f"state {idx}: want 'bel ... ; scope ... ; order [...]'")
        states[idx] = EpistemicState(
            sig.worldset_of_strs(parts["bel"]),
            sig.worldset_of_strs(parts["scope"]),
            RankedOrder.from_text(parts["order"], sig),
        )
    mapping = {}
    for sid, alpha, pid in entries:
        if sid not in states or pid not in states:
            raise ParseError(f"entry references unknown state id in ({sid}, {alpha}, {pid})")
        mapping[(states[sid], alpha)] = states[pid]
    ordered = tuple(states[i] for i in sorted(states))
    return ExtensionalOperator(sig, ordered, mapping)
