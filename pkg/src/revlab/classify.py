"""Scope computation and belief classification.

Everything here quantifies over formula classes, i.e. world-set masks; a
set of classes is itself encoded as an int bitset with bit c set iff class
c belongs (at n atoms there are 2^(2^n) classes, so the bitset stays an
int).  The operator argument is duck-typed: anything with
``revise_beliefs(state, alpha) -> mask``.

The central derived objects per (operator, state) are:

* the belief table T with T[a] = models of Bel(state revised by a),
* acceptance conditions S1/S2 per class, computed from T,
* latent / reasonable classes, computed from S1/S2,

and per (operator, universe): inherent / immanent classes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .prop import Signature
from .states import EpistemicState, StateUniverse


def bel_table_of(op, st: EpistemicState, sig: Signature) -> tuple[int, ...]:
    """Posterior belief mask for every formula class."""
    fast = getattr(op, "bel_table", None)
    if fast is not None:
        return fast(st, 1 << sig.n_worlds)
    return tuple(op.revise_beliefs(st, a) for a in range(1 << sig.n_worlds))


def _iter_supersets(a: int, full: int):
    comp = full & ~a
    s = comp
    while True:
        yield a | s
        if s == 0:
            return
        s = (s - 1) & comp


def _iter_subsets(a: int):
    s = a
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & a


@dataclass(frozen=True)
class StateClassification:
    """Per-state classification bitsets (bit c set iff class c qualifies)."""

    sig: Signature
    table: tuple[int, ...]
    s1: int
    s2: int
    latent: int
    reasonable: int
    scope_syntactic: int


def classify_state(op, st: EpistemicState, sig: Signature) -> StateClassification:
    full = sig.all_worlds
    n_classes = 1 << sig.n_worlds
    table = bel_table_of(op, st, sig)

    s1 = 0
    s2 = 0
    for a in range(n_classes):
        ta = table[a]
        # S1: a consistent with prior beliefs => revising by any weaker b
        # yields at most the beliefs of revising by a (model-wise: T[a] ⊆ T[b]).
        if st.bel & a:
            ok = all(ta & ~table[b] == 0 for b in _iter_supersets(a, full))
        else:
            ok = True
        if ok:
            s1 |= 1 << a
        # S2: whenever revising by b keeps at least the beliefs of revising
        # by a, the result of b is consistent with a.
        ok = True
        for b in range(n_classes):
            tb = table[b]
            if ta & ~tb == 0 and tb & a == 0:
                ok = False
                break
        if ok:
            s2 |= 1 << a

    both = s1 & s2
    latent = 0
    for a in range(1, n_classes):
        if all((both >> b) & 1 for b in _iter_subsets(a) if b):
            latent |= 1 << a

    reasonable = 0
    for a in range(1, n_classes):
        cover = 0
        for b in _iter_subsets(a):
            if b and (latent >> b) & 1:
                cover |= b
        if cover == a:
            reasonable |= 1 << a

    scope = 0
    for a in range(n_classes):
        if table[a] & ~a == 0:
            scope |= 1 << a

    return StateClassification(sig, table, s1, s2, latent, reasonable, scope)


def satisfies_S1(op, st: EpistemicState, alpha: int, sig: Signature) -> bool:
    return bool((classify_state(op, st, sig).s1 >> alpha) & 1)


def satisfies_S2(op, st: EpistemicState, alpha: int, sig: Signature) -> bool:
    return bool((classify_state(op, st, sig).s2 >> alpha) & 1)


def is_latent(op, st: EpistemicState, alpha: int, sig: Signature) -> bool:
    """alpha and every consistent strengthening satisfy both S1 and S2."""
    return bool((classify_state(op, st, sig).latent >> alpha) & 1)


def is_reasonable(op, st: EpistemicState, alpha: int, sig: Signature) -> bool:
    """alpha is a (nonempty) union of latent classes."""
    return bool((classify_state(op, st, sig).reasonable >> alpha) & 1)


def syntactic_scope(op, st: EpistemicState, sig: Signature) -> set[int]:
    """Classes accepted by revision: revising by them makes them believed."""
    table = bel_table_of(op, st, sig)
    return {a for a in range(1 << sig.n_worlds) if table[a] & ~a == 0}


def semantic_scope(st: EpistemicState, sig: Signature) -> set[int]:
    """Believed classes plus classes meeting the state's scope set."""
    return {
        a
        for a in range(1 << sig.n_worlds)
        if st.bel & ~a == 0 or a & st.scope
    }


# ---------------------------------------------------------------------------
# Operator-global notions (quantified over a universe of states)


def inherent_classes(op, universe: StateUniverse) -> int:
    """Bitset of classes accepted with exactly their own consequences in every state.

    The contradiction is never counted as inherent (matching the convention
    for reasonableness and immanence), so inherent classes are always
    immanent.
    """
    sig = universe.sig
    n_classes = 1 << sig.n_worlds
    bits = 0
    for a in range(1, n_classes):
        if all(op.revise_beliefs(st, a) == a for st in universe.iter_states()):
            bits |= 1 << a
    return bits


def immanent_classes(op, universe: StateUniverse) -> int:
    """Bitset of classes expressible as a union of inherent classes."""
    inh = inherent_classes(op, universe)
    n_classes = 1 << universe.sig.n_worlds
    bits = 0
    for a in range(1, n_classes):
        cover = 0
        for b in _iter_subsets(a):
            if b and (inh >> b) & 1:
                cover |= b
        if cover == a:
            bits |= 1 << a
    return bits


def is_inherent(op, universe: StateUniverse, alpha: int) -> bool:
    if alpha == 0:
        return False
    return all(op.revise_beliefs(st, alpha) == alpha for st in universe.iter_states())


def is_immanent(op, universe: StateUniverse, alpha: int) -> bool:
    return bool((immanent_classes(op, universe) >> alpha) & 1)


# ---------------------------------------------------------------------------
# Closure properties of class sets


def check_ssc(classes: set[int], sig: Signature) -> bool:
    """Single-sentence closure: with a class, every weaker class belongs."""
    full = sig.all_worlds
    return all(d in classes for c in classes for d in _iter_supersets(c, full))


def check_dc(classes: set[int], sig: Signature) -> bool:
    """Disjunction completeness: a split of any member has a member side.

    Literal form: whenever c ∪ d is in the set, c or d is.  All covering
    pairs are enumerated, not only partitions.
    """
    for e in classes:
        for c in _iter_subsets(e):
            rest = e & ~c
            for extra in _iter_subsets(c):
                d = rest | extra
                if c not in classes and d not in classes:
                    return False
    return True


def find_witness_M(classes: set[int], sig: Signature) -> int | None:
    """World set M with: the set equals every class meeting M, or None.

    Exists iff the class set satisfies both closure properties (classes must
    all be nonempty).
    """
    m = 0
    for w in range(sig.n_worlds):
        if (1 << w) in classes:
            m |= 1 << w
    generated = {a for a in range(1, 1 << sig.n_worlds) if a & m}
    return m if generated == classes else None


def classification_report(op, st: EpistemicState, universe: StateUniverse | None, sig: Signature) -> list[str]:
    """One line per class: scope / latent / reasonable (+ inherent / immanent)."""
    cls = classify_state(op, st, sig)
    inh = inherent_classes(op, universe) if universe is not None else None
    imm = immanent_classes(op, universe) if universe is not None else None
    lines = []
    for a in range(1 << sig.n_worlds):
        flags = [
            f"scope={'y' if (cls.scope_syntactic >> a) & 1 else 'n'}",
            f"latent={'y' if (cls.latent >> a) & 1 else 'n'}",
            f"reasonable={'y' if (cls.reasonable >> a) & 1 else 'n'}",
        ]
        if inh is not None:
            flags.append(f"inherent={'y' if (inh >> a) & 1 else 'n'}")
            flags.append(f"immanent={'y' if (imm >> a) & 1 else 'n'}")
        lines.append(f"class {a}: " + " ".join(flags))
    return lines
