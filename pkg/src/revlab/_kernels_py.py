"""Pure-Python revision kernels.

These four functions are the inner loop of every exhaustive suite: belief
revision is repeated minimisation of world-set masks over level lists, and
the verifier calls them millions of times.  A compiled twin with the same
signatures lives in `_kernels_cy.pyx`; `revlab.kernels` picks one at import
time and the test suite pins their agreement.

Orders are passed as tuples of disjoint nonempty level masks, most
plausible level first.  Update-rule codes match `revlab.kernels`.
"""

from __future__ import annotations

ORDER_KEEP = 0
ORDER_NATURAL = 1
ORDER_LEX = 2

SCOPE_KEEP = 0
SCOPE_DOC = 1
SCOPE_RESULT_ONLY = 2


def min_mask(levels: tuple[int, ...], candidates: int) -> int:
    """Minimal candidates inside the order's domain; 0 if none."""
    for level in levels:
        hit = level & candidates
        if hit:
            return hit
    return 0


def revise_mask(levels: tuple[int, ...], scope: int, bel: int, alpha: int) -> int:
    """Belief revision over a limited total preorder.

    Minimises alpha over the order when alpha meets the scope, keeps the
    prior beliefs otherwise.
    """
    if scope & alpha:
        return min_mask(levels, alpha)
    return bel


def bel_table(levels: tuple[int, ...], scope: int, bel: int, n_classes: int) -> list[int]:
    """Posterior belief mask for every formula class 0..n_classes-1."""
    out = [bel] * n_classes
    for alpha in range(n_classes):
        if scope & alpha:
            out[alpha] = min_mask(levels, alpha)
    return out


def posterior(
    levels: tuple[int, ...],
    scope: int,
    bel: int,
    alpha: int,
    order_rule: int,
    scope_rule: int,
    repair: int,
) -> tuple[int, int, tuple[int, ...]]:
    """Full posterior state (bel', scope', levels') under an update policy.

    Worlds entering the scope from outside the prior domain are appended as
    a least-plausible level.  Emptied scopes fall back to the prior scope
    (domains must stay nonempty).  With `repair` (or the natural rule) the
    new belief minimum is promoted to a fresh level 0, which re-establishes
    faithfulness of the posterior.
    """
    bel2 = revise_mask(levels, scope, bel, alpha)

    if scope_rule == SCOPE_KEEP:
        scope2 = scope
    elif scope_rule == SCOPE_DOC:
        scope2 = bel2 | (scope & alpha)
    else:
        scope2 = bel2
    if scope2 == 0:
        scope2 = scope

    domain = 0
    for level in levels:
        domain |= level
    fresh = scope2 & ~domain

    if order_rule == ORDER_LEX:
        new_levels = [lv & scope2 & alpha for lv in levels]
        if fresh & alpha:
            new_levels.append(fresh & alpha)
        new_levels += [lv & scope2 & ~alpha for lv in levels]
        if fresh & ~alpha:
            new_levels.append(fresh & ~alpha)
        new_levels = [lv for lv in new_levels if lv]
    else:
        new_levels = [lv for lv in (lv & scope2 for lv in levels) if lv]
        if fresh:
            new_levels.append(fresh)

    promoted = bel2 & scope2
    if promoted and (order_rule == ORDER_NATURAL or repair):
        rest = [lv & ~promoted for lv in new_levels]
        new_levels = [promoted] + [lv for lv in rest if lv]

    return bel2, scope2, tuple(new_levels)
