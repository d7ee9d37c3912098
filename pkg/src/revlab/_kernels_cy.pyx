# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled revision kernels; same contract as `_kernels_py`.

Masks are C uint64 on the fast path, which covers every exhaustive-mode
signature (at most 16 worlds).  Wider masks delegate to the pure twin so
behaviour stays identical for large signatures.
"""

from . import _kernels_py as _py

ORDER_KEEP = 0
ORDER_NATURAL = 1
ORDER_LEX = 2

SCOPE_KEEP = 0
SCOPE_DOC = 1
SCOPE_RESULT_ONLY = 2

DEF MAX_LEVELS = 64

cdef inline bint _fits_u64(tuple levels, unsigned long long extra):
    cdef object lv
    if extra >> 63 > 1:
        return False
    for lv in levels:
        if (<object> lv).bit_length() > 63:
            return False
    return True


def min_mask(tuple levels, candidates):
    """Minimal candidates inside the order's domain; 0 if none."""
    cdef unsigned long long cand, hit
    cdef object lv
    if isinstance(candidates, int) and (<object> candidates).bit_length() <= 63 and _fits_u64(levels, 0):
        cand = <unsigned long long> candidates
        for lv in levels:
            hit = (<unsigned long long> lv) & cand
            if hit:
                return <object> hit
        return 0
    return _py.min_mask(levels, candidates)


def revise_mask(tuple levels, scope, bel, alpha):
    """Belief revision over a limited total preorder (keep-beliefs fallback)."""
    if (<object> scope).bit_length() > 63 or (<object> alpha).bit_length() > 63:
        return _py.revise_mask(levels, scope, bel, alpha)
    if (<unsigned long long> scope) & (<unsigned long long> alpha):
        return min_mask(levels, alpha)
    return bel


def bel_table(tuple levels, scope, bel, n_classes):
    """Posterior belief mask for every formula class 0..n_classes-1."""
    cdef unsigned long long c_scope, c_bel, alpha, hit, lv
    cdef unsigned long long c_levels[MAX_LEVELS]
    cdef Py_ssize_t n_levels, i
    cdef Py_ssize_t n = n_classes
    if (<object> n_classes).bit_length() > 32 or not _fits_u64(levels, 0) or len(levels) > MAX_LEVELS:
        return _py.bel_table(levels, scope, bel, n_classes)
    c_scope = <unsigned long long> scope
    c_bel = <unsigned long long> bel
    n_levels = len(levels)
    for i in range(n_levels):
        c_levels[i] = <unsigned long long> levels[i]
    out = [0] * n
    for alpha in range(<unsigned long long> n):
        if c_scope & alpha:
            hit = 0
            for i in range(n_levels):
                hit = c_levels[i] & alpha
                if hit:
                    break
            out[alpha] = hit
        else:
            out[alpha] = c_bel
    return out


def posterior(tuple levels, scope, bel, alpha, int order_rule, int scope_rule, int repair):
    """Full posterior (bel', scope', levels') under an update policy."""
    cdef unsigned long long c_scope, c_bel, c_alpha, bel2, scope2, domain, fresh, promoted, lv, hit
    cdef unsigned long long c_levels[MAX_LEVELS]
    cdef unsigned long long out_levels[2 * MAX_LEVELS + 2]
    cdef Py_ssize_t n_levels, i, n_out
    if (
        (<object> scope).bit_length() > 63
        or (<object> alpha).bit_length() > 63
        or (<object> bel).bit_length() > 63
        or not _fits_u64(levels, 0)
        or len(levels) > MAX_LEVELS
    ):
        return _py.posterior(levels, scope, bel, alpha, order_rule, scope_rule, repair)
    c_scope = <unsigned long long> scope
    c_bel = <unsigned long long> bel
    c_alpha = <unsigned long long> alpha
    n_levels = len(levels)
    domain = 0
    for i in range(n_levels):
        c_levels[i] = <unsigned long long> levels[i]
        domain |= c_levels[i]

    if c_scope & c_alpha:
        bel2 = 0
        for i in range(n_levels):
            hit = c_levels[i] & c_alpha
            if hit:
                bel2 = hit
                break
    else:
        bel2 = c_bel

    if scope_rule == SCOPE_KEEP:
        scope2 = c_scope
    elif scope_rule == SCOPE_DOC:
        scope2 = bel2 | (c_scope & c_alpha)
    else:
        scope2 = bel2
    if scope2 == 0:
        scope2 = c_scope

    fresh = scope2 & ~domain
    n_out = 0
    if order_rule == ORDER_LEX:
        for i in range(n_levels):
            lv = c_levels[i] & scope2 & c_alpha
            if lv:
                out_levels[n_out] = lv
                n_out += 1
        if fresh & c_alpha:
            out_levels[n_out] = fresh & c_alpha
            n_out += 1
        for i in range(n_levels):
            lv = c_levels[i] & scope2 & ~c_alpha
            if lv:
                out_levels[n_out] = lv
                n_out += 1
        if fresh & ~c_alpha:
            out_levels[n_out] = fresh & ~c_alpha
            n_out += 1
    else:
        for i in range(n_levels):
            lv = c_levels[i] & scope2
            if lv:
                out_levels[n_out] = lv
                n_out += 1
        if fresh:
            out_levels[n_out] = fresh
            n_out += 1

    promoted = bel2 & scope2
    if promoted and (order_rule == ORDER_NATURAL or repair):
        result = [<object> promoted]
        for i in range(n_out):
            lv = out_levels[i] & ~promoted
            if lv:
                result.append(<object> lv)
        return (<object> bel2, <object> scope2, tuple(result))

    result = []
    for i in range(n_out):
        result.append(<object> out_levels[i])
    return (<object> bel2, <object> scope2, tuple(result))
