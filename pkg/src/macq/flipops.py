"""Flip operators on fillings: the deterministic inv/quinv flips tau_i and
rho_i, their probabilistic non-attacking refinements, and chain
probabilities along positive distinguished subexpressions.

The probabilistic operators scan a pair of adjacent equal-height columns
(rho from the top down, tau from the bottom up), swap as they go, and at
each row either stop or continue with an exact q,t-rational probability.
Every outcome therefore has the form "swap a contiguous range of rows up to
the border".
"""

from __future__ import annotations

from . import fillings, shapes
from .fillings import INFINITY, ZERO, Q
from .qtalg import PolyQT, QTRat, RAT_ONE, binom_factor


def _check_compatible(f, i):
    if i not in shapes.compatible_indices(f.shape):
        raise ValueError(f"index {i} is not compatible with shape {f.shape}")


def t_swap_range(f, i, lo, hi):
    """Exchange the entries of rows lo..hi between columns i and i+1."""
    _check_compatible(f, i)
    if not 1 <= lo <= hi <= f.shape[i - 1]:
        raise ValueError(f"rows {lo}..{hi} out of range for column {i}")
    cols = list(f.cols)
    a = list(cols[i - 1])
    b = list(cols[i])
    for r in range(lo - 1, hi):
        a[r], b[r] = b[r], a[r]
    cols[i - 1] = tuple(a)
    cols[i] = tuple(b)
    return f.with_cols(cols)


def tau(f, i):
    """Inversion flip: swap the lowest run of rows that changes inv by 1.

    The stopping row h is the lowest row >= the first difference where the
    swap leaves the gamma triple just above it with the same Q value.
    """
    _check_compatible(f, i)
    a_col, b_col = f.cols[i - 1], f.cols[i]
    if a_col == b_col:
        return f
    height = f.shape[i - 1]
    lo = next(r for r in range(1, height + 1) if a_col[r - 1] != b_col[r - 1])
    for h in range(lo, height + 1):
        above_i = a_col[h] if h < height else ZERO
        above_j = b_col[h] if h < height else ZERO
        if Q(above_i, a_col[h - 1], above_j) == Q(above_i, b_col[h - 1], above_j):
            return t_swap_range(f, i, lo, h)
    raise AssertionError("tau did not stop")  # unreachable: h = top always stops


def rho(f, i):
    """Queue-inversion flip: swap the highest run of rows, scanning down."""
    _check_compatible(f, i)
    a_col, b_col = f.cols[i - 1], f.cols[i]
    if a_col == b_col:
        return f
    height = f.shape[i - 1]
    hi = max(r for r in range(1, height + 1) if a_col[r - 1] != b_col[r - 1])
    for h in range(hi, 0, -1):
        below_i = a_col[h - 2] if h >= 2 else INFINITY
        below_j = b_col[h - 2] if h >= 2 else INFINITY
        if Q(a_col[h - 1], below_i, below_j) == Q(b_col[h - 1], below_i, below_j):
            return t_swap_range(f, i, h, hi)
    raise AssertionError("rho did not stop")  # unreachable: h = 1 always stops


def _case_iv_probs(ell, A, qval):
    """Stop/continue probabilities for the a=c case of the scans."""
    den = binom_factor(ell, A + 1)
    stop_num = binom_factor(0, 1)  # 1 - t
    if qval:
        stop_num = stop_num * PolyQT.monomial(ell, A)
    cont_num = binom_factor(ell, A)
    if not qval:
        cont_num = cont_num * PolyQT.monomial(0, 1)
    return QTRat(stop_num, den), QTRat(cont_num, den)


def rho_tilde(f, i):
    """Probabilistic quinv flip on a quinv-non-attacking filling.

    Returns the outcome set as a list of (filling, probability) pairs in
    deterministic order (stopping row descending).  Probabilities sum to 1
    and every outcome is again quinv-non-attacking.
    """
    _check_compatible(f, i)
    bad = fillings.attacking_violation(f, "quinv")
    if bad is not None:
        raise ValueError(f"not quinv-non-attacking: cells {bad[0]},{bad[1]}")
    L = f.shape[i - 1]
    conj = shapes.conjugate(f.shape)
    outcomes = []

    def scan(cur, r, prob):
        swapped = t_swap_range(cur, i, r, r)
        if r == 1:
            outcomes.append((swapped, prob))
            return
        a, b = cur.entry(r, i), cur.entry(r, i + 1)
        c, d = cur.entry(r - 1, i), cur.entry(r - 1, i + 1)
        if a == b or c == d or a == d:
            raise AssertionError("attacking window inside rho_tilde")
        if b == d:
            scan(swapped, r - 1, prob)
        elif b == c:
            outcomes.append((swapped, prob))
        elif a == c:
            ell = L - r + 1
            A = conj[r - 2] - (i + 1) + 1  # rarm(r, i+1) + 1
            stop_p, cont_p = _case_iv_probs(ell, A, Q(b, a, d))
            outcomes.append((swapped, prob * stop_p))
            scan(swapped, r - 1, prob * cont_p)
        elif Q(a, c, d) == Q(b, c, d):
            outcomes.append((swapped, prob))
        else:
            scan(swapped, r - 1, prob)

    scan(f, L, RAT_ONE)
    return outcomes


def tau_tilde(f, i):
    """Probabilistic inv flip on an inv-non-attacking filling."""
    _check_compatible(f, i)
    bad = fillings.attacking_violation(f, "inv")
    if bad is not None:
        raise ValueError(f"not inv-non-attacking: cells {bad[0]},{bad[1]}")
    L = f.shape[i - 1]
    conj = shapes.conjugate(f.shape)
    outcomes = []

    def scan(cur, r, prob):
        swapped = t_swap_range(cur, i, r, r)
        if r == L:
            outcomes.append((swapped, prob))
            return
        a, b = cur.entry(r, i), cur.entry(r, i + 1)
        c, d = cur.entry(r + 1, i), cur.entry(r + 1, i + 1)
        if a == b or c == d or a == d:
            raise AssertionError("attacking window inside tau_tilde")
        if b == d:
            scan(swapped, r + 1, prob)
        elif b == c:
            outcomes.append((swapped, prob))
        elif a == c:
            ell = L - r  # leg(r+1, i) + 1
            A = conj[r] - (i + 1) + 1  # arm(r+1, i+1) + 1
            stop_p, cont_p = _case_iv_probs(ell, A, Q(a, b, d))
            outcomes.append((swapped, prob * stop_p))
            scan(swapped, r + 1, prob * cont_p)
        elif Q(c, a, d) == Q(c, b, d):
            outcomes.append((swapped, prob))
        else:
            scan(swapped, r + 1, prob)

    scan(f, 1, RAT_ONE)
    return outcomes


def outcome_prob(outcomes, target):
    for g, p in outcomes:
        if g == target:
            return p
    return QTRat.zero()


# --------------------------------------------------------------------------
# Positive distinguished subexpressions
# --------------------------------------------------------------------------

def _scan_sequence(k):
    """Letter scan order from the fixed reduced word of the longest element:
    1..k-1, then 1..k-2, ..., then 1."""
    seq = []
    for top in range(k - 1, 0, -1):
        seq.extend(range(1, top + 1))
    return seq


def pds_of(perm):
    """The PDS word of a permutation (one-line tuple over 1..k).

    Returned as the list of simple-transposition indices in application
    order: applying the word left to right as position swaps carries the
    identity word to the permuted word, and each prefix is reduced.
    """
    k = len(perm)
    if sorted(perm) != list(range(1, k + 1)):
        raise ValueError(f"not a permutation of 1..{k}: {perm}")
    v = list(perm)
    word = []
    for idx in _scan_sequence(k):
        if v[idx - 1] > v[idx]:
            v[idx - 1], v[idx] = v[idx], v[idx - 1]
            word.append(idx)
    if v != sorted(v):
        raise AssertionError("PDS scan did not sort the permutation")
    return word


def evaluate_word(word, k):
    """One-line form of s_{word[-1]} o ... o s_{word[0]}."""
    out = list(range(1, k + 1))
    for idx in word:
        out = [idx + 1 if v == idx else idx if v == idx + 1 else v for v in out]
    return tuple(out)


def permutation_length(perm):
    return sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )


def sorting_word(source, target, lam):
    """PDS word of the block permutation taking the border ``source`` to
    ``target`` (blockwise rearrangements of each other)."""
    k = len(source)
    pinv = [None] * k
    for lo, hi in shapes.comparable_blocks(lam):
        block_src = list(source[lo - 1 : hi])
        block_tgt = list(target[lo - 1 : hi])
        if sorted(block_src) != sorted(block_tgt):
            raise ValueError(
                f"borders disagree on comparable block {lo}..{hi}: "
                f"{block_src} vs {block_tgt}"
            )
        for j in range(lo - 1, hi):
            pinv[j] = lo - 1 + block_src.index(target[j])
    perm = [None] * k
    for j, pos in enumerate(pinv):
        perm[pos] = j + 1
    return pds_of(tuple(perm))


_chain_cache = {}


def chain_distribution(sorted_f, border, side):
    """Distribution over fillings reached from a sorted filling by the PDS
    chain of probabilistic flips whose final border is ``border``.

    side="quinv": sorted_f is coquinv-sorted, steps are rho_tilde applied at
    top-border ascents.  side="inv": coinv-sorted, tau_tilde at bottom-border
    descents.  The returned dict maps fillings to exact probabilities summing
    to 1.
    """
    key = (sorted_f, tuple(border), side)
    cached = _chain_cache.get(key)
    if cached is not None:
        return cached
    lam = sorted_f.shape
    if side == "quinv":
        start = fillings.top_border(sorted_f)
        if start != fillings.inc_lambda(start, lam):
            raise ValueError("chain must start from a coquinv-sorted filling")
        read_border, step = fillings.top_border, rho_tilde
        ascending = True
    elif side == "inv":
        start = fillings.bottom_border(sorted_f)
        if start != fillings.dec_lambda(start, lam):
            raise ValueError("chain must start from a coinv-sorted filling")
        read_border, step = fillings.bottom_border, tau_tilde
        ascending = False
    else:
        raise ValueError(f"unknown side {side!r}")
    word = sorting_word(start, tuple(border), lam)
    dist = {sorted_f: RAT_ONE}
    for idx in word:
        new = {}
        for f, p in dist.items():
            w = read_border(f)
            if ascending:
                assert w[idx - 1] < w[idx], "step must sit at a border ascent"
            else:
                assert w[idx - 1] > w[idx], "step must sit at a border descent"
            for g, pr in step(f, idx):
                total = p * pr
                if g in new:
                    new[g] = new[g] + total
                else:
                    new[g] = total
        dist = new
    _chain_cache[key] = dist
    return dist


def chain_prob(sorted_f, target_f, side):
    """Total probability of producing target_f from sorted_f: the sum over
    all operator chains along the PDS; exactly 0 when unreachable."""
    if side == "quinv":
        border = fillings.top_border(target_f)
    else:
        border = fillings.bottom_border(target_f)
    dist = chain_distribution(sorted_f, border, side)
    return dist.get(target_f, QTRat.zero())
