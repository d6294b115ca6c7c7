"""NumPy implementations of the hot kernels.

These are the reference semantics; the compiled backend must match them
bitwise.  Both kernels are pure array functions: the caller owns all
randomness, so backend choice cannot change simulation results.

Floating-point note: per-row sums are accumulated in strict left-to-right
order (np.cumsum) and the compiled backend replays the identical operation
order, which is what makes bitwise agreement possible.
"""

from __future__ import annotations

import numpy as np


def walk_chunk(
    u: np.ndarray,
    state: np.ndarray,
    p_zero: float,
    inc_zero: float,
    inc_one: float,
    log_a: float,
    log_b: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Advance independent log-ratio walks by at most one chunk of answers.

    u: uniforms in [0,1), shape (n, chunk); a draw below p_zero is a
    0-answer contributing inc_zero, otherwise inc_one.  state: current log
    ratios, shape (n,), all strictly inside (log_a, log_b).

    Returns (status, steps_taken, new_state): status 0 = still inside,
    1 = exited at or below log_a, 2 = exited at or above log_b; steps_taken
    counts answers consumed this chunk (the full chunk when status is 0).
    """
    n, chunk = u.shape
    incs = np.where(u < p_zero, inc_zero, inc_one)
    # s_j = state + (inc_0 + ... + inc_j), matching the compiled loop's order
    cum = state[:, None] + np.cumsum(incs, axis=1)
    hi = cum >= log_b
    lo = cum <= log_a
    hit = hi | lo
    any_hit = hit.any(axis=1)
    first = np.argmax(hit, axis=1)
    rows = np.arange(n)
    steps = np.where(any_hit, first + 1, chunk).astype(np.int64)
    status = np.zeros(n, dtype=np.int8)
    status[any_hit] = np.where(hi[rows[any_hit], first[any_hit]], 2, 1)
    new_state = np.where(any_hit, cum[rows, first], cum[:, -1])
    return status, steps, new_state


def consult_paths(
    bits: np.ndarray,
    inc_pos: np.ndarray,
    inc_neg: np.ndarray,
    log_a: float,
    log_b: float,
    z_star: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Run truncated sequential consultations over pre-drawn feedback.

    bits: feedback of the ordered peers, shape (n_scenarios, list_len);
    inc_pos/inc_neg: the matching log-ratio terms for answers 1/0.  Each row
    starts at log ratio 0, consults left to right, and stops once the sum
    leaves (log_a, log_b).  Rows that exhaust the list decide by the
    fallback: alarm when the final sum strictly exceeds z_star.

    Returns (decision, n_used): decision 1 = alarm; n_used counts consumed
    answers.
    """
    n, width = bits.shape
    if width == 0:
        decision = np.full(n, 1 if 0.0 > z_star else 0, dtype=np.uint8)
        return decision, np.zeros(n, dtype=np.int64)
    incs = np.where(bits != 0, inc_pos, inc_neg)
    cum = np.cumsum(incs, axis=1)
    hi = cum >= log_b
    lo = cum <= log_a
    hit = hi | lo
    any_hit = hit.any(axis=1)
    first = np.argmax(hit, axis=1)
    rows = np.arange(n)
    n_used = np.where(any_hit, first + 1, width).astype(np.int64)
    exhausted_alarm = cum[:, -1] > z_star
    decision = np.where(
        any_hit, hi[rows, first], exhausted_alarm
    ).astype(np.uint8)
    return decision, n_used
