"""Enumeration of partition and overpartition counters.

Two independent routes are provided for the multiplicity-side counters:

* a frequency-window dynamic program over part values, which builds the whole
  (parts, weight) table at once (the table is carried as one packed integer
  per window state, so each transition is a single bigint shift-and-add);
* a brute-force enumerator that generates every (over)partition and applies
  the membership predicate directly - the slow cross-check oracle.

The congruence-side counters are computed by direct bounded-knapsack counting
over the allowed part values, except for the product-defined exceptional case,
which takes its coefficients from the triple product.

All functions are pure; the memo tables are module-level dicts whose fills are
idempotent, so concurrent use is safe.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterator, Optional

from .series import PowerSeries, DomainError, q_poch_inf, triple_product

REGULAR = "regular"
OVER = "over"

_WORD = 64
_ONES = (1 << _WORD) - 1


@dataclass(frozen=True)
class CountParams:
    """Parameter tuple addressing one counter family.

    k >= 2, 1 <= d <= k, 0 <= s <= d - 1, 0 <= a <= k.  a = 0 is the
    degenerate boundary (the counters are identically zero there: no
    partition has a negative number of 1s).
    """

    k: int
    a: int
    d: int
    s: int
    flavor: str = REGULAR

    def __post_init__(self):
        if self.k < 2:
            raise DomainError("k must be at least 2")
        if not 1 <= self.d <= self.k:
            raise DomainError("d must satisfy 1 <= d <= k")
        if not 0 <= self.s <= self.d - 1:
            raise DomainError("s must satisfy 0 <= s <= d-1")
        if not 0 <= self.a <= self.k:
            raise DomainError("a must satisfy 0 <= a <= k")
        if self.flavor not in (REGULAR, OVER):
            raise DomainError(f"unknown flavor {self.flavor!r}")

    @property
    def is_over(self) -> bool:
        return self.flavor == OVER


@dataclass(frozen=True)
class FreqSolution:
    """A partition or overpartition encoded by part frequencies.

    freqs[i-1] is the number of non-overlined parts i; over_flags[i-1] is 0
    or 1 for the overlined copy.  A regular partition has over_flags all 0.
    """

    freqs: tuple[int, ...]
    over_flags: tuple[int, ...]

    def __post_init__(self):
        if len(self.freqs) != len(self.over_flags):
            raise ValueError("freqs and over_flags must have the same length")
        if any(f < 0 for f in self.freqs):
            raise ValueError("frequencies must be non-negative")
        if any(b not in (0, 1) for b in self.over_flags):
            raise ValueError("overline flags must be 0 or 1")

    @classmethod
    def from_parts(cls, parts, overlined=()) -> "FreqSolution":
        """Build from a list of part values plus the values that are overlined."""
        top = max(list(parts) + list(overlined) + [0])
        f = [0] * top
        fbar = [0] * top
        for v in parts:
            f[v - 1] += 1
        for v in overlined:
            if fbar[v - 1]:
                raise ValueError(f"part {v} overlined twice")
            fbar[v - 1] = 1
        return cls(tuple(f), tuple(fbar))

    @property
    def max_part(self) -> int:
        return len(self.freqs)

    @property
    def weight(self) -> int:
        return sum(
            i * (f + b) for i, (f, b) in enumerate(zip(self.freqs, self.over_flags), 1)
        )

    @property
    def num_parts(self) -> int:
        return sum(self.freqs) + sum(self.over_flags)

    def freq(self, i: int) -> int:
        return self.freqs[i - 1] if 1 <= i <= len(self.freqs) else 0

    def over_flag(self, i: int) -> int:
        return self.over_flags[i - 1] if 1 <= i <= len(self.over_flags) else 0

    def rho(self, i: int) -> int:
        """Signed count of overlined parts <= i: sum of (-1)^j over_flags[j]."""
        if i < 1:
            raise DomainError("rho is defined for i >= 1")
        return sum(
            (-1 if j % 2 else 1) * b for j, b in enumerate(self.over_flags[:i], 1)
        )

    def v_stat(self, i: int) -> int:
        """Unsigned count of overlined parts <= i."""
        if i < 1:
            raise DomainError("v_stat is defined for i >= 1")
        return sum(self.over_flags[:i])

    def is_regular(self) -> bool:
        return not any(self.over_flags)


def satisfies_mult_conditions(sol: FreqSolution, cp: CountParams) -> bool:
    """Membership predicate for the multiplicity-side counters.

    True iff (i) the non-overlined 1s number fewer than a, (ii) every window
    f_i + fbar_i + f_{i+1} stays below k, and (iii) whenever a window equals
    k - delta with 1 <= delta <= d-1, the residue
    (a + s - 1 - f_odd - rho(i)) mod d lies in {0, ..., delta-1}, where f_odd
    is f_i + fbar_i for odd i and f_{i+1} for even i.  For the regular flavor
    rho vanishes and there are no overlines.
    """
    if not cp.is_over and not sol.is_regular():
        raise DomainError("regular-flavor membership asked about an overpartition")
    k, a, d, s = cp.k, cp.a, cp.d, cp.s
    if sol.freq(1) >= a:
        return False
    rho = 0
    for i in range(1, sol.max_part + 1):
        rho += (-1 if i % 2 else 1) * sol.over_flag(i)
        window = sol.freq(i) + sol.over_flag(i) + sol.freq(i + 1)
        if window >= k:
            return False
        delta = k - window
        if 1 <= delta <= d - 1:
            f_odd = sol.freq(i) + sol.over_flag(i) if i % 2 else sol.freq(i + 1)
            if (a + s - 1 - f_odd - rho) % d > delta - 1:
                return False
    return True


# ---------------------------------------------------------------------------
# fast route: frequency-window DP with packed (parts, weight) tables
# ---------------------------------------------------------------------------

_mask_cache: dict[tuple[int, int], int] = {}
_table_cache: dict[tuple[int, int, int, int, str], tuple[int, list[list[int]]]] = {}


def _weight_mask(n_max: int, limit: int) -> int:
    """All-ones words on slots (m, n) with n <= limit, for an (n_max+1)^2 grid."""
    key = (n_max, limit)
    got = _mask_cache.get(key)
    if got is None:
        stride = n_max + 1
        row = 0
        for n in range(limit + 1):
            row |= _ONES << (_WORD * n)
        got = 0
        for m in range(stride):
            got |= row << (_WORD * stride * m)
        _mask_cache[key] = got
    return got


def _window_ok(k: int, d: int, a: int, s: int, prev: int, g: int, i: int, rho: int) -> bool:
    # window at value i is prev + g (prev = f_i + fbar_i, g = f_{i+1})
    window = prev + g
    if window >= k:
        return False
    delta = k - window
    if 1 <= delta <= d - 1:
        f_odd = prev if i % 2 else g
        if (a + s - 1 - f_odd - rho) % d > delta - 1:
            return False
    return True


def _compute_table(cp: CountParams, n_max: int) -> list[list[int]]:
    """Full table of counts by (number of parts, weight), both up to n_max."""
    k, a, d, s = cp.k, cp.a, cp.d, cp.s
    over = cp.is_over
    stride = n_max + 1
    if a <= 0:
        return [[0] * stride for _ in range(stride)]
    # states: (f_v + fbar_v, rho(v) mod d) -> packed (parts, weight) table
    states: dict[tuple[int, int], int] = {(0, 0): 1}
    gbar_choices = (0, 1) if over else (0,)
    for v in range(1, n_max + 1):
        new_states: dict[tuple[int, int], int] = {}
        sign = 1 if v % 2 == 0 else -1
        for (prev, rho), packed in states.items():
            for g in range(0, k - prev):
                if v == 1 and g >= a:
                    break
                if v > 1 and not _window_ok(k, d, a, s, prev, g, v - 1, rho):
                    continue
                for gbar in gbar_choices:
                    p = g + gbar
                    if p > k - 1:
                        continue
                    w = v * p
                    if w > n_max:
                        continue
                    moved = packed if w == 0 else (
                        (packed & _weight_mask(n_max, n_max - w))
                        << (_WORD * (p * stride + w))
                    )
                    if not moved:
                        continue
                    key = (p, (rho + sign * gbar) % d)
                    new_states[key] = new_states.get(key, 0) + moved
        states = new_states
    total = 0
    for (prev, rho), packed in states.items():
        if _window_ok(k, d, a, s, prev, 0, n_max, rho):
            total += packed
    raw = total.to_bytes(stride * stride * (_WORD // 8), "little")
    nb = _WORD // 8
    table = []
    for m in range(stride):
        base = m * stride * nb
        table.append(
            [
                int.from_bytes(raw[base + n * nb : base + (n + 1) * nb], "little")
                for n in range(stride)
            ]
        )
    return table


def count_table(cp: CountParams, n_max: int) -> list[list[int]]:
    """Cached (parts, weight) count table; entry [m][n] counts solutions."""
    if n_max > 300:
        raise DomainError("table bound too large for 64-bit packed counts")
    key = (cp.k, cp.a, cp.d, cp.s, cp.flavor)
    cached = _table_cache.get(key)
    if cached is None or cached[0] < n_max:
        table = _compute_table(cp, n_max)
        _table_cache[key] = (n_max, table)
        return table
    return cached[1]


def count_mult(cp: CountParams, m: int, n: int) -> int:
    """Number of admissible solutions of weight n with exactly m parts."""
    if m < 0 or n < 0 or m > n:
        return 0
    return count_table(cp, n)[m][n]


def count_mult_total(cp: CountParams, n: int) -> int:
    """Number of admissible solutions of weight n (any number of parts)."""
    if n < 0:
        return 0
    table = count_table(cp, n)
    return sum(table[m][n] for m in range(n + 1))


# ---------------------------------------------------------------------------
# slow route: brute-force enumeration against the predicate
# ---------------------------------------------------------------------------


def iter_freq_solutions(n: int, flavor: str = REGULAR) -> Iterator[FreqSolution]:
    """Every partition (or overpartition) of n, as frequency encodings."""
    over = flavor == OVER

    def rec(remaining: int, v: int, f: list[int], fbar: list[int]):
        if remaining == 0:
            top = max([i + 1 for i, x in enumerate(f) if x]
                      + [i + 1 for i, x in enumerate(fbar) if x] + [0])
            yield FreqSolution(tuple(f[:top]), tuple(fbar[:top]))
            return
        if v > remaining:
            return
        for fb in (0, 1) if over else (0,):
            start = remaining - fb * v
            if start < 0:
                continue
            for fv in range(start // v + 1):
                f[v - 1], fbar[v - 1] = fv, fb
                used = v * (fv + fb)
                yield from rec(remaining - used, v + 1, f, fbar)
                f[v - 1], fbar[v - 1] = 0, 0

    if n < 0:
        return
    if n == 0:
        yield FreqSolution((), ())
        return
    yield from rec(n, 1, [0] * n, [0] * n)


def count_mult_brute(cp: CountParams, m: Optional[int], n: int) -> int:
    """Brute-force oracle for count_mult / count_mult_total."""
    if n < 0:
        return 0
    return sum(
        1
        for sol in iter_freq_solutions(n, cp.flavor)
        if (m is None or sol.num_parts == m) and satisfies_mult_conditions(sol, cp)
    )


# ---------------------------------------------------------------------------
# congruence-side counters
# ---------------------------------------------------------------------------

_cong_cache: dict[tuple[int, int, int, str], tuple[int, PowerSeries, bool]] = {}


def _knapsack_counts(allowed: list[int], n_max: int) -> list[int]:
    c = [1] + [0] * n_max
    for v in allowed:
        for t in range(v, n_max + 1):
            c[t] += c[t - v]
    return c


def _distinct_counts(allowed: list[int], n_max: int) -> list[int]:
    c = [1] + [0] * n_max
    for v in allowed:
        for t in range(n_max, v - 1, -1):
            c[t] += c[t - v]
    return c


def congruence_series(
    k: int, d: int, c: int, flavor: str, trunc_order: int
) -> tuple[PowerSeries, bool]:
    """Generating function of the congruence-side counter with lower index c.

    Regular flavor, modulus M = 2k+2-d: partitions into parts not congruent
    to 0 or +-c mod M, counted by direct enumeration; if 2c = M the counter
    has no combinatorial description and is *defined* as the coefficient of
    the triple product (q^c, q^(M-c), q^M; q^M)_inf / (q; q)_inf.

    Over flavor, modulus 2k+1-d: non-overlined parts avoid 0, +-c mod the
    modulus and overlined parts are free; if 2c equals the modulus, all parts
    avoid multiples of k + (1-d)/2 instead (d must be odd there).

    Returns (series, product_defined).
    """
    n = trunc_order
    if flavor == REGULAR:
        modulus = 2 * k + 2 - d
        if 2 * c == modulus:
            ps = triple_product(c, modulus, n) * q_poch_inf(1, 1, 1, n).invert_unit()
            return ps, True
        r = c % modulus
        bad = {0, r, (modulus - r) % modulus}
        allowed = [v for v in range(1, n + 1) if v % modulus not in bad]
        return PowerSeries(_knapsack_counts(allowed, n), n), False
    modulus = 2 * k + 1 - d
    if 2 * c == modulus:
        if d % 2 == 0:
            raise DomainError(
                "exceptional over case needs k + (1-d)/2 integral, so d must be odd"
            )
        kappa = k + (1 - d) // 2
        allowed = [v for v in range(1, n + 1) if v % kappa != 0]
        plain = _knapsack_counts(allowed, n)
        lined = _distinct_counts(allowed, n)
    else:
        r = c % modulus
        bad = {0, r, (modulus - r) % modulus}
        allowed = [v for v in range(1, n + 1) if v % modulus not in bad]
        plain = _knapsack_counts(allowed, n)
        lined = _distinct_counts(list(range(1, n + 1)), n)
    return PowerSeries(plain, n) * PowerSeries(lined, n), False


def count_cong(cp: CountParams, n: int) -> int:
    """Congruence-side counter value at n (flavor-aware)."""
    if n < 0:
        return 0
    key = (cp.k, cp.d, cp.a, cp.flavor)
    cached = _cong_cache.get(key)
    if cached is None or cached[0] < n:
        series, special = congruence_series(cp.k, cp.d, cp.a, cp.flavor, max(n, 16))
        _cong_cache[key] = (series.trunc_order, series, special)
    else:
        series = cached[1]
    return series.coefficient(n)


# ---------------------------------------------------------------------------
# recurrence verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RecurrenceOutcome:
    """Result of sweeping the counter recurrence over a (parts, weight) box."""

    ok: bool
    first_mismatch: Optional[tuple[int, int, int, int]]  # (m, n, lhs, rhs)
    extension_used: bool  # some referenced lower index fell below 0


def _counter_extended(
    k: int, a: int, d: int, s: int, flavor: str, m: int, n: int, flags: dict
) -> int:
    """Counter value with the lower index extended by 0 below its range."""
    if m < 0 or n < 0:
        return 0
    if a < 0:
        flags["extension"] = True
        return 0
    if a == 0:
        return 0
    return count_mult(CountParams(k, a, d, s % d, flavor), m, n)


def verify_recurrence(cp: CountParams, m_max: int, n_max: int) -> RecurrenceOutcome:
    """Check the defining recurrence of the counters on a (parts, weight) box.

    The counter at (k, a, s) splits by the number of 1s: solutions with fewer
    than a-1 of them biject onto the (a-1, s+1) counter, and stripping a-1 1s
    and lowering every part by one sends the rest onto the lower-index
    counters at (m-a+1, n-m) (plus, for overpartitions, the overlined-1 class
    at (m-a, n-m)).  Superscripts are residues mod d; lower indices below 0
    contribute 0 and set the extension flag.
    """
    k, a, d, s, flavor = cp.k, cp.a, cp.d, cp.s, cp.flavor
    flags: dict = {}
    bound = max(m_max, n_max)
    count_table(cp, bound)  # warm the largest table once
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            lhs = _counter_extended(k, a, d, s, flavor, m, n, flags)
            rhs = _counter_extended(k, a - 1, d, s + 1, flavor, m, n, flags)
            rhs += _counter_extended(
                k, k - a + 1 - s, d, 0, flavor, m - a + 1, n - m, flags
            )
            if cp.is_over:
                rhs += _counter_extended(
                    k, k - a - s, d, 0, flavor, m - a, n - m, flags
                )
            if lhs != rhs:
                return RecurrenceOutcome(False, (m, n, lhs, rhs), "extension" in flags)
    return RecurrenceOutcome(True, None, "extension" in flags)


# ---------------------------------------------------------------------------
# admissible-weight lower bound (used to justify x = 1 comparison bounds)
# ---------------------------------------------------------------------------


def min_admissible_weight(k: int, a: int, flavor: str, parts: int) -> int:
    """Minimum weight of any solution with `parts` parts meeting the window
    and first-part bounds (mod-d conditions ignored, so this is a lower bound
    for every s, d).  Returns a large sentinel when no solution exists.
    """
    over = flavor == OVER
    sentinel = 10**9
    best = {(0, 0): 0}  # (prev, parts so far) -> min weight
    answer = 0 if parts == 0 else sentinel
    top = 2 * parts + 2
    for v in range(1, top + 1):
        nxt: dict[tuple[int, int], int] = {}
        for (prev, p), w in best.items():
            for g in range(0, k - prev):
                if v == 1 and g >= a:
                    break
                for gbar in (0, 1) if over else (0,):
                    add = g + gbar
                    if add > k - 1 or p + add > parts:
                        continue
                    key = (add, p + add)
                    val = w + v * add
                    if val < nxt.get(key, sentinel):
                        nxt[key] = val
        best = nxt
        for (prev, p), w in best.items():
            if p == parts and w < answer:
                answer = w
        if not best:
            break
    return answer


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------


def write_count_table_csv(fileobj, cp: CountParams, m_max: int, n_max: int) -> int:
    """Write nonzero counter values as (k, a, d, s, flavor, m, n, count) rows."""
    writer = csv.writer(fileobj)
    writer.writerow(["k", "a", "d", "s", "flavor", "m", "n", "count"])
    table = count_table(cp, max(m_max, n_max))
    written = 0
    for m in range(m_max + 1):
        for n in range(n_max + 1):
            c = table[m][n] if m <= n else 0
            if c:
                writer.writerow([cp.k, cp.a, cp.d, cp.s, cp.flavor, m, n, str(c)])
                written += 1
    return written
