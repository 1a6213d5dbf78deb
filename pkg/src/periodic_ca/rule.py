"""Two-neighbor rules over Z_n: representation, text codes, sampling, evolution.

A rule ``f`` maps the pair ``(left, self)`` to the next state of a site:
``xi_{t+1}(x) = f(xi_t(x - 1), xi_t(x))``.  Tables are stored flat with
``f(a, b)`` at index ``a * n + b``.

Text codes list the values from ``(n-1, n-1)`` down to ``(0, 0)``, so the
last character of a code is ``f(0, 0)``.  For ``n <= 10`` the code is a digit
string; larger ``n`` use a comma-separated list of decimal integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "Rule",
    "RuleClass",
    "UNIFORM",
    "LEFT_PERMUTATIVE",
    "parse_rule",
    "format_rule",
    "apply",
    "additive_rule",
    "sample_rule",
    "evolve",
    "is_left_permutative",
]


class Rule:
    """An immutable n-state two-neighbor rule table."""

    __slots__ = ("n", "table")

    def __init__(self, n: int, table: Sequence[int]):
        n = int(n)
        if n < 1:
            raise ValueError(f"state count must be >= 1, got {n}")
        arr = np.array(table, dtype=np.int64).reshape(-1)
        if arr.size != n * n:
            raise ValueError(f"table must have {n * n} entries, got {arr.size}")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError(f"table entries must lie in [0, {n - 1}]")
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "table", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Rule is immutable")

    def __call__(self, a: int, b: int) -> int:
        return int(self.table[a * self.n + b])

    def __eq__(self, other):
        if not isinstance(other, Rule):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        return f"Rule(n={self.n}, code={format_rule(self)!r})"

    def as_matrix(self) -> np.ndarray:
        """Return the table as an ``(n, n)`` array with ``[a, b] = f(a, b)``."""
        return self.table.reshape(self.n, self.n)


@dataclass(frozen=True)
class RuleClass:
    """Which family a random rule is drawn from.

    ``tag`` is one of ``"uniform"``, ``"left_permutative"`` or ``"additive"``.
    For the additive class, ``alpha``/``beta`` pin the coefficients; when left
    as ``None`` they are drawn uniformly from Z_n.
    """

    tag: str = "uniform"
    alpha: Optional[int] = None
    beta: Optional[int] = None

    def __post_init__(self):
        if self.tag not in ("uniform", "left_permutative", "additive"):
            raise ValueError(f"unknown rule class {self.tag!r}")
        if self.tag != "additive" and (self.alpha is not None or self.beta is not None):
            raise ValueError("alpha/beta only apply to the additive class")


UNIFORM = RuleClass("uniform")
LEFT_PERMUTATIVE = RuleClass("left_permutative")


def _listing_to_table(values: Sequence[int], n: int) -> np.ndarray:
    # listing position k holds f(a, b) with k = (n-1-a)*n + (n-1-b), i.e. reversed
    return np.asarray(values, dtype=np.int64)[::-1].copy()


def parse_rule(text: str, n: int) -> Rule:
    """Parse a rule code (see module docstring) for ``n`` states.

    >>> r = parse_rule("021102022", 3)
    >>> r(1, 2), r(0, 0)
    (1, 2)
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"state count must be >= 1, got {n}")
    text = text.strip()
    if n <= 10:
        if len(text) != n * n:
            raise ValueError(f"rule code for n={n} needs {n * n} digits, got {len(text)}")
        if not text.isdigit():
            raise ValueError(f"rule code {text!r} contains non-digit characters")
        values = [int(c) for c in text]
    else:
        parts = text.split(",")
        try:
            values = [int(p.strip()) for p in parts]
        except ValueError:
            raise ValueError(f"malformed comma-separated rule code {text!r}") from None
        if len(values) != n * n:
            raise ValueError(f"rule code for n={n} needs {n * n} values, got {len(values)}")
    bad = [v for v in values if not 0 <= v < n]
    if bad:
        raise ValueError(f"rule value {bad[0]} out of range for n={n}")
    return Rule(n, _listing_to_table(values, n))


def format_rule(rule: Rule) -> str:
    """Inverse of :func:`parse_rule`."""
    listing = rule.table[::-1]
    if rule.n <= 10:
        return "".join(str(int(v)) for v in listing)
    return ",".join(str(int(v)) for v in listing)


def apply(rule: Rule, a: int, b: int) -> int:
    if not (0 <= a < rule.n and 0 <= b < rule.n):
        raise ValueError(f"states ({a}, {b}) out of range for n={rule.n}")
    return int(rule.table[a * rule.n + b])


def additive_rule(n: int, alpha: int, beta: int) -> Rule:
    """The rule ``f(a, b) = (alpha * a + beta * b) mod n``."""
    a = np.arange(n, dtype=np.int64)
    table = (alpha * a[:, None] + beta * a[None, :]) % n
    return Rule(n, table.reshape(-1))


def is_left_permutative(rule: Rule) -> bool:
    """True iff ``a -> f(a, b)`` is a bijection for every ``b``."""
    m = rule.as_matrix()
    target = np.arange(rule.n)
    return all(np.array_equal(np.sort(m[:, b]), target) for b in range(rule.n))


def sample_rule(n: int, rule_class: RuleClass, rng: np.random.Generator) -> Rule:
    """Draw a rule from ``rule_class`` using the generator ``rng``."""
    if n < 1:
        raise ValueError(f"state count must be >= 1, got {n}")
    if rule_class.tag == "uniform":
        return Rule(n, rng.integers(0, n, size=n * n))
    if rule_class.tag == "left_permutative":
        # column b is the permutation a -> f(a, b)
        cols = np.stack([rng.permutation(n) for _ in range(n)], axis=1)
        return Rule(n, cols.reshape(-1))
    alpha = rule_class.alpha if rule_class.alpha is not None else int(rng.integers(0, n))
    beta = rule_class.beta if rule_class.beta is not None else int(rng.integers(0, n))
    return additive_rule(n, alpha % n, beta % n)


def evolve(rule: Rule, initial: Sequence[int], steps: int) -> list[tuple[int, ...]]:
    """Run the rule on a circle of ``len(initial)`` sites.

    Returns ``[xi_0, ..., xi_steps]`` as tuples.
    """
    word = tuple(int(v) for v in initial)
    if not word:
        raise ValueError("initial configuration must be nonempty")
    if any(not 0 <= v < rule.n for v in word):
        raise ValueError(f"initial configuration has states outside [0, {rule.n - 1}]")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    n, table = rule.n, rule.table
    sigma = len(word)
    out = [word]
    for _ in range(steps):
        word = tuple(int(table[word[j - 1] * n + word[j]]) for j in range(sigma))
        out.append(word)
    return out
