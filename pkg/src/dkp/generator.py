"""Instance families and the plain-text instance format.

Random draws come from NumPy's ``PCG64`` bit generator (O'Neill's permuted
congruential generator, 128-bit state, 64-bit output) seeded with the 64-bit
``GenSpec.seed``; bounded integers use ``Generator.integers``. The sequence of
draws per group is fixed below, so an instance is a pure function of its spec.

File format (UTF-8, ``#`` lines are comments)::

    n b
    c_0 a_0
    ...
    c_{n-1} a_{n-1}

with ``n = 3*m``. An optional ``<name>.opt`` sidecar holds a known optimum.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .model import DkpInstance, validate

FAMILIES = ("uncorrelated", "weakly", "strongly", "inverse-strongly")
FAMILY_ALIASES = {
    "unc": "uncorrelated", "uncorrelated": "uncorrelated",
    "weak": "weakly", "weakly": "weakly",
    "strong": "strongly", "strongly": "strongly",
    "inv": "inverse-strongly", "inverse-strongly": "inverse-strongly",
}
SHORT_NAMES = {"uncorrelated": "unc", "weakly": "weak",
               "strongly": "strong", "inverse-strongly": "inv"}

# profit/weight offset of the correlated families and the noise half-width
# of the weakly correlated one (standard KP recipes, not taken from the
# literature generators whose parameters are unpublished)
CORRELATION_SHIFT = 100
WEAK_NOISE = 100


class InstanceWarning(UserWarning):
    """A loaded instance breaks one of the structural assumptions."""


class DkpParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


@dataclass(frozen=True)
class GenSpec:
    family: str
    m: int
    seed: int
    weight_range: tuple[int, int] = (1, 1000)
    capacity_ratio: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        try:
            family = FAMILY_ALIASES[self.family]
        except KeyError:
            raise ValueError(f"unknown family {self.family!r}; "
                             f"choose from {sorted(FAMILY_ALIASES)}") from None
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "capacity_ratio", Fraction(self.capacity_ratio))
        lo, hi = (int(v) for v in self.weight_range)
        object.__setattr__(self, "weight_range", (lo, hi))
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if lo < 1 or lo >= hi:
            raise ValueError(f"weight_range must satisfy 1 <= lo < hi, got {(lo, hi)}")
        if max(lo, 2) >= hi:
            # the discounted weight needs a0 >= 2 and a0 < a1
            raise ValueError(f"weight_range {(lo, hi)} admits no valid group")
        if hi > 2**30:
            raise ValueError("weight_range upper bound too large for 32-bit storage")
        if not 0 < self.capacity_ratio <= 1:
            raise ValueError("capacity_ratio must lie in (0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _distinct_pair(rng: np.random.Generator, lo: int, hi: int) -> tuple[int, int]:
    while True:
        u, v = (int(x) for x in rng.integers(lo, hi, size=2, endpoint=True))
        if u != v:
            return min(u, v), max(u, v)


def _discounted_weight(rng: np.random.Generator, a0: int, a1: int) -> int:
    # uniform on the open interval (a1, a0 + a1)
    return int(rng.integers(a1 + 1, a0 + a1, endpoint=False))


def _weights(rng: np.random.Generator, lo: int, hi: int) -> tuple[int, int, int]:
    while True:
        a0, a1 = _distinct_pair(rng, lo, hi)
        if a0 >= 2:
            return a0, a1, _discounted_weight(rng, a0, a1)


def _group(spec: GenSpec, rng: np.random.Generator) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    lo, hi = spec.weight_range
    family = spec.family
    if family == "inverse-strongly":
        c0, c1 = _distinct_pair(rng, lo, hi)
        a0, a1 = c0 + CORRELATION_SHIFT, c1 + CORRELATION_SHIFT
        a2 = _discounted_weight(rng, a0, a1)
        return (c0, c1, c0 + c1), (a0, a1, a2)

    a0, a1, a2 = _weights(rng, lo, hi)
    if family == "uncorrelated":
        c0, c1 = _distinct_pair(rng, lo, hi)
    elif family == "weakly":
        while True:
            noise = rng.integers(-WEAK_NOISE, WEAK_NOISE, size=2, endpoint=True)
            c0 = max(1, a0 + int(noise[0]))
            c1 = max(1, a1 + int(noise[1]))
            if c0 < c1:
                break
    else:
        c0, c1 = a0 + CORRELATION_SHIFT, a1 + CORRELATION_SHIFT
    return (c0, c1, c0 + c1), (a0, a1, a2)


def generate(spec: GenSpec) -> DkpInstance:
    """Draw one instance of ``spec.family``.

    Groups are drawn in index order. The capacity is
    ``max(max_i a_{3i+2}, floor(ratio * sum_i a_{3i+2}))``, lowered to
    ``sum - 1`` when that would make every third item fit at once.
    """
    rng = make_rng(spec.seed)
    groups = [_group(spec, rng) for _ in range(spec.m)]
    thirds = [a[2] for _, a in groups]
    total = sum(thirds)
    b = max(max(thirds), int(spec.capacity_ratio * total))
    if spec.m >= 2 and b >= total:
        b = total - 1
    return DkpInstance.from_groups(groups, b)


def instance_seed(seed: int, index: int) -> int:
    """64-bit seed of the ``index``-th instance in a batch seeded with ``seed``."""
    state = np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def format_instance(instance: DkpInstance, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in comments or []]
    lines.append(f"{instance.n} {instance.capacity}")
    lines.extend(f"{int(c)} {int(a)}" for c, a in zip(instance.profits, instance.weights))
    return "\n".join(lines) + "\n"


def save(instance: DkpInstance, path: str | Path, comments: list[str] | None = None) -> None:
    Path(path).write_text(format_instance(instance, comments), encoding="utf-8")


def _int_pair(tokens: list[str], lineno: int, path: str | None) -> tuple[int, int]:
    if len(tokens) != 2:
        raise DkpParseError(f"expected 2 integers, found {len(tokens)} tokens", lineno, path)
    try:
        u, v = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise DkpParseError(f"non-integer token in {' '.join(tokens)!r}", lineno, path) from None
    if u < 0 or v < 0:
        raise DkpParseError("negative values are not allowed", lineno, path)
    return u, v


def parse_instance(text: str, path: str | None = None) -> DkpInstance:
    """Parse the text format; structural problems raise :class:`DkpParseError`."""
    rows = [(no, line.split()) for no, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise DkpParseError("empty file: missing 'n b' header", 1, path)
    head_no, head = rows[0]
    n, b = _int_pair(head, head_no, path)
    if n % 3:
        raise DkpParseError("n must be a multiple of 3", head_no, path)
    body = rows[1:]
    if len(body) < n:
        last = body[-1][0] if body else head_no
        raise DkpParseError(f"truncated file: expected {n} item lines, found {len(body)}",
                            last + 1, path)
    if len(body) > n:
        raise DkpParseError("unexpected data after the last item line", body[n][0], path)
    profits, weights = [], []
    for no, tokens in body:
        c, a = _int_pair(tokens, no, path)
        profits.append(c)
        weights.append(a)
    try:
        return DkpInstance(profits, weights, b)
    except ValueError as exc:
        raise DkpParseError(str(exc), None, path) from None


def load(path: str | Path) -> DkpInstance:
    """Read an instance file.

    Broken assumptions do not stop loading: lenient violations and strict-mode
    violations are both reported through :class:`InstanceWarning`.
    """
    path = Path(path)
    instance = parse_instance(path.read_text(encoding="utf-8"), str(path))
    lenient = validate(instance)
    if not lenient.ok:
        warnings.warn(f"{path}: instance is not lenient-valid: "
                      + "; ".join(map(str, lenient.violations[:5])), InstanceWarning, stacklevel=2)
    else:
        strict = validate(instance, strict=True)
        if not strict.ok:
            warnings.warn(f"{path}: strict-mode assumptions fail: "
                          + "; ".join(map(str, strict.violations[:5])), InstanceWarning, stacklevel=2)
    return instance


def optimum_path(path: str | Path) -> Path:
    return Path(path).with_suffix(".opt")


def read_optimum(path: str | Path) -> int | None:
    """Optimum from the ``.opt`` sidecar of instance ``path``, if present."""
    side = optimum_path(path)
    if not side.exists():
        return None
    text = side.read_text(encoding="utf-8").split()
    if len(text) != 1:
        raise DkpParseError("sidecar must contain exactly one integer", 1, str(side))
    try:
        return int(text[0])
    except ValueError:
        raise DkpParseError(f"non-integer optimum {text[0]!r}", 1, str(side)) from None


def write_optimum(path: str | Path, value: int) -> Path:
    side = optimum_path(path)
    side.write_text(f"{int(value)}\n", encoding="utf-8")
    return side
