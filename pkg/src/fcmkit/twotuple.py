"""Fuzzy 2-tuple representation of imprecise weights.

All stakeholder inputs (numeric on [-1, 1] or [-10, 10], or linguistic terms
from a 13- or 11-label vocabulary) are unified into a single numeric scale:
the beta value of the 13-term base set (BLTS), a real in [-6, 6]. A beta
value converts losslessly to and from a 2-tuple (term, symbolic translation)
and defuzzifies to a crisp value in [0, 1].

Beta values are plain floats throughout; term sets carry the granularity
needed to validate them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigurationError, DegenerateInputError, InputRangeError

Triangle = tuple[float, float, float]


@dataclass(frozen=True)
class LinguisticTermSet:
    """An odd set of triangular linguistic terms over a closed interval.

    Term indices run -g..+g (2g+1 terms). Unless explicit triangles are
    given, terms form the uniform Ruspini partition of the domain: centers
    evenly spaced, each triangle's feet on its neighbours' centers, so
    memberships sum to 1 at every point of the domain.
    """

    g: int
    labels: tuple[str, ...]
    domain: tuple[float, float] = (-1.0, 1.0)
    triangles: tuple[Triangle, ...] = field(default=())

    def __post_init__(self):
        if self.g < 1:
            raise ConfigurationError(f"granularity half-width must be >= 1, got {self.g}")
        labels = tuple(self.labels)
        if len(labels) != 2 * self.g + 1:
            raise ConfigurationError(
                f"expected {2 * self.g + 1} labels for g={self.g}, got {len(labels)}"
            )
        if len(set(labels)) != len(labels):
            raise ConfigurationError("term labels must be unique")
        lo, hi = self.domain
        if not lo < hi:
            raise ConfigurationError(f"invalid domain [{lo}, {hi}]")
        tris = tuple(tuple(map(float, t)) for t in self.triangles)
        if not tris:
            tris = self._uniform_triangles()
        if len(tris) != len(labels):
            raise ConfigurationError("one (a, b, c) triple required per term")
        for a, b, c in tris:
            if not a <= b <= c:
                raise ConfigurationError(f"triangle parameters must satisfy a <= b <= c, got {(a, b, c)}")
        centers = [t[1] for t in tris]
        if any(x >= y for x, y in zip(centers, centers[1:])):
            raise ConfigurationError("triangle centers must be strictly increasing")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "domain", (float(lo), float(hi)))
        object.__setattr__(self, "triangles", tris)

    def _uniform_triangles(self) -> tuple[Triangle, ...]:
        lo, hi = self.domain
        m = 2 * self.g
        # convex combination keeps the endpoints exact and e.g. center(5) == 5/6
        centers = [(lo * (m - k) + hi * k) / m for k in range(m + 1)]
        tris = []
        for k, b in enumerate(centers):
            a = centers[k - 1] if k > 0 else lo
            c = centers[k + 1] if k < 2 * self.g else hi
            tris.append((a, b, c))
        return tuple(tris)

    @property
    def size(self) -> int:
        return 2 * self.g + 1

    def indices(self) -> range:
        return range(-self.g, self.g + 1)

    def check_index(self, i: int) -> int:
        if not -self.g <= i <= self.g:
            raise InputRangeError(f"term index {i} outside [-{self.g}, {self.g}]")
        return int(i)

    def check_value(self, x: float) -> float:
        lo, hi = self.domain
        if not lo <= x <= hi:
            raise InputRangeError(f"value {x} outside domain [{lo}, {hi}]")
        return float(x)

    def check_beta(self, beta: float) -> float:
        if not -self.g <= beta <= self.g:
            raise InputRangeError(f"beta {beta} outside [-{self.g}, {self.g}]")
        return float(beta)

    def triangle(self, i: int) -> Triangle:
        return self.triangles[self.check_index(i) + self.g]

    def center(self, i: int) -> float:
        return self.triangle(i)[1]

    def label(self, i: int) -> str:
        return self.labels[self.check_index(i) + self.g]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label) - self.g
        except ValueError:
            raise ConfigurationError(f"unknown term label {label!r}") from None

    @classmethod
    def from_dict(cls, spec: dict) -> "LinguisticTermSet":
        """Build a term set from a JSON-style document {g, labels, domain, triangles?}."""
        try:
            g = int(spec["g"])
            labels = tuple(spec["labels"])
        except KeyError as exc:
            raise ConfigurationError(f"term-set document missing field {exc}") from None
        domain = tuple(spec.get("domain", (-1.0, 1.0)))
        triangles = tuple(tuple(t) for t in spec.get("triangles", ()))
        return cls(g=g, labels=labels, domain=domain, triangles=triangles)

    @classmethod
    def from_json(cls, path: str | Path) -> "LinguisticTermSet":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _round_half_away(x: float) -> int:
    # ties go away from zero so the conversion stays odd-symmetric
    return int(math.floor(x + 0.5)) if x >= 0 else int(math.ceil(x - 0.5))


@dataclass(frozen=True)
class Fuzzy2Tuple:
    """A linguistic term index plus a symbolic translation in [-0.5, 0.5]."""

    term_index: int
    alpha: float

    def __post_init__(self):
        if not -0.5 <= self.alpha <= 0.5:
            raise InputRangeError(f"alpha {self.alpha} outside [-0.5, 0.5]")
        if _round_half_away(self.term_index + self.alpha) != self.term_index:
            raise InputRangeError(
                f"({self.term_index}, {self.alpha}) is not in canonical form"
            )

    @property
    def beta(self) -> float:
        return self.term_index + self.alpha


# The 13-term base linguistic term set every input format is normalized into,
# and the 11-term vocabulary offered to participants who preferred it.
BLTS_13 = LinguisticTermSet(
    g=6,
    labels=("-VVH", "-VH", "-H", "-M", "-L", "-VL", "Null", "VL", "L", "M", "H", "VH", "VVH"),
)
TERMS_11 = LinguisticTermSet(
    g=5,
    labels=("-VH", "-H", "-M", "-L", "-VL", "Null", "VL", "L", "M", "H", "VH"),
)


def membership(term_set: LinguisticTermSet, term_index: int, x: float) -> float:
    """Triangular membership of x in the given term; 0 outside [a, c], 1 at b."""
    a, b, c = term_set.triangle(term_index)
    x = term_set.check_value(x)
    if x < a or x > c:
        return 0.0
    if x == b:
        return 1.0
    if x < b:
        return (x - a) / (b - a)
    return (c - x) / (c - b)


def beta_from_numeric(x: float, term_set: LinguisticTermSet = BLTS_13) -> float:
    """Symbolic aggregation of term memberships at x: sum(i * mu_i) / sum(mu_i)."""
    x = term_set.check_value(x)
    num = 0.0
    den = 0.0
    for i in term_set.indices():
        mu = membership(term_set, i, x)
        num += i * mu
        den += mu
    if den <= 0.0:
        # cannot happen on a partition of unity; guards custom term sets
        raise DegenerateInputError(f"no term has membership at x={x}")
    return num / den


def tuple_from_beta(beta: float, term_set: LinguisticTermSet = BLTS_13) -> Fuzzy2Tuple:
    """Nearest term plus the leftover symbolic translation; ties round away from zero."""
    beta = term_set.check_beta(beta)
    i = _round_half_away(beta)
    return Fuzzy2Tuple(term_index=i, alpha=beta - i)


def beta_from_tuple(t: Fuzzy2Tuple, term_set: LinguisticTermSet = BLTS_13) -> float:
    """Exact inverse of tuple_from_beta: beta = i + alpha."""
    term_set.check_index(t.term_index)
    return t.term_index + t.alpha


def tuple_from_term(term_index: int, term_set: LinguisticTermSet = BLTS_13) -> Fuzzy2Tuple:
    """The 2-tuple for a bare term: zero symbolic translation."""
    return Fuzzy2Tuple(term_index=term_set.check_index(term_index), alpha=0.0)


def _rescale(x: float, src: tuple[float, float], dst: tuple[float, float]) -> float:
    if src == dst:
        return x
    return dst[0] + (x - src[0]) * (dst[1] - dst[0]) / (src[1] - src[0])


def normalize_to_blts(
    value: "Fuzzy2Tuple | int | float",
    source_set: LinguisticTermSet,
    blts: LinguisticTermSet = BLTS_13,
) -> float:
    """Express a value from a source vocabulary as a beta of the base term set.

    Tuples (and bare term indices) are projected through the apex of their
    source triangle onto the shared domain and re-read under the base set;
    this is exact at the endpoints and the center, odd, and order-preserving.
    Numerics are interpreted on the source set's domain, linearly rescaled to
    the base domain, and converted with beta_from_numeric. Inputs already in
    the base set pass through unchanged.
    """
    if source_set is None:
        raise ConfigurationError("a source term set is required")
    if isinstance(value, Fuzzy2Tuple) or isinstance(value, int) and not isinstance(value, bool):
        if isinstance(value, int):
            value = tuple_from_term(value, source_set)
        src_beta = beta_from_tuple(value, source_set)
        if source_set == blts:
            return src_beta
        # apex position: interpolate between adjacent triangle centers
        h = min(int(math.floor(src_beta)), source_set.g - 1)
        gamma = src_beta - h
        x = source_set.center(h) + gamma * (source_set.center(h + 1) - source_set.center(h))
        x = _rescale(x, source_set.domain, blts.domain)
        return beta_from_numeric(x, blts)
    if isinstance(value, float):
        x = _rescale(source_set.check_value(value), source_set.domain, blts.domain)
        return beta_from_numeric(x, blts)
    raise ConfigurationError(f"cannot normalize value of type {type(value).__name__}")


def defuzzify(beta: float, term_set: LinguisticTermSet = BLTS_13) -> float:
    """Crisp value in [0, 1] for a beta value.

    beta is split over the two adjacent terms s_h, s_{h+1} with h = floor(beta)
    (floor, so the leftover gamma is always in [0, 1)), then the terms' linear
    characteristic values CV(s_i) = (i + g) / 2g are interpolated. Strictly
    increasing; maps -g to 0, 0 to 0.5, and g to 1.
    """
    g = term_set.g
    beta = term_set.check_beta(beta)
    h = int(math.floor(beta))
    if h == g:  # beta == g exactly
        return 1.0
    gamma = beta - h
    cv_h = (h + g) / (2 * g)
    cv_h1 = (h + 1 + g) / (2 * g)
    return cv_h * (1.0 - gamma) + cv_h1 * gamma
