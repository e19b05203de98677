"""Expert-survey scoring of candidate causal edges and structure merging.

Each expert rates the influence of one factor on another as Strong,
Moderate, Weak, None, or NotSure. Ratings map to weights (1.0, 0.8, 0.2,
0, 0 by default) and are averaged per edge; edges scoring at or above the
retention threshold (0.70 by default, inclusive) survive into the refined
structure.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .core import CycleError, Dag, SurveyBnError, find_cycle


class ElicitationError(SurveyBnError):
    pass


class Rating(str, Enum):
    STRONG = "Strong"
    MODERATE = "Moderate"
    WEAK = "Weak"
    NONE = "None"
    NOT_SURE = "NotSure"


_RATING_ALIASES = {
    "Not sure": Rating.NOT_SURE,
    "Not sure/No opinion": Rating.NOT_SURE,
    "No opinion": Rating.NOT_SURE,
}

DEFAULT_WEIGHTS: dict[Rating, float] = {
    Rating.STRONG: 1.0,
    Rating.MODERATE: 0.8,
    Rating.WEAK: 0.2,
    Rating.NONE: 0.0,
    Rating.NOT_SURE: 0.0,
}


@dataclass(frozen=True)
class ElicitationResponse:
    """One expert's influence rating for one candidate edge (cause, effect)."""

    edge: tuple[str, str]
    rating: Rating


@dataclass(frozen=True)
class ElicitationConfig:
    """Rating weights, retention threshold, and denominator policy.

    ``exclude_not_sure`` drops NotSure responses from the denominator
    instead of counting them as zero-weight votes; the default (off)
    averages across all responses.
    """

    weights: Mapping[Rating, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    threshold: float = 0.70
    exclude_not_sure: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", dict(self.weights))
        for rating, w in self.weights.items():
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"weight for {rating} must be in [0, 1], got {w}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")


def score_relationship(responses: Sequence[ElicitationResponse], cfg: ElicitationConfig | None = None) -> float:
    """Weighted mean rating for a single candidate edge."""
    cfg = cfg or ElicitationConfig()
    if not responses:
        raise ElicitationError("no responses to score")
    edges = {r.edge for r in responses}
    if len(edges) != 1:
        raise ElicitationError(f"responses mix edges: {sorted(edges)}")
    counted = [r for r in responses if not (cfg.exclude_not_sure and r.rating is Rating.NOT_SURE)]
    if not counted:
        return 0.0
    return sum(cfg.weights[r.rating] for r in counted) / len(counted)


def score_all(responses: Iterable[ElicitationResponse], cfg: ElicitationConfig | None = None) -> dict[tuple[str, str], float]:
    """Group responses by edge and score each edge."""
    cfg = cfg or ElicitationConfig()
    grouped: dict[tuple[str, str], list[ElicitationResponse]] = {}
    for r in responses:
        grouped.setdefault(r.edge, []).append(r)
    return {edge: score_relationship(rs, cfg) for edge, rs in sorted(grouped.items())}


@dataclass(frozen=True)
class ThresholdResult:
    retained: frozenset[tuple[str, str]]
    removed: frozenset[tuple[str, str]]


def apply_threshold(scores: Mapping[tuple[str, str], float], cfg: ElicitationConfig | None = None) -> ThresholdResult:
    """Partition scored edges; the threshold comparison is inclusive (>=)."""
    cfg = cfg or ElicitationConfig()
    retained = frozenset(e for e, s in scores.items() if s >= cfg.threshold)
    removed = frozenset(scores) - retained
    return ThresholdResult(retained=retained, removed=removed)


def merge_structures(
    base: Dag,
    retained: Iterable[tuple[str, str]] = (),
    removed: Iterable[tuple[str, str]] = (),
    expert_additions: Iterable[tuple[str, str]] = (),
) -> Dag:
    """Refined DAG: base minus removed, plus retained and expert additions.

    Expert additions are tagged ``expert-added``. Raises on a
    retained/removed conflict, on edges naming undeclared nodes, and on any
    cycle the merge would introduce.
    """
    retained = {(str(a), str(b)) for a, b in retained}
    removed = {(str(a), str(b)) for a, b in removed}
    additions = {(str(a), str(b)) for a, b in expert_additions}
    conflict = retained & removed
    if conflict:
        raise ElicitationError(f"edges both retained and removed: {sorted(conflict)}")

    declared = set(base.nodes)
    for a, b in retained | additions:
        for end in (a, b):
            if end not in declared:
                raise ElicitationError(f"edge ({a!r}, {b!r}) endpoint {end!r} is not a declared node")

    edges = [e for e in base.edges if e not in removed]
    for e in sorted((retained | additions) - set(edges)):
        edges.append(e)

    tags = {e: t for e, t in base.edge_tags.items() if e in set(edges)}
    for e in additions:
        tags[e] = "expert-added"

    merged = Dag(nodes=base.nodes, edges=tuple(edges), edge_tags=tags)
    cycle = find_cycle(merged)
    if cycle is not None:
        raise CycleError(cycle)
    return merged


# ---------------------------------------------------------------------------
# responses CSV: one `cause,effect,rating` row per (expert, edge) response
# ---------------------------------------------------------------------------

def parse_elicitation_csv(text: str | Iterable[str]) -> list[ElicitationResponse]:
    if isinstance(text, str):
        text = io.StringIO(text)
    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise ElicitationError("empty input: header row is mandatory") from None
    if [h.strip() for h in header] != ["cause", "effect", "rating"]:
        raise ElicitationError(f"header must be cause,effect,rating; got {header}")

    out: list[ElicitationResponse] = []
    for row_no, cells in enumerate(reader, start=1):
        if len(cells) != 3:
            raise ElicitationError(f"row {row_no}: expected 3 cells, got {len(cells)}")
        cause, effect, raw = (c.strip() for c in cells)
        try:
            rating = Rating(raw) if raw not in _RATING_ALIASES else _RATING_ALIASES[raw]
        except ValueError:
            raise ElicitationError(f"row {row_no}: unknown rating {raw!r}") from None
        out.append(ElicitationResponse(edge=(cause, effect), rating=rating))
    return out


def serialize_elicitation_csv(responses: Sequence[ElicitationResponse]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["cause", "effect", "rating"])
    for r in responses:
        writer.writerow([r.edge[0], r.edge[1], r.rating.value])
    return out.getvalue()
