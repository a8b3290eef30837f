"""Maximum-likelihood score fitting from comparison data.

Pairwise win counts are fitted under the logistic pairwise model, ranking
samples under the K-tuple model; both use the same deterministic
full-batch gradient ascent with a backtracking line search. The first
option's score is pinned to 0 for identifiability.

Dominant (one-sided) pairs push the unconstrained MLE to infinity. Scores
are capped at |s| <= 30 and a DivergenceWarning is emitted instead of
hiding the regime: a cap of 30 corresponds to a fitted pair probability
within 1e-13 of certainty.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DisconnectedDataError,
    DomainError,
    ValidationError,
)
from .models import KTuplePreference, bt_prob
from .synth import PreferenceSample, _first_label

__all__ = [
    "SCORE_CAP",
    "GRADIENT_TOL",
    "MAX_ITERATIONS",
    "DivergenceWarning",
    "PairwiseCounts",
    "FitResult",
    "fit_bt",
    "fit_pl",
    "predict",
    "counts_from_samples",
    "parse_counts_text",
    "load_counts",
]

SCORE_CAP = 30.0
GRADIENT_TOL = 1e-8
MAX_ITERATIONS = 10_000


class DivergenceWarning(RuntimeWarning):
    """The MLE is at infinity for some score; results are capped."""


@dataclass(frozen=True)
class PairwiseCounts:
    """wins[i, j] = number of times option i was chosen over option j."""

    wins: np.ndarray

    def __init__(self, wins):
        w = np.asarray(wins, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 2:
            raise ValidationError(f"wins must be a square matrix with N >= 2, got {w.shape}")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValidationError("win counts must be finite and nonnegative")
        if np.any(np.diag(w) != 0):
            raise ValidationError("diagonal of the win matrix must be zero")
        object.__setattr__(self, "wins", w)

    @property
    def n(self) -> int:
        return self.wins.shape[0]


@dataclass(frozen=True)
class FitResult:
    """Fitted scores (scores[0] = 0), final log-likelihood, and status."""

    scores: tuple[float, ...]
    log_likelihood: float
    iterations: int
    converged: bool


def _components(n: int, edges: set[tuple[int, int]]) -> list[list[int]]:
    adjacency: dict[int, set[int]] = {i: set() for i in range(n)}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen: set[int] = set()
    comps = []
    for root in range(n):
        if root in seen:
            continue
        stack, comp = [root], []
        seen.add(root)
        while stack:
            node = stack.pop()
            comp.append(node)
            for nb in adjacency[node]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        comps.append(sorted(comp))
    return comps


def _require_connected(n: int, edges: set[tuple[int, int]], what: str) -> None:
    comps = _components(n, edges)
    if len(comps) > 1:
        raise DisconnectedDataError(
            f"{what} does not connect all options; components: {comps}",
            components=comps,
        )


def _ascend(
    value_and_grad: Callable[[np.ndarray], tuple[float, np.ndarray]],
    n: int,
) -> FitResult:
    """Gradient ascent with backtracking; coordinate 0 stays anchored at 0.

    The sufficient-increase constant is 1/2, which on a quadratic rejects
    any step beyond the inverse curvature and keeps the contraction rate
    geometric; looser constants accept steps near twice that and crawl.

    Near the optimum the true improvement falls below float64 resolution
    of the likelihood, so the test carries a small absolute slack; an
    acceptance that needs the slack must also not increase the gradient
    norm (the likelihood is too flat there to veto an unstable step, the
    gradient is not), and it never grows the next trial step.
    """
    s = np.zeros(n)
    ll, grad = value_and_grad(s)
    step = 1.0
    iterations = 0
    converged = False
    for iterations in range(1, MAX_ITERATIONS + 1):
        g = grad.copy()
        g[0] = 0.0
        if np.max(np.abs(g)) <= GRADIENT_TOL:
            converged = True
            iterations -= 1
            break
        trial = step
        slack = 1e-10 * (1.0 + abs(ll))
        gsq = float(np.dot(g, g))
        gnorm = math.sqrt(gsq)
        accepted = False
        resolvable = False
        for _ in range(60):
            s_new = np.clip(s + trial * g, -SCORE_CAP, SCORE_CAP)
            s_new[0] = 0.0
            ll_new, grad_new = value_and_grad(s_new)
            resolvable = ll_new - ll >= 0.5 * trial * gsq
            g_new = grad_new.copy()
            g_new[0] = 0.0
            stable = float(np.linalg.norm(g_new)) <= gnorm
            if resolvable or (stable and ll_new >= ll + 0.5 * trial * gsq - slack):
                accepted = True
                break
            trial *= 0.5
        if not accepted:
            break
        step = min(1.0, 2.0 * trial) if resolvable else trial
        s, ll, grad = s_new, ll_new, grad_new
    g = grad.copy()
    g[0] = 0.0
    converged = converged or bool(np.max(np.abs(g)) <= GRADIENT_TOL)
    if np.any(np.abs(s) >= SCORE_CAP):
        warnings.warn(
            f"scores capped at |s| = {SCORE_CAP:g}; the unconstrained optimum "
            "diverges (dominant preferences in the data)",
            DivergenceWarning,
            stacklevel=3,
        )
    return FitResult(
        scores=tuple(float(x) for x in s),
        log_likelihood=float(ll),
        iterations=iterations,
        converged=converged,
    )


def fit_bt(counts: PairwiseCounts) -> FitResult:
    """Fit pairwise-model scores to a win-count matrix.

    Requires the comparison graph to be connected. Pairs that were
    compared but never split (one side always wins) trigger a
    DivergenceWarning up front, and the optimizer's score cap takes over.
    """
    w = counts.wins
    n = counts.n
    totals = w + w.T
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if totals[i, j] > 0}
    _require_connected(n, edges, "the pairwise comparison graph")
    one_sided = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if totals[i, j] > 0 and (w[i, j] == 0 or w[j, i] == 0)
    ]
    if one_sided:
        warnings.warn(
            f"one-sided pairs {one_sided} push the MLE to infinity; "
            f"scores will be capped at |s| = {SCORE_CAP:g}",
            DivergenceWarning,
            stacklevel=2,
        )

    def value_and_grad(s: np.ndarray) -> tuple[float, np.ndarray]:
        diff = s[:, None] - s[None, :]
        # log sigmoid(diff), stable for both signs
        log_p = -np.logaddexp(0.0, -diff)
        ll = float(np.sum(w * log_p))
        sig_neg = 1.0 / (1.0 + np.exp(np.clip(diff, -700, 700)))  # sigmoid(-diff)
        g_matrix = w * sig_neg
        grad = g_matrix.sum(axis=1) - g_matrix.sum(axis=0)
        return ll, grad

    return _ascend(value_and_grad, n)


def fit_pl(
    rankings: Sequence[tuple[KTuplePreference, float]],
    n_options: int,
) -> FitResult:
    """Fit K-tuple model scores to weighted ranking observations.

    rankings is a sequence of (preference, multiplicity) pairs; identical
    rankings may appear multiple times and are aggregated. With only
    2-tuples this coincides with fit_bt on the induced counts.
    """
    n = int(n_options)
    if n < 2:
        raise DomainError(f"need at least 2 options, got {n}")
    weights: dict[tuple[int, ...], float] = {}
    for pref, mult in rankings:
        m = float(mult)
        if m < 0 or not math.isfinite(m):
            raise ValidationError(f"multiplicity must be finite and >= 0, got {mult!r}")
        if m == 0:
            continue
        for idx in pref.indices:
            if not 0 <= idx < n:
                raise DomainError(f"ranking index {idx} out of range for {n} options")
        weights[pref.indices] = weights.get(pref.indices, 0.0) + m
    if not weights:
        raise ValidationError("no rankings with positive multiplicity")
    edges = set()
    for idx in weights:
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                edges.add((min(idx[a], idx[b]), max(idx[a], idx[b])))
    _require_connected(n, edges, "the ranking comparison graph")

    items = list(weights.items())

    def value_and_grad(s: np.ndarray) -> tuple[float, np.ndarray]:
        ll = 0.0
        grad = np.zeros(n)
        for idx, mult in items:
            sel = np.array(idx)
            for stage in range(len(sel) - 1):
                suffix = sel[stage:]
                stage_scores = s[suffix]
                top = float(np.max(stage_scores))
                expd = np.exp(stage_scores - top)
                denom = float(np.sum(expd))
                ll += mult * (stage_scores[0] - top - math.log(denom))
                grad[suffix[0]] += mult
                grad[suffix] -= mult * expd / denom
        return ll, grad

    return _ascend(value_and_grad, n)


def predict(fit: FitResult, i: int, j: int) -> float:
    """Fitted probability that option i is preferred over option j."""
    n = len(fit.scores)
    if not (0 <= i < n and 0 <= j < n):
        raise DomainError(f"indices ({i}, {j}) out of range for {n} fitted options")
    return bt_prob(fit.scores[i], fit.scores[j])


# ---------------------------------------------------------------------------
# Input formats
# ---------------------------------------------------------------------------


def counts_from_samples(
    samples: Sequence[PreferenceSample],
    labels: Sequence[str],
) -> PairwiseCounts:
    """Aggregate synthesized samples into a win-count matrix.

    The winner of a sample is the option named in the chosen answer's
    first slot (answers always name the preferred option first); the
    loser comes from the rejected answer the same way.
    """
    labels = [str(l) for l in labels]
    if len(set(labels)) != len(labels) or len(labels) < 2:
        raise ValidationError(f"need at least 2 distinct labels, got {labels}")
    index = {label: k for k, label in enumerate(labels)}
    wins = np.zeros((len(labels), len(labels)))
    for sample in samples:
        winner = _first_label(sample.chosen, labels)
        loser = _first_label(sample.rejected, labels)
        if winner is None or loser is None:
            raise ValidationError(f"sample references unknown options: {sample!r}")
        if winner == loser:
            raise ValidationError(f"sample has identical winner and loser: {sample!r}")
        wins[index[winner], index[loser]] += 1
    return PairwiseCounts(wins)


def parse_counts_text(text: str) -> PairwiseCounts:
    """Parse 'N then N*N integers, whitespace-separated' into counts."""
    tokens = text.split()
    if not tokens:
        raise ValidationError("empty count-matrix text")
    try:
        n = int(tokens[0])
        values = [float(t) for t in tokens[1:]]
    except ValueError as exc:
        raise ValidationError(f"count matrix must be numeric: {exc}") from exc
    if len(values) != n * n:
        raise ValidationError(
            f"expected {n}*{n} = {n * n} matrix entries, got {len(values)}"
        )
    return PairwiseCounts(np.array(values).reshape(n, n))


def load_counts(path) -> PairwiseCounts:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_counts_text(fh.read())
