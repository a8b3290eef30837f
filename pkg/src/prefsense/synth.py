"""Controlled synthesis of pairwise preference datasets.

A dataset is parameterized by an ordered triple of option names and two
pair probabilities: how often the first option beats the second, and how
often the second beats the third. Samples never compare the first and
third options, so the dataset carries no direct information about that
pair; whatever a fitted model predicts for it comes entirely from
composition through the middle option.

Each emitted sample is a question plus a chosen and a rejected answer,
rendered from fixed template banks. Generation is driven by a single
sequential seeded stream, with one draw per decision in a pinned order
(pair, question template, answer template, display order, winner), so a
dataset is reproducible byte for byte from its spec.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, ValidationError, require_finite
from .oracles import make_rng

__all__ = [
    "QUESTION_TEMPLATES",
    "ANSWER_TEMPLATES",
    "TemplateBank",
    "DatasetSpec",
    "PreferenceSample",
    "PairStats",
    "EmpiricalReport",
    "default_bank",
    "generate",
    "sweep",
    "empirical_check",
    "write_jsonl",
    "read_jsonl",
    "write_manifest",
]

QUESTION_TEMPLATES = (
    "If you had to choose between <A> and <B>, which would you prefer?",
    "Would you rather have <A> or <B>?",
    "Given the choice of <A> and <B>, which one appeals to you more?",
    "Between <A> and <B>, which would you be more likely to select?",
    "If you could only pick one, would you go for <A> or <B>?",
    "When deciding between <A> and <B>, which would you favor?",
    "In your opinion, is <A> or <B> the better option?",
    "Faced with <A> and <B> as alternatives, which would you lean towards?",
    "If you were presented with <A> and <B>, which would you gravitate to?",
    "Weighing the merits of <A> against <B>, which comes out on top for you?",
    "In a hypothetical scenario where you must choose, would <A> or <B> be your preference?",
    "If forced to decide, would you opt for <A> or <B>?",
    "Considering the pros and cons, which do you find more appealing: <A> or <B>?",
    "If <A> and <B> were your only options, which would you choose?",
    "When comparing <A> to <B>, which one stands out as more desirable to you?",
    "In a situation where you can't have both, would you prioritize <A> or <B>?",
    "If you had to advocate for either <A> or <B>, which would you support?",
    "Imagining a world with only <A> or <B>, which would you want to exist?",
    "If you could only choose one, would it be <A> or <B>?",
    "When push comes to shove, would you side with <A> or <B>?",
)

ANSWER_TEMPLATES = (
    "I prefer <A> over <B>.",
    "I would choose <A> rather than <B>.",
    "<A> appeals to me more than <B>.",
    "I just prefer <A>.",
    "I'm more drawn to <A> than <B>.",
    "If I had to pick, I'd go with <A> over <B>.",
    "<A> is my preferred choice when compared to <B>.",
    "I find <A> to be a better option than <B>.",
    "I tend to favor <A> when deciding between <A> and <B>.",
    "<A> is more attractive to me than <B>.",
    "I lean towards <A> when considering <A> and <B>.",
    "I simply like <A> better than <B>.",
    "I would be more likely to select <A> over <B>.",
    "Between <A> and <B>, <A> comes out on top for me.",
    "I gravitate more towards <A> than <B>.",
    "Given the options, I'd opt for <A> instead of <B>.",
    "My preference lies with <A> rather than <B>.",
    "I'm inclined to choose <A> over <B>.",
    "In my opinion, <A> outweighs <B>.",
    "<A> resonates with me more than <B>.",
    "I'd prioritize <A> over <B> if I had to make a choice.",
    "When weighing <A> against <B>, I find <A> more appealing.",
    "I'm more partial to <A> than <B>.",
    "If forced to decide, I'd side with <A> over <B>.",
    "<A> holds more appeal for me compared to <B>.",
    "I'd be more satisfied with <A> than <B>.",
    "My inclination is towards <A> rather than <B>.",
    "I see more value in <A> than in <B>.",
    "Given the choice, I'd go for <A> instead of <B>.",
    "I have a stronger affinity for <A> than for <B>.",
)


@dataclass(frozen=True)
class TemplateBank:
    """Question and answer templates with <A>/<B> placeholders.

    Questions must mention both slots exactly once; answers must mention
    the preferred slot <A> at least once (a few omit <B> entirely).
    """

    questions: tuple[str, ...]
    answers: tuple[str, ...]

    def __post_init__(self):
        for q in self.questions:
            if q.count("<A>") != 1 or q.count("<B>") != 1:
                raise ValidationError(f"question template needs <A> and <B> exactly once: {q!r}")
        for a in self.answers:
            if a.count("<A>") < 1:
                raise ValidationError(f"answer template needs at least one <A>: {a!r}")
        if not self.questions or not self.answers:
            raise ValidationError("template bank must not be empty")


def default_bank() -> TemplateBank:
    return TemplateBank(questions=QUESTION_TEMPLATES, answers=ANSWER_TEMPLATES)


@dataclass(frozen=True)
class DatasetSpec:
    """Parameters of one synthesized dataset.

    p12 and p23 are Bernoulli parameters for the (first, second) and
    (second, third) pairs. 0 and 1 are admitted as degenerate endpoints
    (all samples one-sided), which the sweep grid requires.
    """

    permutation: tuple[str, str, str]
    p12: float
    p23: float
    n_samples: int
    seed: int

    def __post_init__(self):
        perm = tuple(str(o) for o in self.permutation)
        if len(perm) != 3 or len(set(perm)) != 3:
            raise ValidationError(f"permutation must be 3 distinct names, got {perm}")
        object.__setattr__(self, "permutation", perm)
        for name in ("p12", "p23"):
            p = require_finite(getattr(self, name), name)
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {p!r}")
            object.__setattr__(self, name, p)
        if int(self.n_samples) < 1:
            raise ValidationError(f"n_samples must be >= 1, got {self.n_samples}")
        object.__setattr__(self, "n_samples", int(self.n_samples))
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class PreferenceSample:
    question: str
    chosen: str
    rejected: str


def generate(spec: DatasetSpec, bank: TemplateBank | None = None) -> list[PreferenceSample]:
    """Generate the dataset described by a spec.

    Per sample, five stream draws in fixed order decide: which of the two
    admissible pairs, the question template, the answer template (shared
    by chosen and rejected, with slots swapped), the display order in the
    question, and the Bernoulli winner. The (first, third) pair is never
    emitted.
    """
    bank = bank or default_bank()
    o1, o2, o3 = spec.permutation
    pairs = ((o1, o2, spec.p12), (o2, o3, spec.p23))
    draws = make_rng(spec.seed).random((spec.n_samples, 5))
    n_q = len(bank.questions)
    n_a = len(bank.answers)
    samples = []
    for u_pair, u_q, u_a, u_disp, u_win in draws:
        first_opt, second_opt, p_win = pairs[0 if u_pair < 0.5 else 1]
        question_t = bank.questions[min(int(u_q * n_q), n_q - 1)]
        answer_t = bank.answers[min(int(u_a * n_a), n_a - 1)]
        shown = (first_opt, second_opt) if u_disp < 0.5 else (second_opt, first_opt)
        winner, loser = (first_opt, second_opt) if u_win < p_win else (second_opt, first_opt)
        samples.append(
            PreferenceSample(
                question=question_t.replace("<A>", shown[0]).replace("<B>", shown[1]),
                chosen=answer_t.replace("<A>", winner).replace("<B>", loser),
                rejected=answer_t.replace("<A>", loser).replace("<B>", winner),
            )
        )
    return samples


def sweep(base: DatasetSpec) -> list[DatasetSpec]:
    """The 21-point sweep: p12 fixed at 0.99, p23 on a 0.05 grid over [0, 1].

    Seeds are derived as base.seed + index so the datasets are independent
    but the whole sweep is reproducible from one seed.
    """
    return [
        DatasetSpec(
            permutation=base.permutation,
            p12=0.99,
            p23=i / 20.0,
            n_samples=base.n_samples,
            seed=base.seed + i,
        )
        for i in range(21)
    ]


# ---------------------------------------------------------------------------
# Validation of generated samples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairStats:
    """Empirical outcome frequencies for one ordered option pair."""

    pair: tuple[str, str]
    count: int
    first_wins: int
    empirical_p: float
    expected_p: float
    std_error: float
    z_score: float


@dataclass(frozen=True)
class EmpiricalReport:
    pairs: tuple[PairStats, ...]
    forbidden_pair: tuple[str, str]
    forbidden_count: int
    n_total: int


def empirical_check(samples: Sequence[PreferenceSample], spec: DatasetSpec) -> EmpiricalReport:
    """Per-pair empirical frequencies and z-scores against the spec.

    The z-score compares the observed win rate with the spec's Bernoulli
    parameter under binomial sampling. Degenerate parameters (0 or 1)
    have zero standard error; the z-score is 0 when the counts match
    exactly and infinite otherwise. The excluded pair is reported with
    its count, which must be 0 for a well-formed dataset.
    """
    o1, o2, o3 = spec.permutation
    counts = {(o1, o2): [0, 0], (o2, o3): [0, 0]}
    forbidden = 0
    for sample in samples:
        winner = _first_label(sample.chosen, spec.permutation)
        loser = _first_label(sample.rejected, spec.permutation)
        if winner is None or loser is None or winner == loser:
            raise ValidationError(
                f"sample does not reference two distinct known options: {sample!r}"
            )
        pair = frozenset((winner, loser))
        if pair == frozenset((o1, o3)):
            forbidden += 1
        elif pair == frozenset((o1, o2)):
            counts[(o1, o2)][0] += 1
            counts[(o1, o2)][1] += winner == o1
        else:
            counts[(o2, o3)][0] += 1
            counts[(o2, o3)][1] += winner == o2
    stats = []
    for pair, expected in (((o1, o2), spec.p12), ((o2, o3), spec.p23)):
        n, wins = counts[pair]
        emp = wins / n if n else math.nan
        if n == 0:
            se, z = math.nan, 0.0
        elif 0.0 < expected < 1.0:
            se = math.sqrt(expected * (1.0 - expected) / n)
            z = (emp - expected) / se
        else:
            se = 0.0
            z = 0.0 if emp == expected else math.inf
        stats.append(
            PairStats(
                pair=pair,
                count=n,
                first_wins=wins,
                empirical_p=emp,
                expected_p=expected,
                std_error=se,
                z_score=z,
            )
        )
    return EmpiricalReport(
        pairs=tuple(stats),
        forbidden_pair=(o1, o3),
        forbidden_count=forbidden,
        n_total=len(samples),
    )


def _first_label(text: str, labels: Sequence[str]) -> str | None:
    """Earliest-occurring option name in a rendered answer.

    Answer templates always place the preferred slot first, so on the
    chosen side this is the winner. Longer labels win position ties so a
    label that prefixes another cannot shadow it.
    """
    best = None
    best_pos = len(text) + 1
    for label in sorted(labels, key=len, reverse=True):
        pos = text.find(label)
        if pos != -1 and pos < best_pos:
            best = label
            best_pos = pos
    return best


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def write_jsonl(samples: Sequence[PreferenceSample], path) -> str:
    """One JSON record per line with fields question, chosen, rejected."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for s in samples:
            fh.write(
                json.dumps({"question": s.question, "chosen": s.chosen, "rejected": s.rejected})
            )
            fh.write("\n")
    return str(path)


def read_jsonl(path) -> list[PreferenceSample]:
    samples = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                samples.append(
                    PreferenceSample(
                        question=rec["question"],
                        chosen=rec["chosen"],
                        rejected=rec["rejected"],
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValidationError(f"{path}:{line_no}: malformed sample record") from exc
    return samples


def write_manifest(entries: Sequence[tuple[DatasetSpec, str]], path) -> str:
    """Comma-separated manifest: permutation, p12, p23, seed, dataset path."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["permutation", "p12", "p23", "seed", "path"])
        for spec, data_path in entries:
            writer.writerow(
                [",".join(spec.permutation), repr(spec.p12), repr(spec.p23), spec.seed, data_path]
            )
    return str(path)
