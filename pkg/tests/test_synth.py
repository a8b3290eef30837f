"""Dataset synthesis: templates, sampling protocol, reproducibility."""

import json
import math

import pytest

from prefsense import (
    DatasetSpec,
    DomainError,
    PreferenceSample,
    TemplateBank,
    ValidationError,
    default_bank,
    empirical_check,
    generate,
    read_jsonl,
    sweep,
    write_jsonl,
    write_manifest,
)

PERM = ("dog", "bird", "cat")


def spec(p12=0.99, p23=0.01, n=2000, seed=3):
    return DatasetSpec(PERM, p12, p23, n, seed)


class TestTemplateBank:
    def test_bank_sizes(self):
        bank = default_bank()
        assert len(bank.questions) == 20
        assert len(bank.answers) == 30

    def test_slot_discipline(self):
        bank = default_bank()
        for q in bank.questions:
            assert q.count("<A>") == 1 and q.count("<B>") == 1
        for a in bank.answers:
            assert a.count("<A>") >= 1

    def test_validation(self):
        with pytest.raises(ValidationError):
            TemplateBank(questions=("no slots here?",), answers=("I prefer <A>.",))
        with pytest.raises(ValidationError):
            TemplateBank(questions=("pick <A> or <B>?",), answers=("no slot.",))
        with pytest.raises(ValidationError):
            TemplateBank(questions=(), answers=("I prefer <A>.",))


class TestDatasetSpec:
    def test_validation(self):
        with pytest.raises(ValidationError):
            DatasetSpec(("a", "a", "b"), 0.5, 0.5, 10, 0)
        with pytest.raises(DomainError):
            DatasetSpec(PERM, 1.5, 0.5, 10, 0)
        with pytest.raises(ValidationError):
            DatasetSpec(PERM, 0.5, 0.5, 0, 0)

    def test_endpoints_admitted(self):
        DatasetSpec(PERM, 0.99, 0.0, 10, 0)
        DatasetSpec(PERM, 0.99, 1.0, 10, 0)


class TestGenerate:
    def test_sample_count_and_fields(self):
        samples = generate(spec(n=50))
        assert len(samples) == 50
        for s in samples:
            assert s.question and s.chosen and s.rejected
            assert s.chosen != s.rejected

    def test_deterministic(self):
        assert generate(spec()) == generate(spec())

    def test_seed_changes_output(self):
        assert generate(spec(seed=1)) != generate(spec(seed=2))

    def test_no_placeholders_remain(self):
        for s in generate(spec(n=500)):
            for text in (s.question, s.chosen, s.rejected):
                assert "<A>" not in text and "<B>" not in text

    def test_forbidden_pair_never_appears(self):
        samples = generate(spec(n=3000))
        for s in samples:
            mentioned = {o for o in PERM if o in s.chosen or o in s.rejected}
            assert mentioned != {"dog", "cat"}

    def test_question_mentions_both_options_of_the_pair(self):
        # The pair is recovered from the answers (whose templates contain
        # no option-name substrings); the question must show both options.
        # Questions themselves are not parsed for options anywhere, which
        # matters because one question template contains "advocate".
        for s in generate(spec(n=200)):
            pair = {o for o in PERM if o in s.chosen} | {o for o in PERM if o in s.rejected}
            assert len(pair) == 2
            assert all(o in s.question for o in pair)

    def test_display_order_varies(self):
        # The pair (dog, bird) should appear in both display orders in
        # roughly equal proportion.
        samples = generate(spec(n=4000))
        first_dog = 0
        total = 0
        for s in samples:
            pd, pb = s.question.find("dog"), s.question.find("bird")
            if pd >= 0 and pb >= 0:
                total += 1
                first_dog += pd < pb
        assert total > 0
        assert abs(first_dog / total - 0.5) < 3 * math.sqrt(0.25 / total)

    def test_fair_coin_frequencies(self):
        report = empirical_check(generate(spec(p12=0.5, p23=0.5, n=10_000)), spec(p12=0.5, p23=0.5, n=10_000))
        for ps in report.pairs:
            assert abs(ps.z_score) <= 3.0

    def test_degenerate_probabilities_one_sided(self):
        samples = generate(DatasetSpec(PERM, 0.99, 0.0, 3000, 5))
        report = empirical_check(samples, DatasetSpec(PERM, 0.99, 0.0, 3000, 5))
        stats_23 = report.pairs[1]
        assert stats_23.pair == ("bird", "cat")
        assert stats_23.first_wins == 0
        assert stats_23.z_score == 0.0
        samples = generate(DatasetSpec(PERM, 0.99, 1.0, 3000, 5))
        report = empirical_check(samples, DatasetSpec(PERM, 0.99, 1.0, 3000, 5))
        assert report.pairs[1].first_wins == report.pairs[1].count

    def test_chosen_names_winner_first(self):
        # The preferred option always fills the answer's first slot, so
        # it must appear in the chosen text no later than the loser.
        for s in generate(spec(n=300)):
            pair = [o for o in PERM if o in s.chosen or o in s.rejected]
            winner_pos = min(s.chosen.find(o) for o in pair if s.chosen.find(o) >= 0)
            rej_winner_pos = min(s.rejected.find(o) for o in pair if s.rejected.find(o) >= 0)
            winner = next(o for o in pair if s.chosen.find(o) == winner_pos)
            loser = next(o for o in pair if s.rejected.find(o) == rej_winner_pos)
            assert winner != loser


class TestEmpiricalCheck:
    def test_counts_partition_samples(self):
        s = spec(n=5000)
        report = empirical_check(generate(s), s)
        assert sum(ps.count for ps in report.pairs) + report.forbidden_count == 5000
        assert report.forbidden_count == 0
        assert report.forbidden_pair == ("dog", "cat")

    def test_strong_preference_z(self):
        s = spec(p12=0.99, n=10_000)
        report = empirical_check(generate(s), s)
        assert abs(report.pairs[0].z_score) <= 3.0

    def test_unknown_options_rejected(self):
        bad = [PreferenceSample("q", "I prefer fish.", "I prefer rocks.")]
        with pytest.raises(ValidationError):
            empirical_check(bad, spec())


class TestSweep:
    def test_grid(self):
        specs = sweep(spec(seed=7))
        assert len(specs) == 21
        assert [s.p23 for s in specs] == [i / 20 for i in range(21)]
        assert all(s.p12 == 0.99 for s in specs)
        assert [s.seed for s in specs] == list(range(7, 28))
        assert all(s.permutation == PERM for s in specs)

    def test_endpoint_datasets_one_sided(self):
        specs = sweep(spec(n=500))
        lo = empirical_check(generate(specs[0]), specs[0])
        hi = empirical_check(generate(specs[-1]), specs[-1])
        assert lo.pairs[1].first_wins == 0
        assert hi.pairs[1].first_wins == hi.pairs[1].count


class TestFiles:
    def test_jsonl_round_trip(self, tmp_path):
        samples = generate(spec(n=40))
        path = tmp_path / "data.jsonl"
        write_jsonl(samples, path)
        assert read_jsonl(path) == samples
        records = [json.loads(line) for line in path.read_text().strip().split("\n")]
        assert all(set(r) == {"question", "chosen", "rejected"} for r in records)

    def test_jsonl_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        write_jsonl(generate(spec()), a)
        write_jsonl(generate(spec()), b)
        assert a.read_bytes() == b.read_bytes()

    def test_jsonl_malformed(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"question": "q"}\n')
        with pytest.raises(ValidationError):
            read_jsonl(path)

    def test_manifest(self, tmp_path):
        specs = sweep(spec(n=10))[:3]
        entries = [(s, f"data_{i}.jsonl") for i, s in enumerate(specs)]
        path = tmp_path / "manifest.csv"
        write_manifest(entries, path)
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "permutation,p12,p23,seed,path"
        assert len(lines) == 4
        assert lines[1].startswith('"dog,bird,cat",0.99,0.0,')
