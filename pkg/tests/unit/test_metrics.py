"""Unit tests for n-gram metrics, chrF, the token BLEU proxy and compile checks."""

import math

import pytest

from s2leval.config.models import ALL_METRICS, BleuConfig, ChrfConfig
from s2leval.metrics.chrf import chrf, chrf_statistics, chrfpp
from s2leval.metrics.compile import compile_check
from s2leval.metrics.ngram import bleu, rouge1, sacre_style_bleu, tokenize_international
from s2leval.metrics.scores import ScoreSet, score_pair
from s2leval.metrics.texbleu import latex_tokens, texbleu_proxy


class TestRouge1:
    """Tests for rouge1 function."""

    def test_identity(self) -> None:
        """Test identical strings score 1."""
        assert rouge1("a b c", "a b c") == 1.0

    def test_clipped_recall(self) -> None:
        """Test overlap is clipped by hypothesis counts."""
        assert rouge1("a a b", "a c") == pytest.approx(1 / 3)

    def test_disjoint(self) -> None:
        """Test disjoint strings score 0."""
        assert rouge1("a", "b") == 0.0

    def test_empty_reference(self) -> None:
        """Test an empty reference scores 0 against a non-empty hypothesis."""
        assert rouge1("", "a") == 0.0
        assert rouge1("", "") == 1.0


class TestBleu:
    """Tests for bleu function."""

    def test_identity(self) -> None:
        """Test a hypothesis equal to its reference scores 1."""
        assert bleu(["a b c d e"], "a b c d e") == 1.0

    def test_clipping(self) -> None:
        """Test repeated tokens are clipped by reference counts."""
        assert bleu(["the cat"], "the the", BleuConfig(max_order=1)) == 0.5

    def test_brevity_penalty(self) -> None:
        """Test a short hypothesis is penalized."""
        score = bleu(["a b c d"], "a b", BleuConfig(max_order=1))
        assert score == pytest.approx(math.exp(1 - 4 / 2))

    def test_empty_hypothesis(self) -> None:
        """Test an empty hypothesis scores 0 against a non-empty reference."""
        assert bleu(["a"], "") == 0.0

    def test_zero_precision_without_smoothing(self) -> None:
        """Test a missing n-gram order zeroes the score."""
        assert bleu(["a b c"], "a c b") == 0.0

    def test_add_one_smoothing(self) -> None:
        """Test smoothing keeps zero-match orders from zeroing the score."""
        score = bleu(["a b c"], "a c b", BleuConfig(smoothing="add-one"))
        assert 0.0 < score < 1.0

    def test_multiple_references(self) -> None:
        """Test n-grams may match any reference."""
        assert bleu(["a x", "y b"], "a b", BleuConfig(max_order=1)) == 1.0

    def test_requires_reference(self) -> None:
        """Test an empty reference list is rejected."""
        with pytest.raises(ValueError):
            bleu([], "a")

    def test_custom_weights(self) -> None:
        """Test a zero-weight order does not affect the smoothed score."""
        config = BleuConfig(max_order=2, weights=(1.0, 0.0), smoothing="add-one")
        assert bleu(["a b c"], "a c b", config) == pytest.approx(1.0)

    def test_international_tokenization(self) -> None:
        """Test punctuation and symbols become separate tokens."""
        expected = ["\\", "frac", "{", "a", "}", "{", "b", "}"]
        assert tokenize_international(r"\frac{a}{b}") == expected
        assert tokenize_international("3.14 + x") == ["3.14", "+", "x"]

    def test_sacre_style_splits_braces(self) -> None:
        """Test the fixed tokenization rewards partial brace matches."""
        assert sacre_style_bleu([r"\frac{a}{b}"], r"\frac{a}{b}") == 1.0
        assert bleu([r"\frac{a}{b}"], r"\frac{a}{c}") == 0.0
        assert sacre_style_bleu([r"\frac{a}{b}"], r"\frac{a}{c}") > 0.0


class TestChrf:
    """Tests for chrf and chrfpp functions."""

    def test_identity(self) -> None:
        """Test identical strings score 1."""
        assert chrf("abc", "abc") == 1.0
        assert chrfpp("ab", "ab") == 1.0

    def test_unigram_example(self) -> None:
        """Test precision and recall of a one-character change."""
        precision, recall = chrf_statistics("abc", "abd", max_n=1)
        assert precision == pytest.approx(2 / 3)
        assert recall == pytest.approx(2 / 3)
        assert chrf("abc", "abd", ChrfConfig(max_n=1)) == pytest.approx(2 / 3)

    def test_empty_conventions(self) -> None:
        """Test both-empty scores 1 and one-empty scores 0."""
        assert chrf("", "") == 1.0
        assert chrf("abc", "") == 0.0
        assert chrf("", "abc") == 0.0

    def test_whitespace_ignored(self) -> None:
        """Test whitespace does not affect the score."""
        assert chrf("a b c", "abc") == 1.0

    def test_beta_limits(self) -> None:
        """Test large beta tends to recall and small beta to precision."""
        precision, recall = chrf_statistics("abcd", "ab", max_n=1)
        assert chrf("abcd", "ab", ChrfConfig(max_n=1, beta=100.0)) == pytest.approx(
            recall, abs=1e-3
        )
        assert chrf("abcd", "ab", ChrfConfig(max_n=1, beta=0.01)) == pytest.approx(
            precision, abs=1e-3
        )

    def test_score_matches_averaged_statistics(self) -> None:
        """Test chrF is the F-score of the order-averaged precision and recall."""
        precision, recall = chrf_statistics("abcde", "abxde", max_n=3)
        expected = 5 * precision * recall / (4 * precision + recall)
        assert chrf("abcde", "abxde", ChrfConfig(max_n=3)) == pytest.approx(expected)

    def test_disjoint_scores_zero(self) -> None:
        """Test strings sharing no characters score 0."""
        assert chrf("abc", "xyz") == 0.0


class TestTexbleuProxy:
    """Tests for texbleu_proxy function."""

    def test_identity(self) -> None:
        """Test identical formulas score 1."""
        assert texbleu_proxy(r"\frac{1}{2}", r"\frac{1}{2}") == 1.0

    def test_empty(self) -> None:
        """Test two empty formulas score 1."""
        assert texbleu_proxy("", "") == 1.0

    def test_monotone(self) -> None:
        """Test a near miss beats an unrelated formula."""
        near = texbleu_proxy(r"\frac{1}{2}", r"\frac{1}{3}")
        far = texbleu_proxy(r"\frac{1}{2}", "x")
        assert 0.0 < near < 1.0
        assert near > far

    def test_normalization_applied(self) -> None:
        """Test spelling variants tokenize identically."""
        assert latex_tokens(r"\dfrac{ 1 }{ 2 }") == latex_tokens(r"\frac12")

    def test_unparseable_fallback(self) -> None:
        """Test malformed LaTeX still tokenizes."""
        assert latex_tokens(r"\frac{1}{2") == [r"\frac", "{", "1", "}", "{", "2"]


class TestCompileCheck:
    """Tests for compile_check function."""

    def test_pass(self) -> None:
        """Test a canonical formula compiles."""
        assert compile_check(r"\frac{n(n+1)}{2}")

    def test_fail(self) -> None:
        """Test a missing brace fails."""
        assert not compile_check(r"\frac{n(n+1)}{2")

    def test_empty(self) -> None:
        """Test the empty formula compiles."""
        assert compile_check("")


class TestScorePair:
    """Tests for score_pair and ScoreSet."""

    def test_identity_scores(self) -> None:
        """Test identical strings give CER 0 and similarity 1 everywhere."""
        scores = score_pair("x + y", "x + y")
        values = scores.values()
        assert list(values) == list(ALL_METRICS)
        assert values["cer"] == 0.0
        assert values["wer"] == 0.0
        for name in ALL_METRICS[2:]:
            assert values[name] == pytest.approx(1.0)

    def test_subset(self) -> None:
        """Test only requested metrics are filled."""
        scores = score_pair("a", "b", metrics=["cer", "chrf"])
        assert set(scores.values()) == {"cer", "chrf"}
        assert scores.bleu is None

    def test_cased_strings_feed_texbleu(self) -> None:
        """Test texbleu_proxy scores the case-preserved pair."""
        scores = score_pair("x", "x", metrics=["texbleu_proxy"], cased=(r"\Gamma", r"\gamma"))
        assert scores.texbleu_proxy is not None
        assert scores.texbleu_proxy < 1.0

    def test_rounding_clamp(self) -> None:
        """Test similarity values a hair above 1 are snapped to 1."""
        assert ScoreSet(bleu=1.0 + 1e-12).bleu == 1.0

    def test_error_rate_may_exceed_one(self) -> None:
        """Test CER above 1 is a valid value."""
        assert ScoreSet(cer=2.5).cer == 2.5
