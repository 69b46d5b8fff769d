import math
import random

import numpy as np
import pytest

from targetaug.classifier import (
    FeatureSpec,
    FileScorer,
    LinearModel,
    TrainConfig,
    TrainingError,
    featurize,
    load_model,
    loss_and_gradient,
    predict,
    save_model,
    train,
)
from targetaug.corpus import HATEFUL, NON_HATEFUL

from conftest import make_post


def random_model(rng, hash_dim=1024):
    spec = FeatureSpec(hash_dim=hash_dim)
    weights = np.array([rng.gauss(0, 0.5) for _ in range(hash_dim)])
    return LinearModel(weights=weights, bias=rng.gauss(0, 0.5), spec=spec)


def random_batch(rng, hash_dim=1024, size=4, nnz=6):
    batch = []
    for _ in range(size):
        features = {rng.randrange(hash_dim): float(rng.randint(1, 3)) for _ in range(nnz)}
        batch.append((features, rng.randint(0, 1)))
    return batch


def numerical_gradient(model, batch, l2, h=1e-6):
    """Central finite differences over every touched weight and the bias."""
    touched = sorted({i for features, _ in batch for i in features})
    grad = {}
    for i in touched:
        orig = model.weights[i]
        model.weights[i] = orig + h
        up, _, _ = loss_and_gradient(model, batch, l2)
        model.weights[i] = orig - h
        down, _, _ = loss_and_gradient(model, batch, l2)
        model.weights[i] = orig
        grad[i] = (up - down) / (2 * h)
    orig = model.bias
    model.bias = orig + h
    up, _, _ = loss_and_gradient(model, batch, l2)
    model.bias = orig - h
    down, _, _ = loss_and_gradient(model, batch, l2)
    model.bias = orig
    return grad, (up - down) / (2 * h)


def separable_fixture(n=200, seed=0):
    """Two disjoint keyword vocabularies, so a linear model must separate it."""
    rng = random.Random(seed)
    hateful_vocab = ["grimble", "snarkle", "vexroth", "drubbin"]
    benign_vocab = ["meadow", "breeze", "lantern", "compote"]
    posts = []
    for i in range(n):
        hateful = i % 2 == 0
        vocab = hateful_vocab if hateful else benign_vocab
        words = rng.choices(vocab, k=rng.randint(3, 7))
        posts.append(
            make_post(
                post_id=f"s{i}",
                text=" ".join(words),
                label=HATEFUL if hateful else NON_HATEFUL,
            )
        )
    return posts


class TestFeaturize:
    spec = FeatureSpec(hash_dim=2**12)

    def test_empty_text(self):
        assert featurize("", self.spec) == {}

    def test_deterministic(self):
        text = "some words repeated some words"
        assert featurize(text, self.spec) == featurize(text, self.spec)

    def test_lowercase_folds_case(self):
        assert featurize("Hello World", self.spec) == featurize("hello world", self.spec)

    def test_case_matters_when_disabled(self):
        spec = FeatureSpec(hash_dim=2**12, lowercase=False)
        assert featurize("Hello", spec) != featurize("hello", spec)

    def test_indices_in_range(self):
        for idx in featurize("a few words of ordinary text", self.spec):
            assert 0 <= idx < self.spec.hash_dim

    def test_counts_accumulate(self):
        single = featurize("word", FeatureSpec(hash_dim=2**12, char_orders=()))
        double = featurize("word word", FeatureSpec(hash_dim=2**12, char_orders=()))
        # the unigram index appears twice in the doubled text
        uni = next(iter(single))
        assert double[uni] >= 2 * single[uni] - 1e-9

    def test_hash_dim_validated(self):
        with pytest.raises(ValueError):
            FeatureSpec(hash_dim=1000)
        with pytest.raises(ValueError):
            FeatureSpec(hash_dim=2**9)


class TestLossAndGradient:
    def test_zero_model_balanced_batch_ln2(self):
        spec = FeatureSpec(hash_dim=2**10)
        model = LinearModel(weights=np.zeros(2**10), bias=0.0, spec=spec)
        batch = [({0: 1.0}, 1), ({1: 1.0}, 0)]
        loss, _, _ = loss_and_gradient(model, batch, l2=0.0)
        assert loss == pytest.approx(math.log(2), abs=1e-12)

    def test_gradient_matches_finite_differences(self):
        rng = random.Random(99)
        for trial in range(100):
            model = random_model(rng)
            batch = random_batch(rng)
            l2 = rng.choice([0.0, 1e-3, 1e-2])
            _, grad_w, grad_b = loss_and_gradient(model, batch, l2)
            num_w, num_b = numerical_gradient(model, batch, l2)
            for i, expected in num_w.items():
                scale = max(abs(expected), abs(grad_w[i]), 1e-8)
                assert abs(grad_w[i] - expected) / scale < 1e-4, f"trial {trial}, w[{i}]"
            scale = max(abs(num_b), abs(grad_b), 1e-8)
            assert abs(grad_b - num_b) / scale < 1e-4, f"trial {trial}, bias"

    def test_empty_batch_rejected(self):
        model = random_model(random.Random(0))
        with pytest.raises(ValueError):
            loss_and_gradient(model, [])

    def test_l2_term_included(self):
        spec = FeatureSpec(hash_dim=2**10)
        weights = np.zeros(2**10)
        weights[0] = 2.0
        model = LinearModel(weights=weights, bias=0.0, spec=spec)
        batch = [({5: 1.0}, 1)]
        loss0, _, _ = loss_and_gradient(model, batch, l2=0.0)
        loss1, _, _ = loss_and_gradient(model, batch, l2=0.1)
        assert loss1 == pytest.approx(loss0 + 0.5 * 0.1 * 4.0)


class TestTrain:
    spec = FeatureSpec(hash_dim=2**12)

    def test_separable_fixture_reaches_95(self):
        posts = separable_fixture()
        model = train(posts, TrainConfig(epochs=5, seed=1), self.spec)
        correct = sum(predict(model, p.text)[0] == p.label for p in posts)
        assert correct / len(posts) >= 0.95

    def test_bit_identical_across_runs(self):
        posts = separable_fixture()
        m1 = train(posts, TrainConfig(epochs=3, seed=7), self.spec)
        m2 = train(posts, TrainConfig(epochs=3, seed=7), self.spec)
        assert np.array_equal(m1.weights, m2.weights)
        assert m1.bias == m2.bias

    def test_seed_changes_model(self):
        posts = separable_fixture()
        m1 = train(posts, TrainConfig(epochs=2, seed=1), self.spec)
        m2 = train(posts, TrainConfig(epochs=2, seed=2), self.spec)
        assert not np.array_equal(m1.weights, m2.weights)

    def test_single_class_rejected(self):
        posts = [make_post(f"p{i}", text=f"text {i}", label=HATEFUL) for i in range(4)]
        with pytest.raises(TrainingError, match="both labels"):
            train(posts, TrainConfig(epochs=1), self.spec)

    def test_zero_epochs_rejected(self):
        with pytest.raises(ValueError):
            TrainConfig(epochs=0)

    def test_full_batch_loss_non_increasing(self):
        posts = separable_fixture(n=60)
        config = TrainConfig(
            epochs=8, learning_rate=0.05, batch_size=60, seed=0, l2=0.0
        )
        model = train(posts, config, self.spec)
        losses = model.train_meta["epoch_losses"]
        for earlier, later in zip(losses, losses[1:]):
            assert later <= earlier + 1e-6

    def test_holdout_epoch_selection(self):
        posts = separable_fixture(n=100)
        config = TrainConfig(epochs=4, seed=3, holdout_fraction=0.1)
        model = train(posts, config, self.spec)
        assert model.train_meta["n_holdout"] == 10
        assert model.train_meta["n_train"] == 90

    def test_records_final_loss(self):
        posts = separable_fixture(n=40)
        model = train(posts, TrainConfig(epochs=2, seed=0), self.spec)
        assert model.train_meta["final_loss"] == model.train_meta["epoch_losses"][-1]


class TestPredict:
    spec = FeatureSpec(hash_dim=2**10)

    def test_zero_model_ties_to_non_hateful(self):
        model = LinearModel(weights=np.zeros(2**10), bias=0.0, spec=self.spec)
        label, prob = predict(model, "whatever text")
        assert prob == 0.5
        assert label == NON_HATEFUL

    def test_positive_feature_raises_probability(self):
        model = LinearModel(weights=np.zeros(2**10), bias=0.0, spec=self.spec)
        base = predict(model, "plain words only")[1]
        feats = featurize("plain words only extra", self.spec)
        new_idx = set(feats) - set(featurize("plain words only", self.spec))
        for i in new_idx:
            model.weights[i] = 1.0
        assert predict(model, "plain words only extra")[1] > base

    def test_feature_order_irrelevant(self):
        rng = random.Random(5)
        model = random_model(rng, hash_dim=2**10)
        spec = FeatureSpec(hash_dim=2**10, word_orders=(1,), char_orders=())
        model = LinearModel(weights=model.weights, bias=model.bias, spec=spec)
        assert predict(model, "alpha beta gamma") == predict(model, "gamma alpha beta")


class TestModelFiles:
    def test_round_trip_exact(self, tmp_path):
        posts = separable_fixture(n=40)
        model = train(posts, TrainConfig(epochs=2, seed=0), FeatureSpec(hash_dim=2**12))
        path = tmp_path / "model.npz"
        save_model(model, path)
        loaded = load_model(path)
        assert np.array_equal(loaded.weights, model.weights)
        assert loaded.bias == model.bias
        assert loaded.spec == model.spec
        assert loaded.train_meta == model.train_meta

    def test_version_checked(self, tmp_path):
        posts = separable_fixture(n=40)
        model = train(posts, TrainConfig(epochs=1, seed=0), FeatureSpec(hash_dim=2**12))
        path = tmp_path / "model.npz"
        save_model(model, path)
        import json

        with np.load(path) as data:
            meta = json.loads(bytes(data["meta"].tobytes()))
            weights = data["weights"]
        meta["format_version"] = 99
        with open(path, "wb") as fh:
            np.savez(
                fh,
                weights=weights,
                meta=np.frombuffer(json.dumps(meta).encode(), dtype=np.uint8),
            )
        with pytest.raises(ValueError, match="format version"):
            load_model(path)


class TestFileScorer:
    def test_reads_jsonl_and_predicts(self, tmp_path):
        path = tmp_path / "scores.jsonl"
        path.write_text('{"id": "p1", "p_hateful": 0.9}\n{"id": "p2", "p_hateful": 0.2}\n')
        scorer = FileScorer.from_jsonl(path)
        assert scorer.predict_post(make_post("p1")) == (HATEFUL, 0.9)
        assert scorer.predict_post(make_post("p2")) == (NON_HATEFUL, 0.2)

    def test_unknown_id_raises(self):
        scorer = FileScorer({})
        with pytest.raises(KeyError):
            scorer.predict_post(make_post("p1"))
