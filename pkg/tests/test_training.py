import copy

import numpy as np
import pytest
import torch
from hypothesis import given, settings
from hypothesis import strategies as st

from wingflow.aero import MeshBundle, OperatingCondition, SurfaceFlow, integrate_coefficients, oracle_flow
from wingflow.data import TrainingData
from wingflow.errors import ConfigError
from wingflow.geometry import build_surface_mesh
from wingflow.model import LoRAConfig, ModelConfig, apply_lora, build_model
from wingflow.training import (
    TrainConfig,
    clip_grad_norm,
    coefficient_loss,
    evaluate_sfe,
    one_cycle_lr,
    select_trainable,
    surface_loss,
    total_loss,
    train,
)

TOY = dict(hidden0=8, depths=(1, 1, 1, 1, 1), window=2, heads=2)


# ---------------------------------------------------------------- losses


def test_surface_loss_zero_for_identical():
    x = torch.randn(2, 3, 4, 4)
    assert float(surface_loss(x, x)) == 0.0


def test_surface_loss_single_cell():
    pred = torch.tensor([[[[1.0]], [[2.0]], [[3.0]]]])
    truth = torch.tensor([[[[0.5]], [[1.0]], [[1.0]]]])
    want = 0.5**2 + 1.0**2 + 2.0**2
    assert float(surface_loss(pred, truth)) == pytest.approx(want, rel=1e-7)


def test_surface_loss_matches_brute_force():
    rng = np.random.default_rng(0)
    pred = rng.normal(size=(2, 3, 4, 4))
    truth = rng.normal(size=(2, 3, 4, 4))
    total = 0.0
    for b in range(2):
        acc = 0.0
        for i in range(4):
            for j in range(4):
                acc += sum((pred[b, c, i, j] - truth[b, c, i, j]) ** 2 for c in range(3))
        total += acc / 16
    want = total / 2
    got = float(surface_loss(torch.as_tensor(pred), torch.as_tensor(truth)))
    assert got == pytest.approx(want, rel=1e-12)


def coef_setup(demo_wing):
    mesh = build_surface_mesh(demo_wing, 32, 9)
    oc = OperatingCondition(0.85, 2.0)
    truth = torch.as_tensor(oracle_flow(mesh, demo_wing, oc).stack())[None]
    geom = MeshBundle.from_mesh(mesh)
    return mesh, geom, truth, oc


def test_coefficient_loss_zero_for_identical(demo_wing):
    _, geom, truth, oc = coef_setup(demo_wing)
    loss = coefficient_loss(truth, truth, geom, torch.tensor([oc.aoa_deg], dtype=torch.float64))
    assert float(loss) == 0.0


def test_coefficient_loss_quadratic_scaling(demo_wing):
    _, geom, truth, oc = coef_setup(demo_wing)
    delta = torch.zeros_like(truth)
    delta[:, 0] = 0.01  # pure pressure perturbation
    aoa = torch.tensor([oc.aoa_deg], dtype=torch.float64)
    l1 = float(coefficient_loss(truth + delta, truth, geom, aoa))
    l3 = float(coefficient_loss(truth + 3 * delta, truth, geom, aoa))
    assert l3 == pytest.approx(9.0 * l1, rel=1e-9)


def test_coefficient_loss_gradient_matches_finite_differences(demo_wing):
    _, geom, truth, oc = coef_setup(demo_wing)
    aoa = torch.tensor([oc.aoa_deg], dtype=torch.float64)
    pred = (truth + 0.01 * torch.randn_like(truth)).requires_grad_(True)
    loss = coefficient_loss(pred, truth, geom, aoa)
    loss.backward()
    rng = np.random.default_rng(1)
    eps = 1e-6
    for _ in range(8):
        c = rng.integers(0, 3)
        i = rng.integers(0, truth.shape[2])
        j = rng.integers(0, truth.shape[3])
        up = pred.detach().clone()
        dn = pred.detach().clone()
        up[0, c, i, j] += eps
        dn[0, c, i, j] -= eps
        fd = (float(coefficient_loss(up, truth, geom, aoa))
              - float(coefficient_loss(dn, truth, geom, aoa))) / (2 * eps)
        an = float(pred.grad[0, c, i, j])
        assert abs(fd - an) <= 1e-4 * max(abs(fd), abs(an), 1e-8)


def test_total_loss_lambda_zero_is_surface_loss(demo_wing):
    _, geom, truth, oc = coef_setup(demo_wing)
    pred = truth + 0.1
    loss, l_surf, l_coef = total_loss(pred, truth, geom, torch.tensor([2.0]), 0.0)
    assert l_coef is None
    assert torch.equal(loss, l_surf)
    assert torch.equal(loss, surface_loss(pred, truth))


def test_total_loss_hand_sum(demo_wing):
    _, geom, truth, oc = coef_setup(demo_wing)
    pred = truth + 0.05
    aoa = torch.tensor([oc.aoa_deg], dtype=torch.float64)
    loss, l_surf, l_coef = total_loss(pred, truth, geom, aoa, 0.1)
    assert float(loss) == pytest.approx(float(l_surf) + 0.1 * float(l_coef), rel=1e-12)


# ---------------------------------------------------------------- schedule


def test_one_cycle_endpoints():
    assert one_cycle_lr(0, 1000, 1e-3) == pytest.approx(0.04e-3, rel=1e-12)
    assert one_cycle_lr(500, 1000, 1e-3) == pytest.approx(1e-3, rel=1e-12)
    assert one_cycle_lr(1000, 1000, 1e-3) == pytest.approx(0.001e-3, rel=1e-12)


def test_one_cycle_finetune_defaults():
    assert one_cycle_lr(0, 100, 1e-4, 0.005, 0.001) == pytest.approx(0.005e-4, rel=1e-12)
    assert one_cycle_lr(100, 100, 1e-4, 0.005, 0.001) == pytest.approx(0.001e-4, rel=1e-12)


def test_one_cycle_clamps_beyond_total():
    assert one_cycle_lr(1500, 1000, 1e-3) == one_cycle_lr(1000, 1000, 1e-3)


def test_one_cycle_monotone_up_then_down():
    lrs = [one_cycle_lr(s, 100, 1.0) for s in range(101)]
    assert all(b >= a - 1e-15 for a, b in zip(lrs[:50], lrs[1:51]))
    assert all(b <= a + 1e-15 for a, b in zip(lrs[50:-1], lrs[51:]))


def test_clip_below_threshold_unchanged():
    g = [torch.tensor([0.3, 0.4])]  # norm 0.5
    before = [t.clone() for t in g]
    clip_grad_norm(g, 1.0)
    assert torch.equal(g[0], before[0])


def test_clip_scales_to_max_norm():
    g = [torch.full((4,), 2.0)]  # norm 4
    clip_grad_norm(g, 1.0)
    assert float(torch.linalg.norm(g[0])) == pytest.approx(1.0, abs=1e-9)
    assert torch.allclose(g[0], torch.full((4,), 0.5))


@given(st.integers(0, 10_000), st.floats(0.1, 5.0))
@settings(max_examples=25, deadline=None)
def test_clip_matches_brute_force_and_is_idempotent(seed, max_norm):
    gen = torch.Generator().manual_seed(seed)
    grads = [torch.randn(5, generator=gen), torch.randn(3, 2, generator=gen)]
    pre = float(torch.sqrt(sum(g.pow(2).sum() for g in grads)))
    clip_grad_norm(grads, max_norm)
    post = float(torch.sqrt(sum(g.pow(2).sum() for g in grads)))
    assert post == pytest.approx(min(pre, max_norm), rel=1e-6)
    snapshot = [g.clone() for g in grads]
    clip_grad_norm(grads, max_norm)
    for a, b in zip(grads, snapshot):
        assert torch.allclose(a, b, atol=1e-12)


# ---------------------------------------------------------------- trainer


def load_toy(toy_dataset_dir, dtype=torch.float32):
    return TrainingData.from_dir(toy_dataset_dir, dtype=dtype)


def test_zero_steps_leaves_model_unchanged(toy_dataset_dir):
    data = load_toy(toy_dataset_dir)
    model = build_model(ModelConfig(**TOY), seed=0)
    before = copy.deepcopy(model.state_dict())
    train(model, data, TrainConfig(total_steps=0, batch_size=4, seed=0))
    for k, v in model.state_dict().items():
        assert torch.equal(v, before[k])


def test_finetune_attn_freezes_everything_else(toy_dataset_dir):
    data = load_toy(toy_dataset_dir)
    model = build_model(ModelConfig(**TOY), seed=1)
    before = copy.deepcopy(model.state_dict())
    train(model, data, TrainConfig(total_steps=5, batch_size=4, seed=0,
                                   strategy="finetune_attn", lr_max=1e-3))
    changed, frozen_same = 0, True
    for name, v in model.state_dict().items():
        is_attn = any(f".{p}." in name for p in ("q", "k", "v")) and "attn" in name
        if is_attn:
            changed += not torch.equal(v, before[name])
        else:
            frozen_same &= torch.equal(v, before[name])
    assert changed > 0
    assert frozen_same


def test_finetune_lora_trains_only_adapters(toy_dataset_dir):
    data = load_toy(toy_dataset_dir)
    model = build_model(ModelConfig(**TOY), seed=2)
    apply_lora(model, LoRAConfig(rank=2))
    before = copy.deepcopy(model.state_dict())
    train(model, data, TrainConfig(total_steps=5, batch_size=4, seed=0,
                                   strategy="finetune_lora", lr_max=1e-3))
    for name, v in model.state_dict().items():
        if "lora_" in name:
            continue
        assert torch.equal(v, before[name]), name
    lora_moved = any(
        not torch.equal(v, before[name])
        for name, v in model.state_dict().items()
        if "lora_" in name
    )
    assert lora_moved


def test_lora_strategy_without_adapters_rejected(toy_dataset_dir):
    model = build_model(ModelConfig(**TOY), seed=0)
    with pytest.raises(ConfigError):
        select_trainable(model, "finetune_lora")


def test_lambda_zero_bitwise_identical_to_surface_only(toy_dataset_dir):
    data = load_toy(toy_dataset_dir, dtype=torch.float64)
    results = []
    for _ in range(2):
        model = build_model(ModelConfig(**TOY), seed=3).double()
        train(model, data, TrainConfig(total_steps=8, batch_size=4, seed=5, lambda_coef=0.0))
        results.append(copy.deepcopy(model.state_dict()))
    for k in results[0]:
        assert torch.equal(results[0][k], results[1][k])


def test_determinism_in_float64(toy_dataset_dir):
    data = load_toy(toy_dataset_dir, dtype=torch.float64)
    states = []
    for _ in range(2):
        model = build_model(ModelConfig(**TOY), seed=4).double()
        train(model, data, TrainConfig(total_steps=6, batch_size=4, seed=9, lambda_coef=0.1))
        states.append(copy.deepcopy(model.state_dict()))
    for k in states[0]:
        assert torch.equal(states[0][k], states[1][k])


def test_divergence_aborts_with_last_good_parameters(toy_dataset_dir):
    data = load_toy(toy_dataset_dir)
    data.flow[0, 0, 0, 0] = float("nan")  # poisoned sample -> NaN loss
    model = build_model(ModelConfig(**TOY), seed=5)
    before = copy.deepcopy(model.state_dict())
    result = train(model, data, TrainConfig(total_steps=10, batch_size=len(data), seed=0))
    assert result.diverged
    assert result.history[-1].get("event") == "diverged"
    for k, v in model.state_dict().items():
        assert torch.equal(v, before[k])  # aborted before any bad update


def test_stats_come_from_the_training_subset(toy_dataset_dir):
    # normalization stats are recomputed from the data actually trained on
    data = load_toy(toy_dataset_dir)
    subset = data.subset(np.arange(6))
    model = build_model(ModelConfig(**TOY), seed=8)
    result = train(model, subset, TrainConfig(total_steps=2, batch_size=4, seed=0))
    recomputed = subset.compute_stats()
    np.testing.assert_array_equal(result.stats.flow_mean, recomputed.flow_mean)
    np.testing.assert_array_equal(result.stats.flow_std, recomputed.flow_std)
    full = data.compute_stats()
    assert not np.array_equal(result.stats.flow_mean, full.flow_mean)


def test_training_reduces_loss_and_history_schema(toy_dataset_dir):
    data = load_toy(toy_dataset_dir)
    model = build_model(ModelConfig(**TOY), seed=6)
    result = train(
        model, data,
        TrainConfig(total_steps=150, batch_size=8, seed=0, lambda_coef=0.1, log_every=10,
                    val_every=50),
        val_data=data,
    )
    rows = [h for h in result.history if "loss" in h]
    assert rows[0]["loss"] > rows[-1]["loss"]
    assert {"step", "lr", "loss", "loss_surf", "loss_coef"} <= set(rows[0])
    assert any("val_sfe" in h for h in rows)
    assert evaluate_sfe(model, data, result.stats) < 50.0
