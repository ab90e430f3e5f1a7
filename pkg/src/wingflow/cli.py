"""Command-line workflow: data generation, training, evaluation, serving.

Exit codes: 0 success, 1 usage error, 2 runtime failure. The AT_LOG
environment variable sets the log level (DEBUG/INFO/WARNING/...).
"""

from __future__ import annotations

import argparse
import difflib
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .errors import WingflowError

log = logging.getLogger("wingflow")


class Parser(argparse.ArgumentParser):
    """argparse with exit code 1 on usage errors and did-you-mean hints."""

    def _known_options(self) -> list[str]:
        options = list(self._option_string_actions)
        for action in self._actions:
            if isinstance(action, argparse._SubParsersAction):
                for sub in action.choices.values():
                    options.extend(sub._option_string_actions)
        return options

    def error(self, message):
        if "unrecognized arguments" in message:
            bad = [t for t in message.split(":", 1)[1].split() if t.startswith("-")]
            options = self._known_options()
            for token in bad:
                close = difflib.get_close_matches(token, options, n=1)
                if close:
                    message += f" (did you mean {close[0]}?)"
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def build_parser() -> Parser:
    parser = Parser(prog="wingflow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("gen-data", help="generate an oracle dataset")
    p.add_argument("--kind", choices=["pretrain", "finetune"], required=True)
    p.add_argument("--shapes", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--conditions", type=int, default=8)
    p.add_argument("--chord", type=int, default=256, help="chordwise cells")
    p.add_argument("--span", type=int, default=129, help="spanwise sections")

    p = sub.add_parser("train", help="pre-train a model on a dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--config", required=True, help="JSON file with model/train sections")
    p.add_argument("--out", required=True, help="output checkpoint path")
    p.add_argument("--val-frac", type=float, default=0.0, help="fraction of shapes held out")
    p.add_argument("--history", help="JSON-lines history path (default: <out>.history.jsonl)")
    p.add_argument("--report", help="directory for figures and CSV")

    p = sub.add_parser("finetune", help="adapt a pre-trained checkpoint")
    p.add_argument("--base", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--strategy", choices=["full", "attn", "lora"], default="full")
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--out", required=True)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--batch", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda-coef", type=float, default=0.0)
    p.add_argument("--history")
    p.add_argument("--report")

    p = sub.add_parser("eval", help="evaluate a checkpoint on a dataset")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--folds", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the metrics JSON here as well")
    p.add_argument("--report", help="directory for figures and CSV")
    p.add_argument(
        "--predictor",
        choices=["model", "copy-truth"],
        default="model",
        help="copy-truth is a perfect-copy stub for pipeline validation",
    )

    p = sub.add_parser("pca", help="PCA mode analysis of a dataset's geometry")
    p.add_argument("--data", required=True)
    p.add_argument("--report", help="directory for the spectrum figure and CSV")

    p = sub.add_parser("predict", help="predict fields for one geometry/condition")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--geometry", required=True, help="WingShape JSON file")
    p.add_argument("--mach", type=float, required=True)
    p.add_argument("--aoa", type=float, required=True)
    p.add_argument("--out", help="write the full response JSON here")

    p = sub.add_parser("serve", help="run the HTTP inference service")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1", help="use 0.0.0.0 to expose")
    p.add_argument("--ui", help="also serve this static front-end directory at /")

    return parser


def cmd_gen_data(args) -> int:
    from .data.design_space import DesignSpace
    from .data.generate import generate_dataset

    kind = "pretrain_like" if args.kind == "pretrain" else "finetune_like"
    manifest = generate_dataset(
        DesignSpace.of_kind(kind),
        n_shapes=args.shapes,
        out_dir=args.out,
        seed=args.seed,
        workers=args.workers,
        n_conditions=args.conditions,
        n_chord=args.chord,
        n_span=args.span,
    )
    log.info("generated %d samples in %s", manifest.count, args.out)
    print(json.dumps({"count": manifest.count, "kind": manifest.kind, "out": args.out}))
    return 0


def _write_history(path: Path, history: list[dict]) -> None:
    with open(path, "w") as fh:
        for entry in history:
            fh.write(json.dumps(entry) + "\n")


def cmd_train(args) -> int:
    import torch

    from .data.splits import split_folds
    from .data.training_data import TrainingData
    from .model.config import ModelConfig
    from .model.network import build_model
    from .service.checkpoint import save_checkpoint
    from .training.trainer import TrainConfig, train

    doc = json.loads(Path(args.config).read_text())
    cfg = ModelConfig.from_json({**ModelConfig().to_json(), **doc.get("model", {})})
    tc = TrainConfig(**doc.get("train", {}))

    data = TrainingData.from_dir(args.data)
    val = None
    if args.val_frac > 0:
        folds = max(2, round(1 / args.val_frac))
        assignment = split_folds(data.shape_ids, folds, tc.seed)
        val = data.subset(np.flatnonzero(assignment == 0))
        data = data.subset(np.flatnonzero(assignment != 0))
        if tc.val_every == 0:
            tc.val_every = max(1, tc.total_steps // 10)

    model = build_model(cfg, seed=tc.seed)
    result = train(model, data, tc, val_data=val)
    if result.diverged:
        log.error("training diverged; saving last good parameters")

    from .data.generate import load_manifest

    manifest = load_manifest(args.data)
    provenance = {
        **tc.to_json(),
        "n_chord": manifest.n_chord,
        "n_span": manifest.n_span,
        "dataset_kind": manifest.kind,
        "wall_time_s": result.wall_time,
    }
    save_checkpoint(args.out, model, result.stats, cfg, provenance)
    _write_history(Path(args.history or f"{args.out}.history.jsonl"), result.history)
    if args.report:
        from .report import save_training_report

        save_training_report(args.report, result.history)
    log.info("saved checkpoint %s (%.1fs)", args.out, result.wall_time)
    print(json.dumps({"out": args.out, "diverged": result.diverged,
                      "wall_time_s": result.wall_time}))
    return 0 if not result.diverged else 2


def cmd_finetune(args) -> int:
    from .data.training_data import TrainingData
    from .model.config import LoRAConfig
    from .model.lora import apply_lora, merge_lora
    from .service.checkpoint import load_checkpoint, save_checkpoint
    from .training.trainer import TrainConfig, train

    model, meta = load_checkpoint(args.base)
    strategy = {"full": "finetune_full", "attn": "finetune_attn", "lora": "finetune_lora"}[
        args.strategy
    ]
    if strategy == "finetune_lora":
        apply_lora(model, LoRAConfig(rank=args.rank))
    tc = TrainConfig.finetune(
        strategy=strategy,
        total_steps=args.steps,
        batch_size=args.batch,
        seed=args.seed,
        lambda_coef=args.lambda_coef,
    )
    data = TrainingData.from_dir(args.data)
    result = train(model, data, tc)
    if strategy == "finetune_lora":
        merge_lora(model)
    provenance = {
        **meta.provenance,
        **tc.to_json(),
        "finetuned_from": str(args.base),
        "lora_rank": args.rank if strategy == "finetune_lora" else None,
    }
    save_checkpoint(args.out, model, result.stats, meta.config, provenance)
    _write_history(Path(args.history or f"{args.out}.history.jsonl"), result.history)
    if args.report:
        from .report import save_training_report

        save_training_report(args.report, result.history)
    print(json.dumps({"out": args.out, "diverged": result.diverged}))
    return 0 if not result.diverged else 2


def cmd_eval(args) -> int:
    import torch

    from .aero.metrics import coefficient_error, field_error
    from .aero.types import AeroCoefficients
    from .data.training_data import TrainingData
    from .service.checkpoint import load_checkpoint
    from .training.crossval import cross_validate
    from .training.trainer import predict_flow

    data = TrainingData.from_dir(args.data)
    model, meta = (None, None)
    if args.predictor == "model":
        model, meta = load_checkpoint(args.ckpt)

    def metrics_on(idx: np.ndarray) -> dict:
        subset = data.subset(idx)
        if args.predictor == "copy-truth":
            pred = subset.flow.clone()
        else:
            pred = predict_flow(model, subset.mesh, subset.cond, meta.stats)
        fe = field_error(pred.numpy(), subset.flow.numpy())
        pred64 = pred.to(torch.float64)
        from .aero.integrate import integrate_torch

        geom = subset.geom.gather(subset.shape_index)
        cl, cd, cmz = integrate_torch(geom, pred64, subset.cond[:, 1].to(torch.float64))
        pred_c = [AeroCoefficients(float(a), float(b), float(c))
                  for a, b, c in zip(cl, cd, cmz)]
        true_c = [AeroCoefficients(*map(float, row)) for row in subset.coeffs]
        d_cl, d_cd, d_cmz = coefficient_error(pred_c, true_c)
        return {**fe.as_dict(), "d_cl": d_cl, "d_cd": d_cd, "d_cmz": d_cmz}

    if args.folds >= 2:
        result = cross_validate(
            data.shape_ids, args.folds, lambda tr, te, f: metrics_on(te), seed=args.seed
        )
        summary = result["mean"]
        per_fold = result["folds"]
        payload = {"folds": per_fold, "mean": result["mean"], "std": result["std"]}
    else:
        summary = metrics_on(np.arange(len(data)))
        per_fold = [summary]
        payload = summary

    print(json.dumps(payload, indent=1))
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=1))
    if args.report:
        from .report import save_eval_report

        example = None
        if args.predictor == "model":
            pred = predict_flow(model, data.mesh[:1], data.cond[:1], meta.stats)
            example = {"truth": data.flow[0, 0].numpy(), "pred": pred[0, 0].numpy()}
        save_eval_report(args.report, summary, per_fold, example)
    return 0


def cmd_pca(args) -> int:
    from .data.generate import iter_records
    from .data.pca import pca_modes

    seen = {}
    for rec in iter_records(args.data):
        seen.setdefault(rec.shape_id, rec.mesh)
    points = np.stack([seen[k] for k in sorted(seen)])
    analysis = pca_modes(points)
    print(json.dumps(analysis.to_json()["mode_counts"], indent=1))
    if args.report:
        from .report import save_pca_report

        save_pca_report(args.report, analysis.explained, analysis.mode_counts)
    return 0


def cmd_predict(args) -> int:
    import torch

    from .aero.integrate import integrate_coefficients
    from .aero.types import OperatingCondition, SurfaceFlow
    from .geometry.mesh import build_surface_mesh
    from .geometry.wing import WingShape
    from .service.app import encode_f32
    from .service.checkpoint import load_checkpoint
    from .training.trainer import predict_flow

    model, meta = load_checkpoint(args.ckpt)
    shape = WingShape.from_json(json.loads(Path(args.geometry).read_text()))
    n_chord = int(meta.provenance.get("n_chord", 256))
    n_span = int(meta.provenance.get("n_span", 129))
    mesh = build_surface_mesh(shape, n_chord, n_span)
    mesh_t = torch.as_tensor(mesh.cell_centers.astype(np.float32))[None]
    cond_t = torch.tensor([[args.mach, args.aoa]], dtype=torch.float32)
    pred = predict_flow(model, mesh_t, cond_t, meta.stats).numpy().astype(np.float32)
    oc = OperatingCondition(mach=args.mach, aoa_deg=args.aoa)
    coeff = integrate_coefficients(mesh, SurfaceFlow.from_array(pred[0].astype(np.float64)), oc)

    response = {
        "mesh_shape": list(mesh.cell_centers.shape),
        "mesh": encode_f32(mesh.cell_centers.astype(np.float32)),
        "fields": [{
            "cp": encode_f32(pred[0, 0]),
            "cf_tau": encode_f32(pred[0, 1]),
            "cf_z": encode_f32(pred[0, 2]),
        }],
        "coefficients": [coeff.to_json()],
    }
    if args.out:
        Path(args.out).write_text(json.dumps(response))
    print(json.dumps({"coefficients": coeff.to_json()}))
    return 0


def cmd_serve(args) -> int:
    from .service.app import serve

    serve(args.ckpt, port=args.port, host=args.host, ui_dir=args.ui)
    return 0


COMMANDS = {
    "gen-data": cmd_gen_data,
    "train": cmd_train,
    "finetune": cmd_finetune,
    "eval": cmd_eval,
    "pca": cmd_pca,
    "predict": cmd_predict,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("AT_LOG", "WARNING").upper())
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except WingflowError as exc:
        log.error("%s", exc)
        sys.stderr.write(f"wingflow: error: {exc}\n")
        return 2
    except Exception as exc:  # runtime failures also exit 2
        log.exception("unexpected failure")
        sys.stderr.write(f"wingflow: unexpected failure: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
