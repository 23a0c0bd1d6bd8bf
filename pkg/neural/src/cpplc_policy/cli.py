"""Command line: train a policy checkpoint, or decode an instance file into
a CPPLC-SOL solution that the solver toolchain's `cost` command can verify."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import torch

from .costs import dp_directions_local
from .instances import read_instance, write_solution
from .model import PolicyConfig
from .rollout import rollout
from .train import TrainConfig, load_checkpoint, save_checkpoint, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpplc-policy")
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("train", help="train a policy and save a checkpoint")
    tr.add_argument("--epochs", type=int, default=5)
    tr.add_argument("--steps", type=int, default=40)
    tr.add_argument("--batch", type=int, default=32)
    tr.add_argument("--m-range", default="6:10", help="LO:HI edge counts")
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--lr", type=float, default=1e-4)
    tr.add_argument("--hidden", type=int, default=128)
    tr.add_argument("--layers", type=int, default=3)
    tr.add_argument("--heads", type=int, default=8)
    tr.add_argument("--ff", type=int, default=512)
    tr.add_argument("--val-size", type=int, default=16)
    tr.add_argument("--out", required=True)

    inf = sub.add_parser("infer", help="decode one instance into a solution file")
    inf.add_argument("--ckpt", required=True)
    inf.add_argument("--instance", required=True)
    inf.add_argument("--mode", choices=("greedy", "sample"), default="greedy")
    inf.add_argument("--seed", type=int, default=0)
    inf.add_argument("--out", required=True)
    return parser


def _cmd_train(args) -> int:
    lo, hi = (int(x) for x in args.m_range.split(":"))
    config = TrainConfig(
        policy=PolicyConfig(
            hidden=args.hidden, layers=args.layers, heads=args.heads, ff=args.ff
        ),
        epochs=args.epochs,
        steps=args.steps,
        batch=args.batch,
        lr=args.lr,
        m_lo=lo,
        m_hi=hi,
        seed=args.seed,
        val_size=args.val_size,
    )
    model, log = train(config)
    save_checkpoint(args.out, model, config, log)
    for entry in log:
        print(
            json.dumps(
                {
                    "epoch": entry.epoch,
                    "sample_cost": round(entry.mean_sample_cost, 3),
                    "val_greedy_cost": round(entry.val_greedy_cost, 3),
                    "baseline_accepted": entry.baseline_accepted,
                }
            )
        )
    return 0


def _cmd_infer(args) -> int:
    model = load_checkpoint(args.ckpt)
    instance = read_instance(args.instance)
    generator = torch.Generator().manual_seed(args.seed)
    order, logp = rollout(model, instance, mode=args.mode, generator=generator)
    cost, dirs = dp_directions_local(instance, order)
    write_solution(args.out, order, dirs, cost)
    print(json.dumps({"cost": round(cost, 6), "logprob": round(logp, 6)}))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            return _cmd_train(args)
        return _cmd_infer(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
