"""Command line entry point: ``bridge-elicit <command>``.

Exit codes: 0 success, 2 configuration or usage error, 3 stage failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cards import ParseError, Seat, Strain, parse_deal, parse_position, read_deals
from .dds.table import (
    CONTRACT_SET_PRESETS,
    contract_set_preset,
    read_score_tables,
    resolve_backend,
    score_tables,
    trick_tables,
    write_score_tables,
)
from .dds.solver import MalformedPosition, solve
from .dealgen import AcceptanceRateTooLow, read_sample_dir, write_sample_files
from .experiment import (
    LEARNERS,
    ConfigError,
    ExperimentConfig,
    StageError,
    fit,
    learning_curve,
    load_config,
    load_dataset,
    run_pipeline,
)
from .labeler import LabelingError, build_dataset, write_facts
from .learn.metrics import evaluate
from .records import write_dataset_csv

EXIT_OK, EXIT_CONFIG, EXIT_STAGE = 0, 2, 3


def _config(args) -> ExperimentConfig:
    base = load_config(args.config) if getattr(args, "config", None) else ExperimentConfig()
    learners = tuple(args.learner.split(",")) if getattr(args, "learner", None) else None
    try:
        return base.with_overrides(
            seed=getattr(args, "seed", None),
            language=getattr(args, "language", None),
            learners=learners,
            out=getattr(args, "out", None),
        )
    except TypeError as e:
        raise ConfigError(str(e)) from None


# -- commands ----------------------------------------------------------------


def cmd_generate(args) -> int:
    from .dealgen import build_sample_files

    cfg = _config(args).with_overrides(n_south=args.n_south, boards=args.boards, rules=args.rules,
                                       workers=args.workers)
    files = build_sample_files(cfg.constraint(), cfg.n_south, cfg.boards, cfg.seed, workers=cfg.workers)
    paths = write_sample_files(Path(cfg.out) / "samples", files)
    print(f"wrote {len(paths)} sample files to {Path(cfg.out) / 'samples'}")
    return EXIT_OK


def cmd_dds(args) -> int:
    _, hands = parse_position(args.deal)
    strain = Strain.from_text(args.strain)
    declarer = Seat.from_text(args.declarer)
    full = all(len(h) == 13 for h in hands)
    if full and resolve_backend(args.backend) == "endplay":
        tricks = trick_tables([parse_deal(args.deal)], backend="endplay")[0][(strain, declarer)]
    else:
        tricks = solve(hands, strain, declarer)
    print(tricks)
    return EXIT_OK


def cmd_score_table(args) -> int:
    deals = read_deals(args.deals)
    tables = score_tables(deals, contract_set_preset(args.contract_set), backend=args.backend,
                          workers=args.workers)
    write_score_tables(args.out, tables)
    print(f"wrote {sum(len(t) for t in tables)} rows for {len(deals)} deals to {args.out}")
    return EXIT_OK


def cmd_label(args) -> int:
    files = read_sample_dir(args.samples)
    if not files:
        raise ConfigError(f"no sample files in {args.samples}")
    tables = [read_score_tables(Path(args.tables) / f"{f.name}.csv", f.boards) for f in files]
    dataset, summary = build_dataset(files, tables, args.threshold)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_dataset_csv(out / "dataset.csv", dataset)
    write_facts(out / "facts.pl", dataset)
    print(json.dumps({"labels": summary.as_dict(), "bid_ratio": round(summary.bid_ratio, 6)}))
    return EXIT_OK


def cmd_learn(args) -> int:
    cfg = _config(args)
    if args.dataset:
        cfg = cfg.with_overrides(dataset=args.dataset)
    dataset = load_dataset(cfg)
    if dataset is None:
        raise ConfigError("learn needs --dataset or a config naming a dataset")
    if len(cfg.learners) != 1:
        raise ConfigError("learn takes exactly one learner")
    model = fit(cfg.learners[0], dataset, cfg.language_bias(), cfg)
    text = model.to_text()
    if args.model_out:
        Path(args.model_out).write_text(text, encoding="ascii")
    sys.stdout.write(text)
    m = evaluate(model, dataset)
    print(f"% training fidelity {m.fidelity:.4f}, complexity {m.complexity}, overlap {m.overlap:.4f}",
          file=sys.stderr)
    return EXIT_OK


def cmd_curve(args) -> int:
    cfg = _config(args)
    if args.dataset:
        cfg = cfg.with_overrides(dataset=args.dataset)
    dataset = load_dataset(cfg)
    if dataset is None:
        raise ConfigError("curve needs --dataset or a config naming a dataset")
    try:
        report = learning_curve(cfg, dataset)
    except ConfigError:
        raise
    except Exception as e:
        raise StageError("curve", e) from e
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    report.write_csv(out / "report.csv", timing=cfg.timing)
    for (learner, k), (acc, cx) in report.means().items():
        print(f"{learner:10s} k={k} accuracy={acc:.4f} complexity={cx:.2f}")
    return EXIT_OK


def cmd_pipeline(args) -> int:
    result = run_pipeline(_config(args))
    print(f"{len(result.dataset)} labeled examples, bid ratio {result.dataset.bid_ratio:.3f}")
    for (learner, k), (acc, cx) in result.report.means().items():
        print(f"{learner:10s} k={k} accuracy={acc:.4f} complexity={cx:.2f}")
    print(f"outputs in {result.out}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, learner: bool = False) -> None:
    p.add_argument("--config", help="JSON experiment config (version v1)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory")
    if learner:
        p.add_argument("--language", choices=("L0", "L1", "L2"))
        p.add_argument("--learner", help="comma-separated: " + ", ".join(LEARNERS))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bridge-elicit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate sample files (fixed South, resampled boards)")
    _common(p)
    p.add_argument("--rules", help="preset name or rule file")
    p.add_argument("--n-south", type=int)
    p.add_argument("--boards", type=int)
    p.add_argument("--workers", type=int)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("dds", help="double-dummy tricks for one deal")
    p.add_argument("--deal", required=True, help="'<vul> N:.. E:.. S:.. W:..'")
    p.add_argument("--strain", required=True)
    p.add_argument("--declarer", required=True)
    p.add_argument("--backend", default="auto", choices=("auto", "native", "endplay"))
    p.set_defaults(fn=cmd_dds)

    p = sub.add_parser("score-table", help="score tables for a deal file")
    p.add_argument("--deals", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--contract-set", default="all", choices=sorted(CONTRACT_SET_PRESETS))
    p.add_argument("--backend", default="auto", choices=("auto", "native", "endplay"))
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_score_table)

    p = sub.add_parser("label", help="label sample files from their score tables")
    p.add_argument("--samples", required=True, help="directory of south_*.deals files")
    p.add_argument("--tables", required=True, help="directory of <file>.csv score tables")
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=float, default=30)
    p.set_defaults(fn=cmd_label)

    p = sub.add_parser("learn", help="fit one learner and print the model")
    _common(p, learner=True)
    p.add_argument("--dataset", help="dataset CSV")
    p.add_argument("--model-out", help="also write the model text here")
    p.set_defaults(fn=cmd_learn)

    p = sub.add_parser("curve", help="learning curve over stratified splits")
    _common(p, learner=True)
    p.add_argument("--dataset", help="dataset CSV")
    p.set_defaults(fn=cmd_curve)

    p = sub.add_parser("pipeline", help="generate, solve, label, learn and report")
    _common(p, learner=True)
    p.set_defaults(fn=cmd_pipeline)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except StageError as e:
        print(f"error in stage {e.stage}: {e.cause}", file=sys.stderr)
        return EXIT_STAGE
    except (OSError, MalformedPosition, LabelingError, AcceptanceRateTooLow, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_STAGE
    except (ParseError, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_CONFIG

if __name__ == "__main__":
    sys.exit(main())
