"""Experiment configuration, stratified splits, learning curves and the
end-to-end pipeline (generate, solve, label, learn, report).

All randomness comes from the root seed through named streams, so a
configuration reproduces the same files regardless of worker count.
"""

from __future__ import annotations

import csv
import json
import logging
import time
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .dds.table import ContractSet, contract_set_preset, score_tables, write_score_tables
from .dealgen import PRESETS, Constraint, build_sample_files, load_rule_file, write_sample_files
from .labeler import build_dataset, label_tables, write_facts
from .learn.aleph import SearchParams, induce, induce_max
from .learn.background import Facts
from .learn.bias import LanguageBias, load_bias, preset_bias
from .learn.expert import expert_model_M
from .learn.metrics import Model, evaluate
from .learn.tilde import Tree, TreeParams, learn_tree
from .records import Dataset, read_dataset_csv, write_dataset_csv
from .synthetic import planted_dataset

log = logging.getLogger(__name__)

SCHEMA_VERSION = "v1"
LEARNERS = ("induce", "induce_max", "tree", "expert_M")
DEFAULT_K = tuple(range(9))
REPORT_COLUMNS = ("execution", "k", "learner", "accuracy", "complexity", "seconds")

# named random streams below the root seed
STREAM_SPLIT = 1
STREAM_SUBSET = 2


class ConfigError(ValueError):
    pass


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


def subset_size(k: int) -> int:
    return 10 + 100 * k


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    executions: int = 50
    test_size: int = 140
    k_values: tuple[int, ...] | None = None  # None: 0..8 as far as the training set allows
    language: str = "L2"
    learners: tuple[str, ...] = ("induce_max",)
    bias: str | None = None  # path to a bias file; overrides ``language``
    # data
    rules: str = "context"  # preset name or rule file path
    n_south: int = 1000
    boards: int = 1000
    dataset: str | None = None  # existing dataset.csv; skips generation and labeling
    synthetic: dict | None = None  # {"n": ..., "seed": ...}: planted-rule data instead
    # labeling and scoring
    threshold: float = 30
    contract_set: str | dict = "all"
    backend: str = "auto"
    workers: int = 1
    # learners
    beam_width: int = 64
    min_pos: int = 2
    noise: int = 0
    max_clause_length: int | None = None
    min_leaf: int = 2
    # output
    out: str = "out"
    timing: bool = True  # False writes 0 seconds so reruns are byte-identical

    def __post_init__(self) -> None:
        if self.k_values is not None:
            object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        if isinstance(self.learners, str):
            object.__setattr__(self, "learners", (self.learners,))
        object.__setattr__(self, "learners", tuple(self.learners))
        self.validate()

    def validate(self) -> None:
        for name in self.learners:
            if name not in LEARNERS:
                raise ConfigError(f"unknown learner {name!r}; choose from {', '.join(LEARNERS)}")
        if not self.learners:
            raise ConfigError("no learner given")
        if self.executions < 1:
            raise ConfigError("executions must be >= 1")
        if self.test_size < 1:
            raise ConfigError("test_size must be >= 1")
        if self.k_values is not None and any(k < 0 for k in self.k_values):
            raise ConfigError("k values must be >= 0")
        if self.n_south < 1 or self.boards < 1:
            raise ConfigError("n_south and boards must be >= 1")
        if self.threshold < 0:
            raise ConfigError("threshold must be >= 0")
        try:
            self.contracts()
        except ValueError as e:
            raise ConfigError(str(e)) from None

    # -- derived pieces --------------------------------------------------

    def contracts(self) -> ContractSet:
        if isinstance(self.contract_set, str):
            return contract_set_preset(self.contract_set)
        return ContractSet.from_json(self.contract_set)

    def language_bias(self) -> LanguageBias:
        try:
            return load_bias(self.bias) if self.bias else preset_bias(self.language)
        except (OSError, ValueError) as e:
            raise ConfigError(f"bad language bias: {e}") from None

    def constraint(self) -> Constraint:
        if self.rules in PRESETS:
            return PRESETS[self.rules]
        path = Path(self.rules)
        if not path.exists():
            raise ConfigError(f"rules {self.rules!r} is neither a preset nor a file")
        try:
            return load_rule_file(path).constraint
        except (OSError, ValueError, KeyError) as e:
            raise ConfigError(f"bad rule file {path}: {e}") from None

    def search_params(self) -> SearchParams:
        return SearchParams(self.beam_width, self.max_clause_length, self.min_pos, self.noise)

    def ks_for(self, train_size: int) -> tuple[int, ...]:
        """The curve points. By default, every k in 0..8 whose subset fits the
        training set; explicit k values are kept and their subsets capped."""
        if self.k_values is None:
            return tuple(k for k in DEFAULT_K if subset_size(k) <= train_size) or (0,)
        return self.k_values

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        doc = {"version": SCHEMA_VERSION}
        for f in fields(self):
            v = getattr(self, f.name)
            doc[f.name] = list(v) if isinstance(v, tuple) else v
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "ExperimentConfig":
        if doc.get("version") != SCHEMA_VERSION:
            raise ConfigError(f"unsupported config version {doc.get('version')!r}")
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known - {"version"}
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "learner" in doc:
            raise ConfigError("use 'learners' (a list)")
        try:
            return cls(**{k: v for k, v in doc.items() if k != "version"})
        except TypeError as e:
            raise ConfigError(str(e)) from None

    def with_overrides(self, **kw) -> "ExperimentConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    return ExperimentConfig.from_json(doc)


# ---------------------------------------------------------------------------
# splits and curves


def split(dataset: Dataset, seed: int, test_size: int) -> tuple[np.ndarray, np.ndarray]:
    """Stratified (train, test) index arrays; the test bid count is the
    dataset's bid ratio times ``test_size``, rounded."""
    n = len(dataset)
    if n <= test_size:
        raise ConfigError(f"dataset has {n} examples, not more than test_size={test_size}")
    labels = np.array([e.is_positive for e in dataset], dtype=bool)
    bid, pas = np.flatnonzero(labels), np.flatnonzero(~labels)
    n_bid = int(round(test_size * len(bid) / n))
    n_bid = min(n_bid, len(bid))
    n_pass = test_size - n_bid
    if n_pass > len(pas):
        n_pass, n_bid = len(pas), test_size - len(pas)
    rng = np.random.default_rng([seed, STREAM_SPLIT])
    test = np.sort(np.concatenate([rng.permutation(bid)[:n_bid], rng.permutation(pas)[:n_pass]]))
    mask = np.ones(n, dtype=bool)
    mask[test] = False
    return np.flatnonzero(mask), test


def nested_subsets(train: np.ndarray, ks: Sequence[int], seed: int) -> dict[int, np.ndarray]:
    """T_k = the first n_k examples of one seeded shuffle of ``train``
    (all of them when n_k exceeds the training set)."""
    order = np.random.default_rng([seed, STREAM_SUBSET]).permutation(train)
    for k in ks:
        if subset_size(k) > len(train):
            log.warning("k=%d asks for %d examples; using all %d", k, subset_size(k), len(train))
    return {k: order[: subset_size(k)] for k in ks}


def fit(learner: str, data: Dataset, bias: LanguageBias, config: ExperimentConfig) -> Model:
    if learner == "induce":
        return induce(data, bias, config.search_params())
    if learner == "induce_max":
        return induce_max(data, bias, config.search_params())
    if learner == "tree":
        return learn_tree(data, bias, TreeParams(min_leaf=config.min_leaf))
    if learner == "expert_M":
        return expert_model_M()
    raise ConfigError(f"unknown learner {learner!r}")


def model_text(model: Model) -> str:
    return model.to_text()


@dataclass(frozen=True)
class RunRecord:
    execution: int
    k: int
    learner: str
    accuracy: float
    complexity: int
    seconds: float


@dataclass
class RunReport:
    records: list[RunRecord] = field(default_factory=list)
    tests: dict[int, np.ndarray] = field(default_factory=dict)
    subsets: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)
    models: dict[tuple[int, int, str], Model] = field(default_factory=dict)

    def means(self) -> dict[tuple[str, int], tuple[float, float]]:
        """(learner, k) -> (mean accuracy, mean complexity)."""
        groups: dict[tuple[str, int], list[RunRecord]] = {}
        for r in self.records:
            groups.setdefault((r.learner, r.k), []).append(r)
        return {
            key: (float(np.mean([r.accuracy for r in rs])), float(np.mean([r.complexity for r in rs])))
            for key, rs in sorted(groups.items())
        }

    def write_csv(self, path: str | Path, timing: bool = True) -> None:
        with open(path, "w", newline="", encoding="ascii") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(REPORT_COLUMNS)
            for r in self.records:
                secs = r.seconds if timing else 0.0
                w.writerow([r.execution, r.k, r.learner, f"{r.accuracy:.6f}", r.complexity, f"{secs:.3f}"])


def learning_curve(config: ExperimentConfig, dataset: Dataset,
                   progress: Callable[[RunRecord], None] | None = None) -> RunReport:
    """For every execution: a stratified split, nested training subsets,
    one fit per (k, learner) and its accuracy on the held-out test set."""
    n = len(dataset)
    if n <= config.test_size:
        raise ConfigError(f"dataset has {n} examples, not more than test_size={config.test_size}")
    ks = config.ks_for(n - config.test_size)
    bias = config.language_bias()
    report = RunReport()
    for i in range(config.executions):
        exec_seed = int(np.random.SeedSequence([config.seed, i]).generate_state(1)[0])
        train, test = split(dataset, exec_seed, config.test_size)
        report.tests[i] = test
        test_facts = Facts.from_examples([dataset[j] for j in test])
        subsets = nested_subsets(train, ks, exec_seed)
        for k in ks:
            report.subsets[(i, k)] = subsets[k]
            data = dataset.subset(subsets[k])
            for learner in config.learners:
                t0 = time.perf_counter()
                model = fit(learner, data, bias, config)
                secs = time.perf_counter() - t0
                m = evaluate(model, test_facts)
                rec = RunRecord(i, k, learner, m.fidelity, m.complexity, secs)
                report.records.append(rec)
                report.models[(i, k, learner)] = model
                if progress:
                    progress(rec)
    return report


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class PipelineResult:
    out: Path
    dataset: Dataset
    report: RunReport
    label_counts: dict[str, int]


def _stage(name: str):
    def wrap(fn):
        def run(*a, **kw):
            log.info("stage %s", name)
            try:
                return fn(*a, **kw)
            except (ConfigError, StageError):
                raise
            except Exception as e:  # tagged so the CLI can report where it broke
                raise StageError(name, e) from e
        return run
    return wrap


@_stage("generate")
def stage_generate(config: ExperimentConfig, out: Path):
    files = build_sample_files(config.constraint(), config.n_south, config.boards, config.seed,
                               workers=config.workers)
    write_sample_files(out / "samples", files)
    return files


@_stage("dds")
def stage_dds(config: ExperimentConfig, files, out: Path):
    contracts = config.contracts()
    (out / "tables").mkdir(parents=True, exist_ok=True)
    all_tables = []
    for f in files:
        tables = score_tables(list(f.boards), contracts, backend=config.backend, workers=config.workers)
        write_score_tables(out / "tables" / f"{f.name}.csv", tables)
        all_tables.append(tables)
    return all_tables


@_stage("label")
def stage_label(config: ExperimentConfig, files, tables, out: Path):
    dataset, summary = build_dataset(files, tables, config.threshold)
    with open(out / "labels.csv", "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["source_file", "label", "s_def", "s_oracle", "best_contract", "best_mean"])
        for f, ts in zip(files, tables):
            d = label_tables(ts, config.threshold)
            w.writerow([f.name, d.label.value, f"{d.s_def:.4f}", f"{d.s_oracle:.4f}",
                        d.best_contract, f"{d.best_mean:.4f}"])
    return dataset, summary.as_dict()


@_stage("curve")
def stage_curve(config: ExperimentConfig, dataset: Dataset, out: Path) -> RunReport:
    report = learning_curve(config, dataset)
    report.write_csv(out / "report.csv", timing=config.timing)
    models = out / "models"
    models.mkdir(exist_ok=True)
    for (i, k, learner), model in report.models.items():
        suffix = "tree" if isinstance(model, Tree) else "pl"
        (models / f"{learner}_e{i}_k{k}.{suffix}").write_text(model_text(model), encoding="ascii")
    return report


def load_dataset(config: ExperimentConfig) -> Dataset | None:
    if config.synthetic is not None:
        params = dict(config.synthetic)
        return planted_dataset(int(params.get("n", 1000)), int(params.get("seed", config.seed)))
    if config.dataset is not None:
        try:
            return read_dataset_csv(config.dataset)
        except (OSError, KeyError, ValueError) as e:
            raise ConfigError(f"cannot read dataset {config.dataset}: {e}") from None
    return None


def run_pipeline(config: ExperimentConfig) -> PipelineResult:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    config.language_bias()  # fail on a bad bias before any expensive work
    doc = {k: v for k, v in config.to_json().items() if k != "out"}
    (out / "config.json").write_text(json.dumps(doc, indent=2) + "\n")
    dataset = load_dataset(config)
    counts: dict[str, int] = {}
    if dataset is None:
        config.constraint()
        files = stage_generate(config, out)
        tables = stage_dds(config, files, out)
        dataset, counts = stage_label(config, files, tables, out)
    write_dataset_csv(out / "dataset.csv", dataset)
    write_facts(out / "facts.pl", dataset)
    if len(dataset) <= config.test_size:
        raise ConfigError(f"dataset has {len(dataset)} examples, not more than test_size={config.test_size}")
    report = stage_curve(config, dataset, out)
    summary = {
        "examples": len(dataset),
        "bid_ratio": round(dataset.bid_ratio, 6),
        "labels": counts,
        "mean": [
            {"learner": lr, "k": k, "accuracy": round(a, 6), "complexity": round(c, 6)}
            for (lr, k), (a, c) in report.means().items()
        ],
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return PipelineResult(out, dataset, report, counts)
