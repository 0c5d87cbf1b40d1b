"""A small learning curve on synthetic data, the way the full protocol runs it:
stratified test sets, nested training subsets of 10 + 100k hands, one fit per
learner and subset. The expert model is the flat reference line.

Run: python3 demos/03_learning_curve.py
"""

from bridge_elicit.experiment import ExperimentConfig, learning_curve
from bridge_elicit.synthetic import planted_dataset

cfg = ExperimentConfig(executions=3, test_size=140, learners=("tree", "induce", "expert_M"), seed=1)
report = learning_curve(cfg, planted_dataset(1000, 5))
print(f"{'learner':10s} {'k':>2s} {'n_k':>4s} {'accuracy':>9s} {'size':>6s}")
for (learner, k), (acc, cx) in report.means().items():
    print(f"{learner:10s} {k:2d} {10 + 100 * k:4d} {acc:9.3f} {cx:6.1f}")
