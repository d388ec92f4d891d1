"""Two-stage classifier for fixed-ratio mixed label sets.

Stage 1 is the mixed-signal CNN over the three strong-scheme superclasses;
stage 2 is one LSTM per superclass deciding between the two weak candidates.
The raw mixed sequence is routed to the branch chosen by stage 1; no
interference cancellation is applied before the second stage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dlmodels.amcd_io import AmcdFile
from dlmodels.archs import build_cnn_mixed, build_lstm, to_model_inputs
from dlmodels.training import TrainConfig, train_arrays


def superclass_map(class_descriptors: list[dict]) -> tuple[np.ndarray, list[list[int]]]:
    """Map class ids onto strong-scheme superclasses.

    Returns (superclass_of[class_id], branch_members[superclass] = class ids
    ordered by weak-scheme code). Requires an ordered mixed label set with one
    fixed ratio > 1 for every class.
    """
    if any("single" in c for c in class_descriptors):
        raise ValueError("hierarchical classification needs a mixed label set")
    ratios = {c["ratio"] for c in class_descriptors}
    if None in ratios or len(ratios) != 1 or next(iter(ratios)) <= 1:
        raise ValueError("hierarchical classification needs one fixed power ratio > 1")

    strong_codes = sorted({c["strong"] for c in class_descriptors})
    superclass_of = np.array([strong_codes.index(c["strong"]) for c in class_descriptors])
    branch_members = []
    for s in range(len(strong_codes)):
        members = [i for i, c in enumerate(class_descriptors) if superclass_of[i] == s]
        members.sort(key=lambda i: class_descriptors[i]["weak"])
        branch_members.append(members)
    return superclass_of, branch_members


@dataclass
class HierarchicalClassifier:
    stage1: object  # keras.Model over superclasses
    branches: list  # keras.Model per superclass, over that branch's weak candidates
    superclass_of: np.ndarray
    branch_members: list[list[int]]

    def predict(self, x: np.ndarray, batch_size: int = 256) -> np.ndarray:
        """End-to-end class ids: stage-2 decision within the stage-1 branch."""
        probs = self.stage1.predict(to_model_inputs(x, "image"), batch_size=batch_size, verbose=0)
        stage1_pred = np.argmax(probs, axis=1)
        out = np.empty(len(x), dtype=np.int64)
        for s, branch in enumerate(self.branches):
            routed = np.where(stage1_pred == s)[0]
            if len(routed) == 0:
                continue
            weak_probs = branch.predict(
                to_model_inputs(x[routed], "sequence"), batch_size=batch_size, verbose=0
            )
            members = np.array(self.branch_members[s])
            out[routed] = members[np.argmax(weak_probs, axis=1)]
        return out


def build_hierarchical(class_descriptors: list[dict], L: int = 100) -> HierarchicalClassifier:
    superclass_of, branch_members = superclass_map(class_descriptors)
    stage1 = build_cnn_mixed(n_classes=len(branch_members), L=L)
    branches = [build_lstm(n_classes=len(m), L=L) for m in branch_members]
    return HierarchicalClassifier(stage1, branches, superclass_of, branch_members)


def train_hierarchical(clf: HierarchicalClassifier, ds: AmcdFile, cfg: TrainConfig) -> list:
    """Train stage 1 on superclass labels, then each branch on its two classes.

    The class-major file layout is unchanged by relabeling, so the stored
    90/10 per-class boundaries drive both the stage-1 pool and each branch
    pool (restricted to the branch's member classes).
    """
    train_idx, val_idx = ds.train_val_indices()
    histories = [
        train_arrays(
            clf.stage1,
            ds.x[train_idx], clf.superclass_of[ds.y[train_idx]],
            ds.x[val_idx], clf.superclass_of[ds.y[val_idx]],
            cfg, layout="image",
        )
    ]

    for s, members in enumerate(clf.branch_members):
        weak_label = np.full(ds.n_classes, -1, dtype=np.int64)
        for j, c in enumerate(members):
            weak_label[c] = j
        tr = train_idx[np.isin(ds.y[train_idx], members)]
        va = val_idx[np.isin(ds.y[val_idx], members)]
        histories.append(
            train_arrays(
                clf.branches[s],
                ds.x[tr], weak_label[ds.y[tr]],
                ds.x[va], weak_label[ds.y[va]],
                cfg, layout="sequence",
            )
        )
    return histories
