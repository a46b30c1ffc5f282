"""Constructive graceful tree labelings with an independent brute-force oracle."""

from .errors import (
    ContractViolationError,
    DefectError,
    GracetreeError,
    InvalidInputError,
    ReplayFailureError,
    SearchRefusedError,
    TransferRejectedError,
)
from .labelings import (
    LabelingClassification,
    bipartition_and_depth_sets,
    classify_labeling,
    complement_labeling,
    edge_labels,
    inverse_alpha,
    path_depth_set,
)
from .trees import (
    Tree,
    TreeProfile,
    make_tree,
    path_tree,
    profile_tree,
    star_tree,
    tree_from_parens,
    tree_from_text,
    tree_to_text,
)

__version__ = "0.1.0"

__all__ = [
    "ContractViolationError",
    "DefectError",
    "GracetreeError",
    "InvalidInputError",
    "LabelingClassification",
    "ReplayFailureError",
    "SearchRefusedError",
    "TransferRejectedError",
    "Tree",
    "TreeProfile",
    "bipartition_and_depth_sets",
    "classify_labeling",
    "complement_labeling",
    "edge_labels",
    "inverse_alpha",
    "make_tree",
    "path_depth_set",
    "path_tree",
    "profile_tree",
    "star_tree",
    "tree_from_parens",
    "tree_from_text",
    "tree_to_text",
]
