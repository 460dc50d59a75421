"""Door detection toolkit: occupancy maps, navigation poses, detection metrics and topology."""

from ._doorkit import (
    Box,
    CellState,
    Dataset,
    Detection,
    DoorStatus,
    Error,
    GridMap,
    GroundTruthBox,
    ImageInfo,
    NotFoundError,
    SchemaError,
    average_precision,
    confidence_sweep,
    door_verdicts,
    extract_poses,
    iou,
    load_dataset,
    load_map,
    map_score,
    nav_graph,
    opi,
    opi_image,
    propose_boxes,
    save_dataset,
    save_map,
)

__all__ = [
    "Box",
    "CellState",
    "Dataset",
    "Detection",
    "DoorStatus",
    "Error",
    "GridMap",
    "GroundTruthBox",
    "ImageInfo",
    "NotFoundError",
    "SchemaError",
    "average_precision",
    "confidence_sweep",
    "door_verdicts",
    "extract_poses",
    "iou",
    "load_dataset",
    "load_map",
    "map_score",
    "nav_graph",
    "opi",
    "opi_image",
    "propose_boxes",
    "save_dataset",
    "save_map",
]
