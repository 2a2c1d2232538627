"""Mondrian: layout-region detection and template inference for
multiregion CSV/spreadsheet files.

Pipeline: a file is parsed into a grid of syntactically typed cells,
segmented into rectangular elements, clustered into regions, and its
layout is described as a complete region graph. Region fingerprints and
a flooding-based graph similarity then group files into layout templates
across a corpus.
"""

from .cluster import ClusterParams, Region, detect_regions, element_distance, select_radius, sweep_radius
from .config import AppConfig, load_config
from .fingerprint import Fingerprint, fingerprint, region_similarity
from .geometry import Direction, PairClass, Rect, SpatialRelation, classify_pair, is_apparently_separated, relation
from .grid import SyntacticType, TypedGrid, parse_csv, render, type_of
from .layout import LayoutGraph, build_layout, edge_similarity, flood, layout_similarity
from .metrics import detection_curve, edit_distance, iou, multiregion_classification, region_score, vmeasure
from .pipeline import analyze_grid, analyze_path, corpus_layouts, detect_file_regions, layout_of
from .segment import Component, Element, connected_components, partition, segment_file
from .templates import RegionIndex, TemplateSet, Thresholds, infer_templates, sweep_tau_f

__version__ = "0.1.0"

__all__ = [
    "AppConfig",
    "ClusterParams",
    "Component",
    "Direction",
    "Element",
    "Fingerprint",
    "LayoutGraph",
    "PairClass",
    "Rect",
    "Region",
    "RegionIndex",
    "SpatialRelation",
    "SyntacticType",
    "TemplateSet",
    "Thresholds",
    "TypedGrid",
    "analyze_grid",
    "analyze_path",
    "build_layout",
    "classify_pair",
    "connected_components",
    "corpus_layouts",
    "detect_file_regions",
    "detect_regions",
    "detection_curve",
    "edge_similarity",
    "edit_distance",
    "element_distance",
    "fingerprint",
    "flood",
    "infer_templates",
    "iou",
    "is_apparently_separated",
    "layout_of",
    "layout_similarity",
    "load_config",
    "multiregion_classification",
    "parse_csv",
    "partition",
    "region_score",
    "region_similarity",
    "relation",
    "render",
    "segment_file",
    "select_radius",
    "sweep_radius",
    "sweep_tau_f",
    "type_of",
    "vmeasure",
]
