"""Fully dynamic approximate maximum-weight matching."""

from .graph import (DuplicateEdgeError, EdgeRegistry, GraphError, InvalidWeightError,
                    SelfLoopError, UnknownEdgeError, VertexRangeError, edge_key, level_of)
from .harness import (Delete, apply_event, Insert, Query, RunStats, StreamError, StreamParseError,
                      format_jsonl, format_stream, format_tsv, generate_stream, parse_stream, run)
from .hierarchy import DynamicMatching, InvariantReport, UpdateSummary, check_invariants
from .levels import DeltaReport, LevelMatcher, SurrogateLevelMatcher
from .oracle import (ExactMWMResult, MappingAudit, OracleSizeError, RatioReport, audit_mapping,
                     brute_force_mwm, enumerate_mwm, ratio_report)
from .rounding import (RoundingConfig, expected_rounding_factor, optimize_rounded_ratio,
                       plain_ratio, rounded_ratio, rounded_weight)

__version__ = "0.1.0"
