"""Minimum convex cover heuristics for polygons with holes.

Phase 1 builds a collection of large convex polygons inside the instance
(maximal-polygon enumeration or bloated triangles); phase 2 picks a small
subset covering the instance through iterated set cover over witness points.
"""

from .arrangement import Arrangement, ArrangementTooLarge, build_arrangement
from .collect import (
    Collection,
    CollectionConfig,
    LimitExceeded,
    PointSetKind,
    bloat,
    bron_kerbosch_cliques,
    build_collection,
    enumerate_maximal_convex,
    point_set,
    visibility_adjacent,
)
from .cover import (
    AnnealParams,
    CoverInstance,
    CoverSolution,
    UncoveredWitness,
    anneal_cover,
    build_cover_instance,
    exact_cover,
    greedy_cover,
)
from .geom import (
    ConvexPolygon,
    DegenerateHull,
    InvalidPolygon,
    Location,
    Orientation,
    Point,
    PolygonWithHoles,
    Segment,
    convex_hull,
    convex_in_pwh,
    extend_segment,
    line_intersection,
    orientation,
    point,
    point_in_convex,
    point_in_pwh,
    segment_in_pwh,
)
from .model import (
    Instance,
    ParseError,
    Solution,
    VerificationReport,
    parse_instance,
    parse_solution,
    verify,
    write_solution,
)
from .pipeline import (
    PatchMode,
    PipelineConfig,
    RunReport,
    Solver,
    UncoveredRegion,
    greedy_merge_convex,
    merge_solutions,
    patch,
    relative_size,
    solve,
    uncovered_region,
)
from .triangulation import triangulate
from .witness import (
    Witness,
    WitnessOrigin,
    WitnessSet,
    arrangement_witnesses,
    covers,
    quick_vertex_witnesses,
    vertex_witnesses,
)

__version__ = "0.1.0"
