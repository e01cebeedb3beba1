"""L1 geodesic diameter and center of simple polygons, in exact arithmetic."""
from .balls import (GeodesicBall, ball_contains, balls_intersect, geodesic_ball,
                    pconvexity_witness, triple_common_point)
from .center import (CenterResult, ChordInterval, DegeneratePoint, center, center_chord,
                     vertex_interval)
from .diameter import (ChainPair, DiameterResult, decompose_chains, diameter, farthest_vertex,
                       restricted_farthest_neighbors, smawk_row_maxima)
from .generate import random_polygon
from .geodesic import (Chord, ChordProfile, GeodesicPath, ShortestPathMap, ShortestPathTree,
                       chord_profile, geodesic_distance, path_midpoint, shortest_path,
                       shortest_path_map, shortest_path_tree, spm_query)
from .geom import (DegenerateArea, Location, NotSimple, Orientation, Point, PointOutsidePolygon,
                   Polygon, TooFewVertices, Where, l1_distance, locate_point, orientation,
                   ray_shoot, validate_polygon)
from .oracle import (check_totally_monotone, oracle_center_check, oracle_diameter,
                     oracle_distance, oracle_eccentricity)
from .triangulate import Triangulation, triangulate

__version__ = "0.1.0"
