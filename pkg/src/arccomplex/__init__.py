"""Arc complexes of coloured convex and once-punctured polygons.

The permitted subcomplex keeps the arcs with at least one blue endpoint.
This package enumerates these complexes, checks that they are
pseudo-manifolds, builds and verifies shelling orders, and reports whether
each complex is a closed ball or a sphere.
"""

from .decorated import (
    DecoratedArc,
    DecoratedKind,
    DecoratedPolygon,
    decorated_arcs,
    decorated_complex,
    parse_decorated,
    parse_decorated_arc,
    to_bicoloured,
    translate_arc,
    translate_back,
    verify_isomorphism,
)
from .polygon import (
    Arc,
    ArcKind,
    Colour,
    PolygonSpec,
    Triangulation,
    arcs_cross,
    colourings,
    cut_along_loop,
    enumerate_arcs,
    enumerate_triangulations,
    extend_to_triangulation,
    fan_triangulation,
    flip,
    is_permitted,
    lift,
    maximal_compatible_sets,
    parse_arc,
    parse_arcs,
    parse_spec,
)
from .render import render_svg
from .shelling import (
    BallCertificate,
    ShellingCheck,
    ShellingOrder,
    certify,
    check_wilson_property,
    dumps_order,
    flip_path_to_fan,
    greedy_shelling,
    join_shelling,
    loads_order,
    shell_coloured_convex,
    shell_coloured_punctured,
    verify_shelling,
)
from .simplicial import (
    ArcComplex,
    boundary_complex,
    build_complex,
    classify_codim1,
    dual_graph,
    dual_graph_dot,
    dumps_complex,
    euler_characteristic,
    f_vector,
    flip_graph_stats,
    is_pseudomanifold_with_boundary,
    loads_complex,
    strongly_connected,
)
from .sweep import SweepConfig, SweepRow, run_sweep

__version__ = "0.1.0"
