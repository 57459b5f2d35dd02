"""Tilings of Elnitsky polygons for Coxeter groups of types A and D, and the
subtilings cut out by admissible partitions (B and H3 inside A and D)."""

from .config import DEFAULT, Config, load_config, parse_config
from .coxeter import (
    CoxeterSystem,
    CoxeterType,
    GroupElement,
    build_system,
    longest_element,
    parabolic_longest,
)
from .embeddings import (
    AdmissiblePartition,
    embed_word,
    expand,
    induced_relation_set,
    parse_sigma_consistent,
    partition_from_blocks,
    table_row,
    tabulated_relation_set,
    verify_induced_matrix,
    x_length,
)
from .render import RenderConfig, to_svg
from .tilings import (
    EdgeBasis,
    Tile,
    TileKind,
    Tiling,
    Window,
    basis_for,
    coverage,
    edge_basis_A,
    edge_basis_D,
    mirror_A,
    outline,
    realize,
    subtiling,
    tile_word,
    verify_bijection,
)
from .words import (
    RelationSet,
    classes_of_words,
    count_reduced,
    elnitsky_relations,
    enumerate_reduced,
    equivalence_classes,
    is_reduced,
    parse_word,
)

__version__ = "0.1.0"
