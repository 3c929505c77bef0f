"""
权重场、最后通过值、测地线与点到线问题
"""
from .field import Point, WeightField, sample_field
from .field_io import dump_field, load_field
from .passage import (
    GeodesicSummary,
    LineResult,
    PassageResult,
    floored_target,
    last_passage,
    max_displacement,
    passage_value,
    point_to_line,
    summarize_geodesic,
)

__all__ = [
    'Point',
    'WeightField',
    'sample_field',
    'dump_field',
    'load_field',
    'PassageResult',
    'GeodesicSummary',
    'LineResult',
    'last_passage',
    'passage_value',
    'point_to_line',
    'summarize_geodesic',
    'max_displacement',
    'floored_target',
]
