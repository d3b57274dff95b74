"""Staircase global routing for block-level floorplans."""

import json

from ._msroute import (
    Floorplan,
    InputError,
    InvariantError,
    ace,
    capacity_at,
    generate,
    interior_junction_count,
    load,
    msc_cut_count,
    parse,
    presets,
    route_json,
    validate,
    wace4,
)


def route(fp, config="FCN", layers=8, layer_model="reserved-hv", balance="number", capacity_scale=1.0,
          include_runtime=True):
    """Route every net of `fp` and return the report as a dict."""
    return json.loads(route_json(fp, config, layers, layer_model, balance, capacity_scale, include_runtime))


__all__ = [
    "Floorplan", "InputError", "InvariantError", "ace", "capacity_at", "generate", "interior_junction_count",
    "load", "msc_cut_count", "parse", "presets", "route", "route_json", "validate", "wace4",
]
