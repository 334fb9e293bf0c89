"""Isometry invariants and continuous metrics for periodic point sets."""

try:
    from . import _isoset as _core  # installed wheel layout
except ImportError:  # development layout: extension on PYTHONPATH
    import _isoset as _core

IsosetError = _core.IsosetError
PeriodicSet = _core.PeriodicSet
alpha_partition = _core.alpha_partition
amd = _core.amd
bridge_length = _core.bridge_length
check_lower_bound = _core.check_lower_bound
emd = _core.emd
is_isometric = _core.is_isometric
isoset_distance = _core.isoset_distance
isoset_json = _core.isoset_json
isotree_json = _core.isotree_json
min_interpoint_distance = _core.min_interpoint_distance
min_stable_radius = _core.min_stable_radius
parse_crystal = _core.parse_crystal
pdd = _core.pdd
pdd_distance = _core.pdd_distance
points_in_ball = _core.points_in_ball
scaled_invariant_distance = _core.scaled_invariant_distance
stable_radius_upper_bound = _core.stable_radius_upper_bound
symmetry_order = _core.symmetry_order

__all__ = [
    "IsosetError",
    "PeriodicSet",
    "alpha_partition",
    "amd",
    "bridge_length",
    "check_lower_bound",
    "emd",
    "is_isometric",
    "isoset_distance",
    "isoset_json",
    "isotree_json",
    "min_interpoint_distance",
    "min_stable_radius",
    "parse_crystal",
    "pdd",
    "pdd_distance",
    "points_in_ball",
    "scaled_invariant_distance",
    "stable_radius_upper_bound",
    "symmetry_order",
]
