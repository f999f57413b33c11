"""Curve-and-arc realizations of free-group-valued surface homomorphisms.

The heavy lifting lives in the C++ extension module; this package re-exports
its operations. Homomorphisms, tuples and diagrams travel as the same text
formats the `tangleforge` CLI reads and writes.
"""

from ._tangleforge import (
    TangleforgeError,
    TangleforgeParseError,
    associated_closed,
    cyclic_reduce,
    delete_letters,
    euler_characteristic,
    exponent_sum,
    fold_words,
    generates_full,
    is_conjugate,
    is_spherical,
    link_components,
    move,
    move_surface_automorphism,
    move_target_automorphism,
    pushout,
    read_off,
    realize,
    reduce_word,
    render_svg,
    roundtrip,
    substitute,
    surface_components,
    verify_bounding,
    verify_hom,
    verify_membership,
)

__all__ = [
    "TangleforgeError",
    "TangleforgeParseError",
    "associated_closed",
    "cyclic_reduce",
    "delete_letters",
    "euler_characteristic",
    "exponent_sum",
    "fold_words",
    "generates_full",
    "is_conjugate",
    "is_spherical",
    "link_components",
    "move",
    "move_surface_automorphism",
    "move_target_automorphism",
    "pushout",
    "read_off",
    "realize",
    "reduce_word",
    "render_svg",
    "roundtrip",
    "substitute",
    "surface_components",
    "verify_bounding",
    "verify_hom",
    "verify_membership",
]

__version__ = "0.1.0"
