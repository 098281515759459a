"""Exact representation dimensions of finite p-groups."""

from .catalog import build, exceptional128, parse_spec, theorem_table, witness_for
from .groups import GroupTable
from .rdim import f_p, min_faithful_dim, min_faithful_dim_bruteforce, rdim_upper_bound
from .reptheory import CharacterTable, character_table

__all__ = [
    "CharacterTable",
    "GroupTable",
    "build",
    "character_table",
    "exceptional128",
    "f_p",
    "min_faithful_dim",
    "min_faithful_dim_bruteforce",
    "parse_spec",
    "rdim_upper_bound",
    "theorem_table",
    "witness_for",
]
