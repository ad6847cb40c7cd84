"""Spread codes in extension-field representation: construction, decoding, verification."""

from spreadec.decoder import DecodeReport, decode_basic, decode_improved, oracle_decode
from spreadec.field_tower import FieldTower, TowerSpec, build_tower, find_primitive_poly
from spreadec.matspace import Matrix, Subspace, make_rng, subspace_distance
from spreadec.spread_code import Codeword, Gamma, SpreadParams, encode, enumerate_codewords, gamma_of_vector, make_params

__all__ = [
    "Codeword",
    "DecodeReport",
    "FieldTower",
    "Gamma",
    "Matrix",
    "SpreadParams",
    "Subspace",
    "TowerSpec",
    "build_tower",
    "decode_basic",
    "decode_improved",
    "encode",
    "enumerate_codewords",
    "find_primitive_poly",
    "gamma_of_vector",
    "make_params",
    "make_rng",
    "oracle_decode",
    "subspace_distance",
]
