from src.mating.chords import LOWER, UPPER, ChordSystem, tree_chords, assert_non_crossing
from src.mating.planar_map import PlanarMap, mate, euler_genus, rotation_lists
