//! Reference values the computed model is checked against.

/// Intersection matrix of the 20 basis lines.
pub const REFERENCE_GRAM: [[i64; 20]; 20] = [
    [-2, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [1, -2, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0],
    [1, 1, -2, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
    [1, 1, 1, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, -2, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 1, -2, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 1, 1, -2, 0, 0, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0],
    [1, 0, 0, 0, 1, 0, 0, -2, 1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 1, -2, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 1, 1, -2, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 1, -2, 1, 1, 1, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, -2, 1, 0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, -2, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 1, 0, 0, -2, 1, 1, 0, 1, 0, 1],
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, -2, 1, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1, -2, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, -2, 1, 1, 1],
    [0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 1, -2, 1, 0],
    [0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 1, -2, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 0, -2],
];

/// Dual representations `s∨ = s·G` of the two discriminant generators.
pub const DISC_GENERATORS_DUAL: [[i64; 20]; 2] = [
    [3, 1, 2, 2, 1, 3, 2, 2, 2, 2, 2, 3, 1, 2, 1, 2, 2, 1, 3, 1],
    [1, 3, 1, 1, 1, 1, 3, 2, 1, 0, 1, 1, 2, 2, 3, -1, 1, 2, 0, 2],
];

/// Transpose of the matrix sending `x∨` to generator coordinates mod 8.
pub const DISC_PROJECTION_T: [[i64; 20]; 2] = [
    [7, 2, 5, 6, 0, 6, 6, 7, 2, 7, 6, 4, 6, 2, 4, 2, 4, 0, 4, 0],
    [0, 5, 3, 2, 7, 6, 3, 1, 7, 6, 0, 6, 2, 0, 2, 6, 4, 4, 4, 4],
];

/// Numerators over 8 of the value matrix of the discriminant form.
pub const DISC_VALUES_TIMES_8: [[i64; 2]; 2] = [[11, 5], [5, 14]];

/// The period-preserving subgroup of `O(q)` in generator coordinates.
pub const PERIOD_GROUP: [[[i64; 2]; 2]; 4] = [[[1, 0], [0, 1]], [[3, 3], [2, 5]], [[5, 5], [6, 3]], [[7, 0], [0, 7]]];

/// Representative pair of tags, `(i, μ, ν)`, and size of each pair orbit.
pub const PAIR_ORBIT_TABLE: [((u8, u8, u8), (u8, u8, u8), usize); 8] = [
    ((2, 1, 1), (2, 1, 5), 48),
    ((2, 1, 1), (2, 1, 3), 96),
    ((2, 1, 1), (3, 1, 1), 192),
    ((2, 1, 1), (2, 5, 5), 24),
    ((2, 1, 1), (2, 3, 3), 96),
    ((2, 1, 1), (2, 3, 5), 96),
    ((2, 1, 1), (3, 1, 5), 192),
    ((2, 1, 1), (3, 1, 3), 384),
];

/// Upper-left 3×3 blocks of the pair-orbit incidence matrices.
pub const PAIR_ORBIT_BLOCKS: [[[usize; 3]; 3]; 8] = [
    [[0, 0, 0], [0, 2, 0], [0, 0, 0]],
    [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[2, 0, 0], [0, 0, 0], [0, 0, 8]],
    [[0, 0, 0], [0, 2, 0], [0, 0, 4]],
    [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
    [[0, 0, 2], [0, 0, 0], [2, 0, 0]],
    [[0, 0, 0], [0, 0, 2], [0, 2, 2]],
];

/// The basis lines, `(i, μ, ν)`.
pub const BASIS_TAGS: [(u8, u8, u8); 20] = [
    (2, 1, 1), (2, 1, 3), (2, 1, 5), (2, 1, 7),
    (2, 3, 1), (2, 3, 3), (2, 3, 5),
    (2, 5, 1), (2, 5, 3), (2, 5, 5),
    (3, 1, 1), (3, 1, 3), (3, 1, 5),
    (3, 3, 1), (3, 3, 3), (3, 3, 5),
    (4, 1, 1), (4, 1, 3), (4, 1, 5), (4, 3, 1),
];

pub const TAU_POINT_COUNT: usize = 24;
pub const AUT_ORDER: usize = 1536;
pub const STABILIZER_ORDER: usize = 6144;
