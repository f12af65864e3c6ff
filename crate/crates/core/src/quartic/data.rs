//! Reference data for the 56-line quartic. Cyclotomic numbers are given by
//! their coordinates in the basis `1, ζ, ζ², ζ³`.

pub type CycInts = [i64; 4];

/// A cubic term: exponents of `x₁…x₄` and its coefficient.
pub type CubicTerm = ([u16; 4], CycInts);

/// The reference basis `f₁, …, f₄` of cubics through the six lines.
pub const REFERENCE_CUBICS: [&[CubicTerm]; 4] = [
    &[
        ([3, 0, 0, 0], [1, 1, 0, -1]),
        ([2, 0, 1, 0], [0, 1, 1, 1]),
        ([2, 0, 0, 1], [1, 1, 0, 0]),
        ([1, 2, 0, 0], [0, -1, -1, -1]),
        ([1, 1, 1, 0], [-1, -1, 0, 0]),
        ([1, 1, 0, 1], [0, 1, 1, 0]),
        ([1, 0, 2, 0], [-1, 0, 0, 0]),
        ([1, 0, 1, 1], [0, 1, 1, 0]),
        ([1, 0, 0, 2], [0, 0, 0, -1]),
        ([0, 2, 1, 0], [1, 0, -1, -1]),
        ([0, 1, 2, 0], [0, -1, -1, 0]),
        ([0, 1, 1, 1], [0, 0, 1, 1]),
        ([0, 0, 3, 0], [0, 0, 1, 0]),
        ([0, 0, 1, 2], [1, 0, 0, 0]),
    ],
    &[
        ([3, 0, 0, 0], [1, 0, 0, 0]),
        ([2, 0, 1, 0], [0, 0, -1, 0]),
        ([2, 0, 0, 1], [-1, 0, 0, 1]),
        ([1, 2, 0, 0], [0, 0, -1, 0]),
        ([1, 1, 1, 0], [1, 0, 0, -1]),
        ([1, 1, 0, 1], [-1, -1, 0, 0]),
        ([1, 0, 2, 0], [1, 1, 0, -1]),
        ([1, 0, 1, 1], [0, 0, -1, -1]),
        ([1, 0, 0, 2], [-1, -1, -1, 0]),
        ([0, 2, 1, 0], [0, 1, 0, 0]),
        ([0, 1, 2, 0], [0, 0, 1, 1]),
        ([0, 1, 1, 1], [1, 0, 0, -1]),
        ([0, 0, 3, 0], [0, 1, 1, 1]),
        ([0, 0, 1, 2], [1, 1, 0, -1]),
    ],
    &[
        ([2, 1, 0, 0], [1, 1, 1, 0]),
        ([2, 0, 0, 1], [0, 1, 1, 1]),
        ([1, 1, 1, 0], [-1, -1, 0, 0]),
        ([1, 1, 0, 1], [0, 1, 1, 0]),
        ([1, 0, 1, 1], [0, -1, -1, 0]),
        ([1, 0, 0, 2], [0, 0, 1, 1]),
        ([0, 3, 0, 0], [1, 0, -1, -1]),
        ([0, 2, 1, 0], [0, -1, -1, 0]),
        ([0, 2, 0, 1], [1, 1, 1, 0]),
        ([0, 1, 2, 0], [0, 0, 1, 0]),
        ([0, 1, 1, 1], [0, 0, -1, -1]),
        ([0, 1, 0, 2], [0, 0, 0, 1]),
        ([0, 0, 2, 1], [0, 0, 0, 1]),
        ([0, 0, 0, 3], [0, 1, 0, 0]),
    ],
    &[
        ([2, 1, 0, 0], [0, -1, 0, 0]),
        ([2, 0, 0, 1], [1, 0, 0, 0]),
        ([1, 1, 1, 0], [-1, 0, 0, 1]),
        ([1, 1, 0, 1], [1, 1, 0, 0]),
        ([1, 0, 1, 1], [0, 0, -1, -1]),
        ([1, 0, 0, 2], [-1, 0, 0, 1]),
        ([0, 3, 0, 0], [0, 0, 0, 1]),
        ([0, 2, 1, 0], [-1, -1, 0, 0]),
        ([0, 2, 0, 1], [0, 1, 0, 0]),
        ([0, 1, 2, 0], [-1, -1, 0, 1]),
        ([0, 1, 1, 1], [1, 0, 0, -1]),
        ([0, 1, 0, 2], [-1, 0, 1, 1]),
        ([0, 0, 2, 1], [1, 0, -1, -1]),
        ([0, 0, 0, 3], [-1, -1, -1, 0]),
    ],
];

/// `A = −1 − 2ζ − 2ζ³`; `B = 3 + A`.
pub const PSI_A: CycInts = [-1, -2, 0, -2];
pub const PSI_B: CycInts = [2, -2, 0, -2];

/// Projective automorphisms generating the automorphism group, acting on
/// column vectors `y ↦ γ·y`.
pub const GAMMA1: [[CycInts; 4]; 4] = [
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 1, -1], [1, -1, 0, 1]],
    [[-1, 1, 0, -1], [0, -1, 1, -1], [0, 0, -1, 0], [1, 0, 0, 0]],
    [[-1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 1, -1], [-1, 1, 0, -1]],
    [[-1, 1, 0, -1], [0, 1, -1, 1], [0, 0, 1, 0], [1, 0, 0, 0]],
];
pub const GAMMA2: [[CycInts; 4]; 4] = [
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 1, -1], [1, -1, 0, -1]],
    [[0, 0, 1, 0], [1, 0, 0, 0], [1, -1, 0, -1], [0, 1, 1, -1]],
    [[0, 1, 1, -1], [1, -1, 0, -1], [-1, 0, 0, 0], [0, 0, -1, 0]],
    [[1, -1, 0, -1], [0, 1, 1, -1], [0, 0, -1, 0], [-1, 0, 0, 0]],
];

/// Orbit representatives `λ⁽⁸⁾, λ⁽¹⁶⁾, λ⁽³²⁾` as pairs of linear forms in `y₁…y₄`,
/// with the size of their orbits.
pub const ORBIT_LINES: [(usize, [[CycInts; 4]; 2]); 3] = [
    (8, [[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]], [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, 0]]]),
    (16, [[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, -1, 1, -1]], [[0, 0, 0, 0], [1, 0, 0, 0], [0, -1, 1, -1], [0, 0, 0, 0]]]),
    (32, [[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], [[0, 0, 0, 0], [3, 0, 0, 0], [-1, -1, 0, -1], [0, -1, 1, 1]]]),
];

pub const F48_CAP_F56: usize = 30;
pub const AUT56_STABILIZER_ORDER: usize = 128;
pub const AUT56_ORDER: usize = 64;
