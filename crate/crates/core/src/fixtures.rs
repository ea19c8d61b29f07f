//! The bundled ten-generator example and every value expected of it.
//!
//! `T = {t1, t2}`; `S - T` is of type `E8`. The closure of `W_T` is
//! right-angled and its nerve is a flag triangulation of a 7-sphere whose
//! f-polynomial has non-real roots.

/// Diagram source (`data/example_87.cox`).
pub const EXAMPLE_87: &str = include_str!("../data/example_87.cox");
/// Same diagram with `face` lines naming the tetrahedron whose link is `K`.
pub const EXAMPLE_LINK_K: &str = include_str!("../data/example_linkK.cox");
/// Same diagram with `face` lines naming the edge whose link is `L`.
pub const EXAMPLE_LINK_L: &str = include_str!("../data/example_linkL.cox");

pub const ORDER_E8: u64 = 696_729_600;
pub const ORDER_E7: u64 = 2_903_040;
pub const ORDER_D7: u64 = 322_560;

/// Two-variable f-polynomial as `(exp_t1, exp_t2, coefficient)`.
pub const F_TWO_VARIABLE: [(u32, u32, u64); 17] = [
    (1, 7, 276_480),
    (1, 6, 967_680),
    (1, 5, 1_451_520),
    (1, 4, 1_209_600),
    (1, 3, 604_800),
    (1, 2, 181_440),
    (1, 1, 30_240),
    (1, 0, 2_160),
    (0, 8, 17_280),
    (0, 7, 207_360),
    (0, 6, 483_840),
    (0, 5, 483_840),
    (0, 4, 241_920),
    (0, 3, 60_480),
    (0, 2, 6_720),
    (0, 1, 240),
    (0, 0, 1),
];

/// `f(t, t)`, constant term first.
pub const F_DIAGONAL: [u64; 9] = [
    1, 2_400, 36_960, 241_920, 846_720, 1_693_440, 1_935_360, 1_175_040, 293_760,
];

/// Numerator of the reciprocal growth function, constant term first; the
/// denominator is `(1 + t)^8`.
pub const RECIPROCAL_GROWTH_NUMERATOR: [i64; 9] = [1, -2392, 20188, -70504, 107590, -70504, 20188, -2392, 1];
pub const RECIPROCAL_GROWTH_DENOMINATOR_POWER: u32 = 8;

/// Poles of the growth function at two significant digits, `(re, im)`.
pub const POLES: [(f64, f64); 8] = [
    (0.41e-3, 0.0),
    (0.24, 0.16),
    (0.24, -0.16),
    (0.63, 0.0),
    (1.6, 0.0),
    (2.9, 1.9),
    (2.9, -1.9),
    (2.4e3, 0.0),
];

/// Distinct real roots of `f(t, t)`.
pub const F_DIAGONAL_REAL_ROOTS: usize = 4;

/// `f_K = (1 + 2t)^4`.
pub const F_LINK_K: [u64; 5] = [1, 8, 24, 32, 16];

/// Link specifications in the `t:k` syntax.
pub const LINK_K_SPEC: &str = "t1:1,t2:3";
pub const LINK_L_SPEC: &str = "t2:2";

pub const GENERATORS_T1: usize = 2160;
pub const GENERATORS_T2: usize = 240;
pub const SIGMA_FAMILIES: usize = 19;
