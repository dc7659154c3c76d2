//! Polynomial tables.
//!
//! The transformation coefficients are stored as `xᵃ(x−1)ᵇyᶜ(y−1)ᵈ` times an
//! inner polynomial whose terms `(coefficient, i, j, k)` mean `c·xⁱ·yʲ·μᵏ`.
//! For the obstruction polynomials a term means `c·xⁱ·yʲ·y'ᵏ`.

pub type Term = (i64, u32, u32, u32);

/// `xᵃ (x−1)ᵇ yᶜ (y−1)ᵈ · inner(x, y, μ)`.
#[derive(Debug, Clone, Copy)]
pub struct Factored {
    pub x: u32,
    pub xm1: u32,
    pub y: u32,
    pub ym1: u32,
    pub inner: &'static [Term],
}

pub const P0: Factored = Factored {
    x: 2,
    xm1: 2,
    y: 0,
    ym1: 0,
    inner: &[
        (1, 0, 0, 0),
    ],
};

pub const P1: Factored = Factored {
    x: 1,
    xm1: 1,
    y: 0,
    ym1: 1,
    inner: &[
        (-2, 0, 1, 0),
        (4, 0, 1, 1),
        (-4, 1, 0, 1),
    ],
};

pub const P2: Factored = Factored {
    x: 0,
    xm1: 0,
    y: 1,
    ym1: 1,
    inner: &[
        (-1, 0, 1, 0),
        (4, 0, 1, 1),
        (-4, 0, 1, 2),
        (1, 0, 2, 0),
        (-4, 0, 2, 1),
        (4, 0, 2, 2),
        (-4, 1, 0, 1),
        (4, 1, 0, 2),
        (4, 1, 1, 1),
        (-8, 1, 1, 2),
        (4, 2, 0, 2),
    ],
};

pub const Q0: Factored = Factored {
    x: 4,
    xm1: 4,
    y: 0,
    ym1: 0,
    inner: &[
        (1, 0, 0, 0),
    ],
};

pub const Q1: Factored = Factored {
    x: 3,
    xm1: 3,
    y: 1,
    ym1: 1,
    inner: &[
        (-4, 0, 0, 0),
    ],
};

pub const Q2: Factored = Factored {
    x: 2,
    xm1: 2,
    y: 1,
    ym1: 1,
    inner: &[
        (-6, 0, 1, 0),
        (8, 0, 1, 2),
        (6, 0, 2, 0),
        (-24, 0, 2, 2),
        (-8, 1, 0, 2),
        (32, 1, 1, 2),
        (-8, 2, 0, 2),
    ],
};

pub const Q3: Factored = Factored {
    x: 1,
    xm1: 1,
    y: 2,
    ym1: 2,
    inner: &[
        (4, 0, 1, 0),
        (-16, 0, 1, 2),
        (-4, 0, 2, 0),
        (48, 0, 2, 2),
        (-64, 0, 2, 3),
        (16, 1, 0, 2),
        (-64, 1, 1, 2),
        (128, 1, 1, 3),
        (16, 2, 0, 2),
        (-64, 2, 0, 3),
    ],
};

pub const Q4: Factored = Factored {
    x: 0,
    xm1: 0,
    y: 2,
    ym1: 2,
    inner: &[
        (1, 0, 2, 0),
        (-8, 0, 2, 2),
        (16, 0, 2, 4),
        (-2, 0, 3, 0),
        (32, 0, 3, 2),
        (-64, 0, 3, 3),
        (32, 0, 3, 4),
        (1, 0, 4, 0),
        (-24, 0, 4, 2),
        (64, 0, 4, 3),
        (-48, 0, 4, 4),
        (8, 1, 1, 2),
        (-32, 1, 1, 4),
        (-40, 1, 2, 2),
        (128, 1, 2, 3),
        (-96, 1, 2, 4),
        (32, 1, 3, 2),
        (-128, 1, 3, 3),
        (128, 1, 3, 4),
        (16, 2, 0, 4),
        (8, 2, 1, 2),
        (-64, 2, 1, 3),
        (96, 2, 1, 4),
        (-8, 2, 2, 2),
        (64, 2, 2, 3),
        (-96, 2, 2, 4),
        (-32, 3, 0, 4),
        (16, 4, 0, 4),
    ],
};

pub const OBSTRUCTION_1: &[Term] = &[
    (1, 0, 1, 0),
    (-1, 0, 2, 0),
    (-1, 1, 0, 2),
    (1, 2, 0, 2),
];

pub const OBSTRUCTION_2: &[Term] = &[
    (-1, 0, 1, 0),
    (1, 0, 2, 0),
    (2, 1, 0, 1),
    (-1, 1, 0, 2),
    (-2, 1, 1, 1),
    (1, 2, 0, 2),
];

pub const OBSTRUCTION_3: &[Term] = &[
    (-1, 0, 1, 0),
    (2, 0, 1, 1),
    (1, 0, 2, 0),
    (-1, 1, 0, 2),
    (-2, 1, 1, 1),
    (1, 2, 0, 2),
];
