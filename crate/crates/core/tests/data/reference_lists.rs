//! Reference minimal determining-equation lists, one entry per order.

/// `F_1(p_1 x) ⋯ F_1(p_r x)`, orders 2 through 8.
pub const NONSYMMETRIC_LISTS: &[(usize, &[&[u32]])] = &[
    (
        2,
        &[
            &[2],
        ],
    ),
    (
        3,
        &[
            &[3], &[1, 2],
        ],
    ),
    (
        4,
        &[
            &[4], &[1, 3], &[1, 1, 2],
        ],
    ),
    (
        5,
        &[
            &[5], &[1, 4], &[2, 3], &[1, 1, 3], &[1, 2, 2], &[1, 1, 1, 2],
        ],
    ),
    (
        6,
        &[
            &[6], &[1, 5], &[2, 4], &[1, 1, 4], &[1, 2, 3], &[1, 3, 2], &[1, 1, 1, 3],
            &[1, 1, 2, 2], &[1, 1, 1, 1, 2],
        ],
    ),
    (
        7,
        &[
            &[7], &[1, 6], &[2, 5], &[3, 4], &[1, 1, 5], &[1, 2, 4], &[1, 4, 2], &[1, 3, 3],
            &[2, 2, 3], &[1, 1, 1, 4], &[1, 1, 2, 3], &[1, 1, 3, 2], &[1, 2, 1, 3],
            &[1, 2, 2, 2], &[1, 1, 1, 1, 3], &[1, 1, 1, 2, 2], &[1, 1, 2, 1, 2],
            &[1, 1, 1, 1, 1, 2],
        ],
    ),
    (
        8,
        &[
            &[8], &[1, 7], &[2, 6], &[3, 5], &[1, 1, 6], &[1, 2, 5], &[1, 5, 2], &[1, 3, 4],
            &[1, 4, 3], &[2, 2, 4], &[2, 3, 3], &[1, 1, 1, 5], &[1, 1, 2, 4], &[1, 1, 4, 2],
            &[1, 2, 1, 4], &[1, 1, 3, 3], &[1, 2, 2, 3], &[1, 2, 3, 2], &[1, 3, 2, 2],
            &[1, 1, 1, 1, 4], &[1, 1, 1, 2, 3], &[1, 1, 1, 3, 2], &[1, 1, 2, 1, 3],
            &[1, 1, 3, 1, 2], &[1, 1, 2, 2, 2], &[1, 2, 1, 2, 2], &[1, 1, 1, 1, 1, 3],
            &[1, 1, 1, 1, 2, 2], &[1, 1, 1, 2, 1, 2], &[1, 1, 1, 1, 1, 1, 2],
        ],
    ),
];

/// `S_2(p_1 x) ⋯ S_2(p_r x)`, odd orders 3 through 15.
pub const SYMMETRIC_LISTS: &[(usize, &[&[u32]])] = &[
    (
        3,
        &[
            &[3],
        ],
    ),
    (
        5,
        &[
            &[5], &[1, 1, 3],
        ],
    ),
    (
        7,
        &[
            &[7], &[1, 1, 5], &[1, 3, 3], &[1, 1, 1, 1, 3],
        ],
    ),
    (
        9,
        &[
            &[9], &[1, 1, 7], &[1, 3, 5], &[1, 5, 3], &[1, 1, 1, 1, 5], &[1, 1, 1, 3, 3],
            &[1, 1, 3, 1, 3], &[1, 1, 1, 1, 1, 1, 3],
        ],
    ),
    (
        11,
        &[
            &[11], &[1, 1, 9], &[1, 3, 7], &[1, 7, 3], &[1, 5, 5], &[3, 3, 5], &[1, 1, 1, 1, 7],
            &[1, 1, 1, 3, 5], &[1, 1, 1, 5, 3], &[1, 1, 3, 1, 5], &[1, 1, 5, 1, 3],
            &[1, 1, 3, 3, 3], &[1, 3, 1, 3, 3], &[1, 1, 1, 1, 1, 1, 5], &[1, 1, 1, 1, 1, 3, 3],
            &[1, 1, 1, 1, 3, 1, 3], &[1, 1, 1, 3, 1, 1, 3], &[1, 1, 1, 1, 1, 1, 1, 1, 3],
        ],
    ),
    (
        13,
        &[
            &[13], &[1, 1, 11], &[1, 3, 9], &[1, 9, 3], &[1, 5, 7], &[1, 7, 5], &[3, 3, 7],
            &[3, 5, 5], &[1, 1, 1, 1, 9], &[1, 1, 1, 3, 7], &[1, 1, 1, 7, 3], &[1, 1, 3, 1, 7],
            &[1, 1, 7, 1, 3], &[1, 1, 1, 5, 5], &[1, 1, 5, 1, 5], &[1, 1, 3, 3, 5],
            &[1, 1, 3, 5, 3], &[1, 1, 5, 3, 3], &[1, 3, 1, 3, 5], &[1, 3, 1, 5, 3],
            &[1, 3, 3, 1, 5], &[1, 3, 3, 3, 3], &[1, 1, 1, 1, 1, 1, 7], &[1, 1, 1, 1, 1, 3, 5],
            &[1, 1, 1, 1, 1, 5, 3], &[1, 1, 1, 1, 3, 1, 5], &[1, 1, 1, 1, 5, 1, 3],
            &[1, 1, 1, 3, 1, 1, 5], &[1, 1, 1, 5, 1, 1, 3], &[1, 1, 1, 1, 3, 3, 3],
            &[1, 1, 1, 3, 1, 3, 3], &[1, 1, 1, 3, 3, 1, 3], &[1, 1, 3, 1, 1, 3, 3],
            &[1, 1, 3, 1, 3, 1, 3], &[1, 1, 1, 1, 1, 1, 1, 1, 5], &[1, 1, 1, 1, 1, 1, 1, 3, 3],
            &[1, 1, 1, 1, 1, 1, 3, 1, 3], &[1, 1, 1, 1, 1, 3, 1, 1, 3],
            &[1, 1, 1, 1, 3, 1, 1, 1, 3], &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 3],
        ],
    ),
    (
        15,
        &[
            &[15], &[1, 1, 13], &[1, 3, 11], &[1, 11, 3], &[1, 5, 9], &[1, 9, 5], &[1, 7, 7],
            &[3, 3, 9], &[3, 5, 7], &[3, 7, 5], &[1, 1, 1, 1, 11], &[1, 1, 1, 3, 9],
            &[1, 1, 1, 9, 3], &[1, 1, 3, 1, 9], &[1, 1, 9, 1, 3], &[1, 1, 1, 5, 7],
            &[1, 1, 1, 7, 5], &[1, 1, 5, 1, 7], &[1, 1, 7, 1, 5], &[1, 1, 3, 3, 7],
            &[1, 1, 3, 7, 3], &[1, 1, 7, 3, 3], &[1, 3, 1, 3, 7], &[1, 3, 1, 7, 3],
            &[1, 3, 3, 1, 7], &[1, 1, 3, 5, 5], &[1, 1, 5, 3, 5], &[1, 1, 5, 5, 3],
            &[1, 3, 1, 5, 5], &[1, 3, 5, 1, 5], &[1, 5, 1, 5, 3], &[1, 3, 3, 3, 5],
            &[1, 3, 3, 5, 3], &[1, 3, 5, 3, 3], &[1, 5, 3, 3, 3], &[1, 1, 1, 1, 1, 1, 9],
            &[1, 1, 1, 1, 1, 3, 7], &[1, 1, 1, 1, 1, 7, 3], &[1, 1, 1, 1, 3, 1, 7],
            &[1, 1, 1, 1, 7, 1, 3], &[1, 1, 1, 3, 1, 1, 7], &[1, 1, 1, 7, 1, 1, 3],
            &[1, 1, 1, 1, 1, 5, 5], &[1, 1, 1, 1, 5, 1, 5], &[1, 1, 1, 5, 1, 1, 5],
            &[1, 1, 1, 1, 3, 3, 5], &[1, 1, 1, 1, 3, 5, 3], &[1, 1, 1, 1, 5, 3, 3],
            &[1, 1, 1, 3, 1, 3, 5], &[1, 1, 1, 3, 1, 5, 3], &[1, 1, 1, 5, 1, 3, 3],
            &[1, 1, 1, 3, 3, 1, 5], &[1, 1, 1, 3, 5, 1, 3], &[1, 1, 1, 5, 3, 1, 3],
            &[1, 1, 3, 1, 1, 3, 5], &[1, 1, 3, 1, 1, 5, 3], &[1, 1, 3, 3, 1, 1, 5],
            &[1, 1, 3, 1, 3, 1, 5], &[1, 1, 3, 1, 5, 1, 3], &[1, 1, 5, 1, 3, 1, 3],
            &[1, 1, 1, 3, 3, 3, 3], &[1, 1, 3, 1, 3, 3, 3], &[1, 1, 3, 3, 1, 3, 3],
            &[1, 1, 3, 3, 3, 1, 3], &[1, 3, 1, 3, 1, 3, 3], &[1, 1, 1, 1, 1, 1, 1, 1, 7],
            &[1, 1, 1, 1, 1, 1, 1, 3, 5], &[1, 1, 1, 1, 1, 1, 1, 5, 3],
            &[1, 1, 1, 1, 1, 1, 3, 1, 5], &[1, 1, 1, 1, 1, 1, 5, 1, 3],
            &[1, 1, 1, 1, 1, 3, 1, 1, 5], &[1, 1, 1, 1, 1, 5, 1, 1, 3],
            &[1, 1, 1, 1, 3, 1, 1, 1, 5], &[1, 1, 1, 1, 5, 1, 1, 1, 3],
            &[1, 1, 1, 1, 1, 1, 3, 3, 3], &[1, 1, 1, 1, 1, 3, 1, 3, 3],
            &[1, 1, 1, 1, 1, 3, 3, 1, 3], &[1, 1, 1, 1, 3, 1, 1, 3, 3],
            &[1, 1, 1, 1, 3, 1, 3, 1, 3], &[1, 1, 1, 1, 3, 3, 1, 1, 3],
            &[1, 1, 1, 3, 1, 1, 1, 3, 3], &[1, 1, 1, 3, 1, 1, 3, 1, 3],
            &[1, 1, 1, 3, 1, 3, 1, 1, 3], &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 5],
            &[1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3], &[1, 1, 1, 1, 1, 1, 1, 1, 3, 1, 3],
            &[1, 1, 1, 1, 1, 1, 1, 3, 1, 1, 3], &[1, 1, 1, 1, 1, 1, 3, 1, 1, 1, 3],
            &[1, 1, 1, 1, 1, 3, 1, 1, 1, 1, 3], &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 3],
        ],
    ),
];
