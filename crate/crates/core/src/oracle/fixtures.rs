//! Newform dimensions of `S_w(Gamma_0(N))` for squarefree `N <= 50`,
//! computed once by brute-force counting of `P^1(Z/N)`, elliptic points and
//! cusps, then frozen.

pub const NEWDIM_LEVELS: [u64; 31] = [
    1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30, 31, 33, 34, 35, 37, 38, 39, 41, 42, 43, 46,
    47,
];

pub const NEWDIM_TABLE: [(u32, [i64; 31]); 7] = [
    (
        12,
        [
            1, 0, 1, 3, 3, 5, 5, 8, 11, 6, 8, 14, 16, 12, 11, 19, 11, 25, 6, 27, 20, 16, 22, 33, 17, 22, 36, 10, 38,
            22, 41,
        ],
    ),
    (
        14,
        [
            0, 2, 3, 5, 1, 7, 3, 12, 13, 6, 8, 18, 20, 12, 9, 25, 13, 31, 10, 33, 20, 16, 26, 39, 19, 26, 44, 14, 46,
            22, 51,
        ],
    ),
    (
        16,
        [
            1, 1, 2, 5, 3, 7, 5, 12, 15, 8, 10, 20, 22, 16, 13, 27, 15, 35, 10, 37, 26, 20, 30, 45, 23, 30, 50, 14, 52,
            28, 57,
        ],
    ),
    (
        18,
        [
            1, 1, 3, 5, 3, 9, 7, 14, 17, 8, 12, 22, 26, 16, 15, 31, 17, 39, 10, 43, 28, 24, 34, 51, 25, 34, 56, 18, 60,
            32, 65,
        ],
    ),
    (
        20,
        [
            1, 2, 3, 7, 3, 9, 5, 16, 19, 10, 12, 26, 28, 20, 15, 35, 19, 45, 14, 47, 32, 24, 38, 57, 29, 38, 64, 18,
            66, 34, 73,
        ],
    ),
    (
        22,
        [
            1, 2, 4, 7, 3, 11, 7, 18, 21, 10, 14, 28, 32, 20, 17, 39, 21, 49, 14, 53, 34, 28, 42, 63, 31, 42, 70, 22,
            74, 38, 81,
        ],
    ),
    (
        24,
        [
            2, 1, 3, 7, 5, 11, 9, 18, 23, 12, 16, 30, 34, 24, 21, 41, 23, 53, 14, 57, 40, 32, 46, 69, 35, 46, 76, 22,
            80, 44, 87,
        ],
    ),
];
