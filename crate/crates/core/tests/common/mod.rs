#![allow(dead_code)]

use num_traits::Zero;
use proptest::prelude::*;
use wallscope::rational::{q, qf, Q};
use wallscope::Char3;

/// `n(n-1)(n-2)/6` as a polynomial in `n`.
pub fn binom3(n: i64) -> i64 {
    n * (n - 1) * (n - 2) / 6
}

/// Coefficients `x_k` with `c = Σ x_k ch(O(-k))`, `k = 0..3`, by Gaussian
/// elimination on the 4x4 system.
pub fn line_bundle_coords(c: &Char3) -> [Q; 4] {
    let cols: Vec<[Q; 4]> = (0..4)
        .map(|k| {
            let e = Char3::line_bundle(-k);
            [e.ch0, e.ch1, e.ch2, e.ch3]
        })
        .collect();
    let mut m: Vec<Vec<Q>> = (0..4)
        .map(|row| {
            let mut r: Vec<Q> = (0..4).map(|k| cols[k][row].clone()).collect();
            r.push(c.entries()[row].clone());
            r
        })
        .collect();
    for col in 0..4 {
        let piv = (col..4).find(|&r| !m[r][col].is_zero()).expect("basis");
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    [
        m[0][4].clone(),
        m[1][4].clone(),
        m[2][4].clone(),
        m[3][4].clone(),
    ]
}

/// χ(E, F) from χ(O(-i), O(-j)) = C(i - j + 3, 3), extended bilinearly.
pub fn chi_oracle(e: &Char3, f: &Char3) -> Q {
    let x = line_bundle_coords(e);
    let y = line_bundle_coords(f);
    let mut total = Q::zero();
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            total += xi * yj * q(binom3(i as i64 - j as i64 + 3));
        }
    }
    total
}

pub fn rational() -> impl Strategy<Value = Q> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| qf(n, d))
}

pub fn any_char() -> impl Strategy<Value = Char3> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| Char3::new(a, b, c, d))
}

/// A lattice character `(ch0, ch1, ch2, ch3)` with `ch0, ch1 ∈ Z`, `2ch2 ∈ Z`, `6ch3 ∈ Z`.
pub fn lattice_char() -> impl Strategy<Value = Char3> {
    (-4i64..=4, -6i64..=6, -20i64..=20, -60i64..=60)
        .prop_map(|(r, c, d2, e6)| Char3::new(q(r), q(c), qf(d2, 2), qf(e6, 6)))
}

/// An integer combination of line-bundle classes, i.e. a class of an actual
/// complex on P^3.
pub fn k_class() -> impl Strategy<Value = Char3> {
    prop::collection::vec((-3i64..=3, -8i64..=8), 1..5).prop_map(|terms| {
        terms.into_iter().fold(Char3::zero(), |acc, (mult, twist)| {
            acc + Char3::line_bundle(twist).scale(&q(mult))
        })
    })
}

pub fn v() -> Char3 {
    Char3::from_ints(1, 0, -6, 15)
}
