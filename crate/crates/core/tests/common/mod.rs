//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls into the library's linear algebra; the oracles are
//! deliberately naive so they can check it.

#![allow(dead_code)]

use logcy_core::{Divisor, SphereCycle};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

pub fn cycle(s: &[i64]) -> SphereCycle {
    SphereCycle::from_i64s(s).unwrap()
}

pub fn to_i64s(c: &SphereCycle) -> Vec<i64> {
    c.to_i64s().expect("small entries")
}

/// Intersection matrix written out directly from the cycle rule.
pub fn q_matrix(s: &[i64]) -> Vec<Vec<i64>> {
    let k = s.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match () {
                    _ if i == j => s[i],
                    _ if k == 2 => 2,
                    _ if (i + 1) % k == j || (j + 1) % k == i => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn det_laplace(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for col in 0..n {
        if m[0][col] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| *v).collect())
            .collect();
        let sign = if col % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][col] as i128 * det_laplace(&minor);
    }
    total
}

/// `M(-s_k) ... M(-s_1)` with `M(x) = [[x, 1], [-1, 0]]`, in `i128`.
pub fn monodromy_i128(s: &[i64]) -> [[i128; 2]; 2] {
    let mut a = [[1i128, 0], [0, 1]];
    for &x in s {
        let m = [[-(x as i128), 1], [-1, 0]];
        a = [
            [
                m[0][0] * a[0][0] + m[0][1] * a[1][0],
                m[0][0] * a[0][1] + m[0][1] * a[1][1],
            ],
            [
                m[1][0] * a[0][0] + m[1][1] * a[1][0],
                m[1][0] * a[0][1] + m[1][1] * a[1][1],
            ],
        ];
    }
    a
}

/// Characteristic polynomial coefficients `c_0..c_n` of `det(xI - m)` by
/// the Faddeev-LeVerrier recursion, leading coefficient first.
pub fn char_poly(m: &[Vec<BigInt>]) -> Vec<BigRational> {
    let n = m.len();
    let a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let matmul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigRational::zero(), |acc, t| acc + &x[i][t] * &y[t][j]))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![BigRational::one()];
    let mut mk: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let prev_c = coeffs.last().unwrap().clone();
        let mut next = matmul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &prev_c;
        }
        mk = next;
        let amk = matmul(&a, &mk);
        let trace = (0..n).fold(BigRational::zero(), |acc, i| acc + &amk[i][i]);
        coeffs.push(-trace / BigRational::from_integer(BigInt::from(k as i64)));
    }
    coeffs
}

/// Inertia of a symmetric matrix from its characteristic polynomial. All
/// roots are real, so Descartes' rule of signs counts them exactly.
pub fn inertia_oracle(m: &[Vec<BigInt>]) -> (usize, usize, usize) {
    let p = char_poly(m);
    let n = m.len();
    let zero_mult = p.iter().rev().take_while(|c| c.is_zero()).count();
    let sign_changes = |cs: &[BigRational]| {
        let signs: Vec<bool> = cs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let positive = sign_changes(&p);
    // p(-x): flip the sign of odd-degree terms
    let flipped: Vec<BigRational> = p
        .iter()
        .enumerate()
        .map(|(i, c)| if (n - i) % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let negative = sign_changes(&flipped);
    (positive, zero_mult, negative)
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn rank_oracle(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[rank][col];
                for c in col..ncols {
                    let v = &m[rank][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rationals(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

/// Dihedral lexicographic minimum of a small sequence.
pub fn canonical_i64(s: &[i64]) -> Vec<i64> {
    let k = s.len();
    let mut best: Option<Vec<i64>> = None;
    for shift in 0..k {
        for rev in [false, true] {
            let img: Vec<i64> = (0..k)
                .map(|i| if rev { s[(shift + k - i) % k] } else { s[(shift + i) % k] })
                .collect();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn is_canonical_i64(s: &[i64]) -> bool {
    canonical_i64(s) == s
}

/// Every sequence of length `k` with entries in `lo..=hi`, in odometer order.
pub fn all_sequences(k: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<i64>> {
    let width = (hi - lo + 1) as u64;
    let total = width.pow(k as u32);
    (0..total).map(move |mut n| {
        let mut v = vec![0i64; k];
        for slot in v.iter_mut().rev() {
            *slot = lo + (n % width) as i64;
            n /= width;
        }
        v
    })
}

pub fn divisor(s: &[i64]) -> Divisor {
    Divisor::cycle(s).unwrap()
}

pub fn seq_strategy(min_len: usize, max_len: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, min_len..=max_len)
}

/// Every move that makes sense on a divisor with `k` components.
pub fn all_moves(d: &Divisor) -> Vec<logcy_core::moves::Move> {
    use logcy_core::moves::Move;
    match d {
        Divisor::Torus { .. } => vec![Move::NonToricBlowUp { component: 0 }],
        Divisor::Cycle(c) => {
            let k = c.len();
            let mut out = Vec::with_capacity(3 * k);
            for i in 0..k {
                out.push(Move::ToricBlowUp { edge: i });
                out.push(Move::ToricBlowDown { component: i });
                out.push(Move::NonToricBlowUp { component: i });
            }
            out
        }
    }
}

pub struct Walked {
    pub start: Divisor,
    pub pair: logcy_core::homology::LogCYPair,
    pub word: Vec<logcy_core::moves::Move>,
}

/// Pairs reachable from the catalog (parameters in `params`) by at most
/// `depth` moves, one representative per distinct pair, with the word used.
pub fn catalog_walk(params: std::ops::RangeInclusive<i64>, depth: usize, blow_ups_only: bool) -> Vec<Walked> {
    use logcy_core::enumeration;
    use logcy_core::homology::transport;
    use logcy_core::moves::Move;
    use std::collections::HashSet;

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut layer = Vec::new();
    for m in enumeration::catalog(params) {
        if let Some(p) = m.pair {
            if seen.insert(p.to_json().to_string()) {
                layer.push(Walked {
                    start: p.divisor.clone(),
                    pair: p,
                    word: Vec::new(),
                });
            }
        }
    }
    for step in 0..=depth {
        if step == depth {
            out.extend(layer);
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            for mv in all_moves(&w.pair.divisor) {
                if blow_ups_only && matches!(mv, Move::ToricBlowDown { .. }) {
                    continue;
                }
                // inapplicable moves (not a -1 curve, not exceptional) are skipped
                let Ok(q) = transport(&w.pair, &mv) else { continue };
                if seen.insert(q.to_json().to_string()) {
                    let mut word = w.word.clone();
                    word.push(mv);
                    next.push(Walked {
                        start: w.start.clone(),
                        pair: q,
                        word,
                    });
                }
            }
        }
        out.extend(std::mem::replace(&mut layer, next));
    }
    out
}

/// Every rotation and reflection of a small sequence.
pub fn dihedral_i64(s: &[i64]) -> Vec<Vec<i64>> {
    let k = s.len();
    let mut out = Vec::with_capacity(2 * k);
    for shift in 0..k {
        out.push((0..k).map(|i| s[(shift + i) % k]).collect());
        out.push((0..k).map(|i| s[(shift + k - i) % k]).collect());
    }
    out
}

/// Sequence-level clauses of the length-stratified case table for a cycle
/// in a surface with `b^+ = 1`, written out directly. `b_plus` is `b^+` of
/// the cycle's own intersection matrix; the length-2 clause without
/// non-negative entries is only checked when it is 1.
pub fn sequence_clauses_hold(s: &[i64], b_plus: usize) -> bool {
    let r = s.len();
    let r0 = s.iter().filter(|x| **x >= 0).count();
    if r0 > 4 {
        return false;
    }
    let any = |f: &dyn Fn(&[i64]) -> bool| dihedral_i64(s).iter().any(|t| f(t));
    match (r, r0) {
        (r, 2) if r >= 5 => any(&|t| t[0] >= 0 && t[1] == 0),
        (r, r0) if r >= 5 => r0 <= 2,
        (4, 4) => s.iter().all(|x| *x == 0),
        (4, 3) => any(&|t| t[0] >= 0 && t[1] == 0 && t[2] < 0 && t[3] == 0 && t[2] + t[0] <= 0),
        (4, 2) => any(&|t| {
            (t[0] == 0 && t[1] < 0 && t[2] == 0 && t[3] < 0)
                || (t[0] >= 0 && t[1] == 0 && t[2] < 0 && t[3] < 0 && t[0] + t[2] + t[3] <= 0)
        }),
        (3, 3) => any(&|t| t == [1, 1, 1] || t == [1, 1, 0] || ((0..=2).contains(&t[0]) && t[1] == 0 && t[2] == 0)),
        (3, 2) => any(&|t| (t[0] == 1 && t[1] == 1 && t[2] < 0) || (t[0] >= 0 && t[1] == 0 && t[2] < 0 && t[2] + t[0] <= 2)),
        (2, 2) => any(&|t| {
            [[4, 1], [4, 0], [3, 1], [3, 0], [2, 2], [2, 1], [2, 0], [1, 1], [1, 0], [0, 0]]
                .iter()
                .any(|p| t == p)
        }),
        (2, 0) if b_plus == 1 => any(&|t| t == [-1, -1] || t == [-1, -2] || t == [-1, -3]),
        _ => true,
    }
}
