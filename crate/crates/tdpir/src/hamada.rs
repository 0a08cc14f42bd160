//! Closed-form p-ranks of the point-line designs of projective and affine
//! geometries, used as an independent oracle for the explicitly computed
//! design ranks and to extend the dimension tables past matrix scale.
//!
//! The projective rank is a sum over integer tuples `(s_0, ..., s_e)` with
//! `s_0 = s_e`, `t+1 <= s_j <= m+1` and `0 <= s_{j+1} p - s_j <= (m+1)(p-1)`,
//! of products of alternating binomial sums; the affine rank is the
//! difference of two consecutive projective ranks. Only line designs (t = 1)
//! are supported.

use crate::error::{Error, Result};
use crate::ff::prime_power;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn big_binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// p-rank of the point-line design of PG(m, q), q = p^e.
pub fn rank_pg(q: u64, m: u32) -> Result<BigInt> {
    let (p, e) = prime_power(q)?;
    if m < 1 {
        return Err(Error::InvalidArgument("rank_pg needs m >= 1".into()));
    }
    let t = 1i64;
    let m = m as i64;
    let p = p as i64;
    let e = e as usize;
    let lo = t + 1;
    let hi = m + 1;
    let max_jump = (m + 1) * (p - 1);

    // Product factor for one step s_j -> s_{j+1}.
    let factor = |sj: i64, sj1: i64| -> BigInt {
        let d = sj1 * p - sj;
        let l = d / p;
        let mut sum = BigInt::zero();
        for i in 0..=l {
            let term = big_binomial(m + 1, i) * big_binomial(m + d - i * p, m);
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        sum
    };

    // Depth-first over (s_0, ..., s_e) with s_0 = s_e: iterate the start
    // value and extend the closed walk step by step, pruning steps outside
    // 0 <= s_{j+1} p - s_j <= (m+1)(p-1) and steps with a zero factor.
    let mut total = BigInt::zero();
    let mut stack: Vec<(usize, i64, i64, BigInt)> = Vec::new();
    for start in lo..=hi {
        stack.push((0, start, start, BigInt::one()));
    }
    while let Some((depth, start, current, acc)) = stack.pop() {
        if depth == e {
            if current == start {
                total += acc;
            }
            continue;
        }
        for next in lo..=hi {
            let d = next * p - current;
            if d < 0 || d > max_jump {
                continue;
            }
            let step = factor(current, next);
            if step.is_zero() {
                continue;
            }
            stack.push((depth + 1, start, next, &acc * step));
        }
    }
    if total.is_negative() {
        return Err(Error::InvalidArgument("negative rank computed".into()));
    }
    Ok(total)
}

/// p-rank of the point-line design of AG(m, q): the difference of the
/// projective ranks in dimensions m and m-1.
pub fn rank_ag(q: u64, m: u32) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::InvalidArgument("rank_ag needs m >= 2".into()));
    }
    Ok(rank_pg(q, m)? - rank_pg(q, m - 1)?)
}

/// One row of the affine dimension table: the design T_A(m, q) gives an
/// [n = q^m, k = q^m - rank_ag] code over the prime subfield; `ell = q`
/// servers, rate k/n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub m: u32,
    pub q: u64,
    pub ell: u64,
    pub n: u128,
    pub k: u128,
}

impl TableRow {
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

/// Affine table rows for the given (m, q) pairs, by formula only.
pub fn table1(rows: &[(u32, u64)]) -> Result<Vec<TableRow>> {
    rows.iter()
        .map(|&(m, q)| {
            let n = (q as u128).pow(m);
            let rank = rank_ag(q, m)?
                .to_u128()
                .ok_or_else(|| Error::InvalidArgument("rank overflow".into()))?;
            Ok(TableRow {
                m,
                q,
                ell: q,
                n,
                k: n - rank,
            })
        })
        .collect()
}

/// Projective analogue: T_P(m, q) has n = q^m + q^{m-1} points on q+1
/// servers; the guaranteed dimension is `n - rank_pg(q, m)` (the design code
/// contains the shortened geometry code, so its dimension is at least this).
pub fn table_projective(rows: &[(u32, u64)]) -> Result<Vec<TableRow>> {
    rows.iter()
        .map(|&(m, q)| {
            let n = (q as u128).pow(m) + (q as u128).pow(m - 1);
            let rank = rank_pg(q, m)?
                .to_u128()
                .ok_or_else(|| Error::InvalidArgument("rank overflow".into()))?;
            Ok(TableRow {
                m,
                q,
                ell: q + 1,
                n,
                k: n - rank,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ag(q: u64, m: u32) -> u128 {
        rank_ag(q, m).unwrap().to_u128().unwrap()
    }

    fn pg(q: u64, m: u32) -> u128 {
        rank_pg(q, m).unwrap().to_u128().unwrap()
    }

    fn binom(n: u64, k: u64) -> u128 {
        crate::comb::binomial(n as usize, k as usize)
    }

    #[test]
    fn projective_line_base_case() {
        for q in [2u64, 3, 4, 8, 9, 25] {
            assert_eq!(pg(q, 1), 1, "PG_1(1,{q}) is the single full block");
        }
    }

    #[test]
    fn m2_closed_form() {
        // rank_p AG_1(2, p^e) = binom(p+1, 2)^e for p in {2, 3, 5}, e <= 4.
        for p in [2u64, 3, 5] {
            for e in 1..=4u32 {
                let q = p.pow(e);
                assert_eq!(ag(q, 2), binom(p + 1, 2).pow(e), "p={p} e={e}");
            }
        }
        // Spot value from the appendix arithmetic: q = 8, m = 2.
        assert_eq!(ag(8, 2), 27);
        assert_eq!(pg(8, 2) - pg(8, 1), 27);
    }

    #[test]
    fn e1_closed_form() {
        // rank_p AG_1(m, p) = p^m - binom(m + p - 2, m) for p <= 7, m <= 5.
        for p in [2u64, 3, 5, 7] {
            for m in 2..=5u32 {
                assert_eq!(
                    ag(p, m),
                    (p as u128).pow(m) - binom(m as u64 + p - 2, m as u64),
                    "p={p} m={m}"
                );
            }
        }
    }

    #[test]
    fn m3_e2_closed_form() {
        // rank_p AG_1(3, p^2) = (p^3 - binom(p+1,3))^2 + 2 binom(p,2) binom(p+1,3).
        for p in [2u64, 3, 5] {
            let expect =
                ((p as u128).pow(3) - binom(p + 1, 3)).pow(2) + 2 * binom(p, 2) * binom(p + 1, 3);
            assert_eq!(ag(p * p, 3), expect, "p={p}");
        }
        // 3^2: 529 + 24 = 553.
        assert_eq!(ag(9, 3), 553);
    }

    #[test]
    fn table_values() {
        let rows = table1(&[
            (2, 8),
            (2, 16),
            (2, 32),
            (2, 64),
            (3, 8),
            (3, 16),
            (4, 8),
            (5, 8),
        ])
        .unwrap();
        let ks: Vec<u128> = rows.iter().map(|r| r.k).collect();
        assert_eq!(ks, vec![37, 175, 781, 3367, 139, 1377, 406, 994]);
        assert!((rows[3].rate() - 0.822).abs() < 5e-4);
        assert!((rows[6].rate() - 0.099).abs() < 5e-4);
    }

    #[test]
    fn table_values_formula_only() {
        // Rows far beyond matrix scale.
        let rows = table1(&[(2, 1024), (2, 65536), (3, 64), (3, 8192), (4, 256), (5, 64)]).unwrap();
        let ks: Vec<u128> = rows.iter().map(|r| r.k).collect();
        assert_eq!(
            ks,
            vec![989_527, 4_251_920_575, 118_873, 400_637_408_211, 890_445_921, 44_281_594]
        );
    }

    #[test]
    fn projective_table_m2() {
        // k = q^2 + q - binom(p+1,2)^e - 1 for the projective family.
        let rows = table_projective(&[(2, 4), (2, 8), (2, 3)]).unwrap();
        for row in rows {
            let (p, e) = prime_power(row.q).unwrap();
            let expect =
                row.q as u128 * row.q as u128 + row.q as u128 - binom(p as u64 + 1, 2).pow(e) - 1;
            assert_eq!(row.k, expect, "q={}", row.q);
        }
    }

    #[test]
    fn pg_rank_monotone_in_m() {
        for q in [2u64, 3, 4, 9] {
            let mut prev = 0u128;
            for m in 1..=5u32 {
                let r = pg(q, m);
                assert!(r > prev, "q={q} m={m}");
                prev = r;
            }
        }
    }
}
