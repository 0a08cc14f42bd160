//! Base codes and orthogonal arrays.
//!
//! The retrieval schemes in this crate are parameterized by a small "base
//! code" C0 over some alphabet: its codewords, listed as rows, form an
//! orthogonal array whose strength is `dual_distance(C0) - 1`. This module
//! provides the array type, the stock base codes (generalized Reed-Solomon,
//! extended Golay, first-order Reed-Muller, the characteristic-2 hyperoval
//! MDS code), dual-distance and divisibility computations, and the
//! constructive decomposition of any dimension-2 MDS code as a GRS code.

use crate::comb::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::ff::{Felt, FieldSpec};
use crate::par::indexed_map_reduce;
use std::io::{BufRead, Write};

/// Enumeration budget for codeword and dual-codeword listings.
pub const MAX_ENUMERATION: u128 = 1 << 24;

/// An orthogonal array: `lambda * s^strength` rows of length `ell` over the
/// symbol set `[0, s)`, such that every `strength`-column projection hits
/// each tuple exactly `lambda` times. Repeated rows or columns are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    s: usize,
    ell: usize,
    strength: usize,
    lambda: usize,
    rows: Vec<Vec<u32>>,
}

impl OrthogonalArray {
    pub fn new(
        s: usize,
        ell: usize,
        strength: usize,
        lambda: usize,
        rows: Vec<Vec<u32>>,
    ) -> Result<OrthogonalArray> {
        if s < 1 || ell < strength || strength < 1 || lambda < 1 {
            return Err(Error::InvalidArgument(format!(
                "bad OA parameters s={s} ell={ell} t={strength} lambda={lambda}"
            )));
        }
        let expected = lambda as u128 * (s as u128).pow(strength as u32);
        if rows.len() as u128 != expected {
            return Err(Error::InvalidArgument(format!(
                "OA must have lambda*s^t = {expected} rows, got {}",
                rows.len()
            )));
        }
        for row in &rows {
            if row.len() != ell || row.iter().any(|&v| v as usize >= s) {
                return Err(Error::InvalidArgument("malformed OA row".into()));
            }
        }
        let mut sorted = rows.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedRows);
        }
        for i in 0..ell {
            for j in i + 1..ell {
                if rows.iter().all(|r| r[i] == r[j]) {
                    return Err(Error::RepeatedColumns);
                }
            }
        }
        Ok(OrthogonalArray {
            s,
            ell,
            strength,
            lambda,
            rows,
        })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Exhaustive projection check: every `t`-column subarray must contain
    /// each tuple of `[0,s)^t` exactly `lambda` times.
    pub fn verify(&self, t: usize, lambda: usize) -> bool {
        if t < 1 || t > self.ell {
            return false;
        }
        let tuples = (self.s as u128).pow(t as u32);
        if self.rows.len() as u128 != lambda as u128 * tuples || tuples > MAX_ENUMERATION {
            return false;
        }
        let n_subsets = binomial(self.ell, t) as usize;
        indexed_map_reduce(
            n_subsets,
            |rank| {
                let cols = crate::comb::unrank_combination(self.ell, t, rank as u128);
                let mut counts = vec![0u32; tuples as usize];
                for row in &self.rows {
                    let mut key = 0usize;
                    for &c in &cols {
                        key = key * self.s + row[c] as usize;
                    }
                    counts[key] += 1;
                }
                counts.iter().all(|&c| c == lambda as u32)
            },
            true,
            |a, b| a && b,
        )
    }

    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "OA {} {} {} {} {}",
            self.s,
            self.ell,
            self.strength,
            self.lambda,
            self.rows.len()
        )?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl BufRead) -> Result<OrthogonalArray> {
        let mut header = String::new();
        r.read_line(&mut header)
            .map_err(|e| Error::Parse(e.to_string()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 6 || parts[0] != "OA" {
            return Err(Error::Parse("expected header: OA s ell t lambda nrows".into()));
        }
        let nums: Vec<usize> = parts[1..]
            .iter()
            .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad integer {s}"))))
            .collect::<Result<_>>()?;
        let (s, ell, t, lambda, nrows) = (nums[0], nums[1], nums[2], nums[3], nums[4]);
        let mut rows = Vec::with_capacity(nrows);
        for _ in 0..nrows {
            let mut line = String::new();
            r.read_line(&mut line)
                .map_err(|e| Error::Parse(e.to_string()))?;
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad symbol {v}"))))
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        OrthogonalArray::new(s, ell, t, lambda, rows)
    }
}

/// A linear code over GF(q), held as a full-row-rank generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: FieldSpec,
    len: usize,
    gen: Vec<Vec<Felt>>,
}

impl LinearCode {
    pub fn new(field: FieldSpec, gen: Vec<Vec<Felt>>) -> Result<LinearCode> {
        let len = gen.first().map_or(0, |r| r.len());
        if len == 0 || gen.iter().any(|r| r.len() != len) {
            return Err(Error::DimensionMismatch(
                "generator rows must be nonempty and equal length".into(),
            ));
        }
        let rank = fq_rank(&field, &gen);
        if rank < gen.len() {
            return Err(Error::RankDeficient {
                rank,
                rows: gen.len(),
            });
        }
        Ok(LinearCode { field, len, gen })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &[Vec<Felt>] {
        &self.gen
    }

    pub fn codeword_count(&self) -> u128 {
        (self.field.q() as u128).pow(self.k() as u32)
    }

    pub fn encode(&self, msg: &[Felt]) -> Vec<Felt> {
        let f = &self.field;
        let mut out = vec![Felt::ZERO; self.len];
        for (m, row) in msg.iter().zip(&self.gen) {
            if m.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                if !g.is_zero() {
                    *o = f.add(*o, f.mul(*m, g));
                }
            }
        }
        out
    }

    /// The codeword for the `index`-th message, messages ordered
    /// lexicographically by their value tuples (first symbol most
    /// significant).
    pub fn codeword_at(&self, index: u128) -> Vec<Felt> {
        let q = self.field.q() as u128;
        let k = self.k();
        let mut msg = vec![Felt::ZERO; k];
        let mut idx = index;
        for i in (0..k).rev() {
            msg[i] = self.field.felt((idx % q) as u32).unwrap();
            idx /= q;
        }
        self.encode(&msg)
    }

    /// Enumerates all codewords in canonical message order.
    pub fn codewords(&self) -> impl Iterator<Item = Vec<Felt>> + '_ {
        (0..self.codeword_count()).map(|i| self.codeword_at(i))
    }

    fn check_enumerable(count: u128) -> Result<()> {
        if count > MAX_ENUMERATION {
            Err(Error::BudgetExceeded(count, MAX_ENUMERATION))
        } else {
            Ok(())
        }
    }

    /// Minimum Hamming weight over the nonzero codewords, by enumeration.
    pub fn min_distance(&self) -> Result<usize> {
        Self::check_enumerable(self.codeword_count())?;
        let mut best = self.len;
        for cw in self.codewords().skip(1) {
            let w = cw.iter().filter(|c| !c.is_zero()).count();
            if w < best {
                best = w;
            }
        }
        Ok(best)
    }

    /// A generator basis of the dual code (right kernel of the generator).
    pub fn dual_basis(&self) -> Vec<Vec<Felt>> {
        fq_right_kernel(&self.field, &self.gen, self.len)
    }

    /// Minimum distance of the dual code. Enumerates the dual when it fits
    /// the budget; otherwise searches for the smallest linearly dependent
    /// set of generator columns (the two are the same number).
    pub fn dual_distance(&self) -> Result<usize> {
        if self.k() == self.len {
            // The dual is the zero code; the full space behaves as an
            // orthogonal array of strength len (index 1), i.e. d' = len + 1.
            return Ok(self.len + 1);
        }
        let dual_count = (self.field.q() as u128).pow((self.len - self.k()) as u32);
        if dual_count <= MAX_ENUMERATION {
            let dual = LinearCode::new(self.field.clone(), self.dual_basis())?;
            return dual.min_distance();
        }
        // Columns of G are the parity checks of the dual: its distance is
        // the least d with d dependent columns.
        for d in 1..=self.k() + 1 {
            let subsets = binomial(self.len, d);
            if subsets > 10_000_000 {
                return Err(Error::BudgetExceeded(subsets, 10_000_000));
            }
            let mut dependent = false;
            for_each_combination(self.len, d, |cols| {
                if dependent {
                    return;
                }
                let sub: Vec<Vec<Felt>> = self
                    .gen
                    .iter()
                    .map(|row| cols.iter().map(|&c| row[c]).collect())
                    .collect();
                // Rank of the k x d submatrix below d means dependence.
                if fq_rank(&self.field, &sub) < d {
                    dependent = true;
                }
            });
            if dependent {
                return Ok(d);
            }
        }
        unreachable!("k+1 columns of a k-row matrix are always dependent")
    }

    /// True iff `p` divides the weight of every codeword.
    pub fn is_p_divisible(&self, p: u32) -> Result<bool> {
        Self::check_enumerable(self.codeword_count())?;
        for cw in self.codewords() {
            let w = cw.iter().filter(|c| !c.is_zero()).count();
            if w % p as usize != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Deletes the given coordinates; fails if the rank drops.
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode> {
        let mut drop = vec![false; self.len];
        for &pos in positions {
            if pos >= self.len {
                return Err(Error::InvalidArgument(format!(
                    "puncture position {pos} out of range"
                )));
            }
            drop[pos] = true;
        }
        let keep: Vec<usize> = (0..self.len).filter(|&i| !drop[i]).collect();
        if keep.is_empty() {
            return Err(Error::InvalidArgument(
                "cannot puncture every coordinate".into(),
            ));
        }
        let gen: Vec<Vec<Felt>> = self
            .gen
            .iter()
            .map(|row| keep.iter().map(|&i| row[i]).collect())
            .collect();
        LinearCode::new(self.field.clone(), gen)
    }
}

/// Generalized Reed-Solomon code: rows `(y_j * x_j^i)_j` for `i < k`.
pub fn grs(k: usize, x: &[Felt], y: &[Felt], field: &FieldSpec) -> Result<LinearCode> {
    let ell = x.len();
    if y.len() != ell {
        return Err(Error::DimensionMismatch(
            "evaluation points and multipliers differ in length".into(),
        ));
    }
    if k < 1 || k > ell || ell > field.q() as usize {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k <= ell <= q, got k={k} ell={ell} q={}",
            field.q()
        )));
    }
    for i in 0..ell {
        for j in i + 1..ell {
            if x[i] == x[j] {
                return Err(Error::RepeatedEvaluationPoints);
            }
        }
    }
    if y.iter().any(|v| v.is_zero()) {
        return Err(Error::ZeroMultiplier);
    }
    let mut gen = Vec::with_capacity(k);
    let mut powers: Vec<Felt> = y.to_vec();
    for _ in 0..k {
        gen.push(powers.clone());
        powers = powers
            .iter()
            .zip(x)
            .map(|(&pv, &xv)| field.mul(pv, xv))
            .collect();
    }
    LinearCode::new(field.clone(), gen)
}

/// Reed-Solomon code of dimension `k` evaluated on the given points.
pub fn rs(k: usize, x: &[Felt], field: &FieldSpec) -> Result<LinearCode> {
    let ones = vec![Felt::ONE; x.len()];
    grs(k, x, &ones, field)
}

/// Full-length Reed-Solomon code on all of GF(q), points in value order.
pub fn rs_full(k: usize, field: &FieldSpec) -> Result<LinearCode> {
    let x: Vec<Felt> = field.elements().collect();
    rs(k, &x, field)
}

/// The [ell, ell-1] sum-zero code over the given field.
pub fn parity_check_code(ell: usize, field: &FieldSpec) -> Result<LinearCode> {
    if ell < 2 {
        return Err(Error::InvalidArgument("parity-check code needs ell >= 2".into()));
    }
    let mut gen = Vec::with_capacity(ell - 1);
    for i in 0..ell - 1 {
        let mut row = vec![Felt::ZERO; ell];
        row[i] = Felt::ONE;
        row[ell - 1] = field.neg(Felt::ONE);
        gen.push(row);
    }
    LinearCode::new(field.clone(), gen)
}

/// Extended binary Golay code [24, 12, 8], bordered quadratic-residue
/// construction over QR(11). Self-duality is checked at construction.
pub fn golay24_binary() -> LinearCode {
    let f2 = FieldSpec::new(2, 1).expect("GF(2)");
    let qr: Vec<bool> = {
        let mut q = vec![false; 11];
        for x in 1..11u32 {
            q[(x * x % 11) as usize] = true;
        }
        q
    };
    let mut gen = Vec::with_capacity(12);
    for i in 0..12usize {
        let mut row = vec![Felt::ZERO; 24];
        row[i] = Felt::ONE;
        for j in 0..12usize {
            let bit = if i < 11 && j < 11 {
                let d = (i + j) % 11;
                d == 0 || qr[d]
            } else {
                // Border: all ones except the corner.
                !(i == 11 && j == 11)
            };
            if bit {
                row[12 + j] = Felt::ONE;
            }
        }
        gen.push(row);
    }
    let code = LinearCode::new(f2, gen).expect("full rank by the identity part");
    assert!(is_self_dual(&code), "Golay-24 construction must be self-dual");
    code
}

/// Extended ternary Golay code [12, 6, 6], bordered quadratic-residue
/// construction over QR(5). Self-duality is checked at construction.
pub fn golay12_ternary() -> LinearCode {
    let f3 = FieldSpec::new(3, 1).expect("GF(3)");
    let qr = [false, true, false, false, true]; // squares mod 5: {1, 4}
    let mut gen = Vec::with_capacity(6);
    for i in 0..6usize {
        let mut row = vec![Felt::ZERO; 12];
        row[i] = Felt::ONE;
        for j in 0..6usize {
            let v = if i < 5 && j < 5 {
                let d = (i + j) % 5;
                if d == 0 {
                    0
                } else if qr[d] {
                    1
                } else {
                    2
                }
            } else if i == 5 && j == 5 {
                0
            } else {
                1
            };
            row[6 + j] = f3.felt(v).unwrap();
        }
        gen.push(row);
    }
    let code = LinearCode::new(f3, gen).expect("full rank by the identity part");
    assert!(is_self_dual(&code), "Golay-12 construction must be self-dual");
    code
}

/// First-order binary Reed-Muller code: length 2^m, dimension m+1
/// (the all-ones row plus one coordinate-indicator row per variable).
pub fn rm1(m: u32) -> Result<LinearCode> {
    if m < 2 {
        return Err(Error::InvalidArgument("rm1 needs m >= 2".into()));
    }
    let f2 = FieldSpec::new(2, 1)?;
    let n = 1usize << m;
    let mut gen = vec![vec![Felt::ONE; n]];
    for i in 0..m {
        gen.push(
            (0..n)
                .map(|x| f2.from_residue(((x >> i) & 1) as u32))
                .collect(),
        );
    }
    LinearCode::new(f2, gen)
}

/// The [q+2, 3, q] hyperoval MDS code in characteristic 2: generator columns
/// `(1, x, x^2)` for every x, plus `(0,1,0)` and `(0,0,1)`. The MDS property
/// (every 3 columns independent) is verified at construction.
pub fn mds_q_plus_2(field: &FieldSpec) -> Result<LinearCode> {
    if field.p() != 2 || field.e() < 2 {
        return Err(Error::WrongCharacteristic);
    }
    let q = field.q() as usize;
    let mut cols: Vec<[Felt; 3]> = field
        .elements()
        .map(|x| [Felt::ONE, x, field.mul(x, x)])
        .collect();
    cols.push([Felt::ZERO, Felt::ONE, Felt::ZERO]);
    cols.push([Felt::ZERO, Felt::ZERO, Felt::ONE]);
    // Every 3x3 minor must be invertible.
    let mut ok = true;
    for_each_combination(q + 2, 3, |ix| {
        if !ok {
            return;
        }
        let m: Vec<[Felt; 3]> = ix.iter().map(|&i| cols[i]).collect();
        if det3(field, &m).is_zero() {
            ok = false;
        }
    });
    if !ok {
        return Err(Error::InvalidArgument(
            "hyperoval column set is not 3-wise independent".into(),
        ));
    }
    let gen = (0..3)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    LinearCode::new(field.clone(), gen)
}

fn det3(f: &FieldSpec, m: &[[Felt; 3]]) -> Felt {
    // Columns m[0..3] as a 3x3 matrix.
    let a = |i: usize, j: usize| m[j][i];
    let mut det = Felt::ZERO;
    for (j0, j1, j2, neg) in [
        (0, 1, 2, false),
        (1, 2, 0, false),
        (2, 0, 1, false),
        (2, 1, 0, true),
        (1, 0, 2, true),
        (0, 2, 1, true),
    ] {
        let term = f.mul(f.mul(a(0, j0), a(1, j1)), a(2, j2));
        det = if neg {
            f.sub(det, term)
        } else {
            f.add(det, term)
        };
    }
    det
}

pub fn is_self_dual(code: &LinearCode) -> bool {
    if code.len() != 2 * code.k() {
        return false;
    }
    let f = code.field();
    for a in code.generator() {
        for b in code.generator() {
            let mut acc = Felt::ZERO;
            for (&x, &y) in a.iter().zip(b) {
                acc = f.add(acc, f.mul(x, y));
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Lists the codewords of `c0` as an orthogonal array; the strength is
/// `dual_distance(c0) - 1` and the index is `q^k / q^t`.
pub fn oa_from_code(c0: &LinearCode) -> Result<OrthogonalArray> {
    let count = c0.codeword_count();
    if count > MAX_ENUMERATION {
        return Err(Error::BudgetExceeded(count, MAX_ENUMERATION));
    }
    let t = c0.dual_distance()? - 1;
    let q = c0.field().q() as usize;
    let lambda = (q as u128).pow((c0.k() - t) as u32);
    let rows: Vec<Vec<u32>> = c0
        .codewords()
        .map(|cw| cw.iter().map(|c| c.value()).collect())
        .collect();
    OrthogonalArray::new(q, c0.len(), t, lambda as usize, rows)
}

/// Codeword-set equality of two linear codes over the same field.
pub fn same_codeword_set(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    if a.field() != b.field() || a.len() != b.len() {
        return Ok(false);
    }
    if a.k() != b.k() {
        return Ok(false);
    }
    let mut stacked: Vec<Vec<Felt>> = a.generator().to_vec();
    stacked.extend(b.generator().iter().cloned());
    Ok(fq_rank(a.field(), &stacked) == a.k())
}

/// Constructive converse of the GRS construction for dimension-2 MDS codes:
/// returns `(x, y)` with `grs(2, x, y)` equal to `c0` as a codeword set.
///
/// Follows the classification proof: pick a direction `Q` off every column
/// line, evaluate the linear form vanishing on `Q` to obtain a full-weight
/// codeword `c`, complete `{c, u}` to a basis, and read off `y = c`,
/// `x = c^{-1} * u`.
pub fn decompose_mds2_as_grs(c0: &LinearCode) -> Result<(Vec<Felt>, Vec<Felt>)> {
    let f = c0.field().clone();
    let ell = c0.len();
    if c0.k() != 2 || ell < 2 || ell > f.q() as usize {
        return Err(Error::NotMds2);
    }
    // Columns as points of F_q^2: all nonzero, pairwise non-proportional.
    let cols: Vec<(Felt, Felt)> = (0..ell).map(|j| (c0.generator()[0][j], c0.generator()[1][j])).collect();
    for (i, &(a, b)) in cols.iter().enumerate() {
        if a.is_zero() && b.is_zero() {
            return Err(Error::NotMds2);
        }
        for &(c, d) in &cols[i + 1..] {
            if f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
                return Err(Error::NotMds2);
            }
        }
    }
    // Line representatives of P^1: (1, beta) then (0, 1). Since ell <= q,
    // at least one line avoids every column.
    let q_dir = f
        .elements()
        .map(|beta| (Felt::ONE, beta))
        .chain(std::iter::once((Felt::ZERO, Felt::ONE)))
        .find(|&(qa, qb)| {
            cols.iter()
                .all(|&(a, b)| !f.sub(f.mul(qa, b), f.mul(qb, a)).is_zero())
        })
        .expect("ell <= q leaves a free direction");
    // mu_Q(X, Y) = q1*X - q0*Y has full weight on the columns.
    let c: Vec<Felt> = cols
        .iter()
        .map(|&(a, b)| f.sub(f.mul(q_dir.1, a), f.mul(q_dir.0, b)))
        .collect();
    debug_assert!(c.iter().all(|v| !v.is_zero()));
    // Pick a generator row independent of c.
    let g0 = &c0.generator()[0];
    let g1 = &c0.generator()[1];
    let proportional = |u: &[Felt], v: &[Felt]| {
        let mut ratio: Option<Felt> = None;
        for (&a, &b) in u.iter().zip(v) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                (false, false) => {
                    let r = f.mul(a, f.inv(b).unwrap());
                    match ratio {
                        None => ratio = Some(r),
                        Some(prev) if prev != r => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    };
    let u = if proportional(g0, &c) { g1 } else { g0 };
    let x: Vec<Felt> = c
        .iter()
        .zip(u)
        .map(|(&ci, &ui)| f.mul(f.inv(ci).unwrap(), ui))
        .collect();
    // Distinctness of x follows from the minimum distance; double check.
    for i in 0..ell {
        for j in i + 1..ell {
            if x[i] == x[j] {
                return Err(Error::NotMds2);
            }
        }
    }
    Ok((x, c))
}

// ---- tiny dense elimination over GF(q), used for base-code machinery ----

fn fq_rref(f: &FieldSpec, rows: &[Vec<Felt>]) -> (Vec<Vec<Felt>>, Vec<usize>) {
    let mut work: Vec<Vec<Felt>> = rows.to_vec();
    let ncols = work.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for c in 0..ncols {
        let Some(pi) = (rank..work.len()).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(rank, pi);
        let inv = f.inv(work[rank][c]).unwrap();
        for v in work[rank].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..work.len() {
            if i != rank && !work[i][c].is_zero() {
                let factor = work[i][c];
                let (head, tail) = if i < rank {
                    let (a, b) = work.split_at_mut(rank);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = work.split_at_mut(i);
                    (&mut b[0], &a[rank])
                };
                for (hv, &tv) in head.iter_mut().zip(tail.iter()) {
                    *hv = f.sub(*hv, f.mul(factor, tv));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    work.truncate(rank);
    (work, pivots)
}

pub(crate) fn fq_rank(f: &FieldSpec, rows: &[Vec<Felt>]) -> usize {
    fq_rref(f, rows).1.len()
}

pub(crate) fn fq_right_kernel(f: &FieldSpec, rows: &[Vec<Felt>], ncols: usize) -> Vec<Vec<Felt>> {
    let (r, pivots) = fq_rref(f, rows);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for fcol in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Felt::ZERO; ncols];
        v[fcol] = Felt::ONE;
        for (ri, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(r[ri][fcol]);
        }
        basis.push(v);
    }
    basis
}
