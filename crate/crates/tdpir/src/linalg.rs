//! Dense exact linear algebra over prime fields GF(p).
//!
//! Rank, reduced row-echelon form, right-kernel bases and systematic
//! encoders, with a leftmost-pivot policy throughout so every derived object
//! (pivot lists, kernel bases, information sets) is deterministic.
//!
//! Matrices over GF(2) are stored bit-packed, one `u64` word per 64 columns;
//! odd characteristics use a dense row-major `u32` layout. Rank also accepts
//! a streamed sequence of rows (see [`RankAccumulator`]), so incidence
//! matrices with very large block counts never need to be materialized.

use crate::error::{Error, Result};
use crate::ff::is_prime;

/// Row-count threshold above which `rank` reduces chunks in parallel.
#[cfg(feature = "parallel")]
const PAR_RANK_MIN_ROWS: usize = 4096;

/// A dense matrix over GF(p) with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatGFp {
    p: u32,
    nrows: usize,
    ncols: usize,
    store: Store,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Store {
    /// p = 2: bit-packed rows, `wpr` words per row.
    Bits { wpr: usize, words: Vec<u64> },
    /// odd p: row-major residues.
    Dense(Vec<u32>),
}

fn words_per_row(ncols: usize) -> usize {
    ncols.div_ceil(64).max(1)
}

impl MatGFp {
    pub fn zeros(p: u32, nrows: usize, ncols: usize) -> Result<MatGFp> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        let store = if p == 2 {
            let wpr = words_per_row(ncols);
            Store::Bits {
                wpr,
                words: vec![0; wpr * nrows],
            }
        } else {
            Store::Dense(vec![0; nrows * ncols])
        };
        Ok(MatGFp {
            p,
            nrows,
            ncols,
            store,
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<MatGFp> {
        let mut m = MatGFp::zeros(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn from_rows(p: u32, ncols: usize, rows: &[Vec<u32>]) -> Result<MatGFp> {
        let mut m = MatGFp::zeros(p, rows.len(), ncols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        Ok(m)
    }

    /// Builds a 0/1 matrix from the support (column indices) of each row.
    pub fn from_supports<I, S>(p: u32, nrows: usize, ncols: usize, supports: I) -> Result<MatGFp>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut m = MatGFp::zeros(p, nrows, ncols)?;
        let mut count = 0;
        for (i, sup) in supports.into_iter().enumerate() {
            for &c in sup.as_ref() {
                m.set(i, c as usize, 1);
            }
            count = i + 1;
        }
        debug_assert_eq!(count, nrows);
        Ok(m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        match &self.store {
            Store::Bits { wpr, words } => ((words[r * wpr + c / 64] >> (c % 64)) & 1) as u32,
            Store::Dense(d) => d[r * self.ncols + c],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.p);
        match &mut self.store {
            Store::Bits { wpr, words } => {
                let w = &mut words[r * *wpr + c / 64];
                let bit = 1u64 << (c % 64);
                if v == 0 {
                    *w &= !bit;
                } else {
                    *w |= bit;
                }
            }
            Store::Dense(d) => d[r * self.ncols + c] = v,
        }
    }

    pub fn row(&self, r: usize) -> Vec<u32> {
        (0..self.ncols).map(|c| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> MatGFp {
        let mut t = MatGFp::zeros(self.p, self.ncols, self.nrows).unwrap();
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                let v = self.get(r, c);
                if v != 0 {
                    t.set(c, r, v);
                }
            }
        }
        t
    }

    /// Matrix product over GF(p). For GF(2), each output row is an XOR of
    /// the rows of `rhs` selected by the bits of the corresponding row here.
    pub fn mul(&self, rhs: &MatGFp) -> Result<MatGFp> {
        if self.p != rhs.p {
            return Err(Error::CharacteristicMismatch(self.p, rhs.p));
        }
        if self.ncols != rhs.nrows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let mut out = MatGFp::zeros(self.p, self.nrows, rhs.ncols)?;
        match (&self.store, &rhs.store, &mut out.store) {
            (
                Store::Bits { wpr, words },
                Store::Bits {
                    wpr: rwpr,
                    words: rwords,
                },
                Store::Bits {
                    wpr: owpr,
                    words: owords,
                },
            ) => {
                for r in 0..self.nrows {
                    let row = &words[r * wpr..(r + 1) * wpr];
                    let orow = &mut owords[r * *owpr..(r + 1) * *owpr];
                    for k in 0..self.ncols {
                        if (row[k / 64] >> (k % 64)) & 1 == 1 {
                            let brow = &rwords[k * rwpr..(k + 1) * rwpr];
                            for (o, b) in orow.iter_mut().zip(brow) {
                                *o ^= *b;
                            }
                        }
                    }
                }
            }
            _ => {
                let p = self.p as u64;
                for r in 0..self.nrows {
                    for c in 0..rhs.ncols {
                        let mut acc = 0u64;
                        for k in 0..self.ncols {
                            acc = (acc + self.get(r, k) as u64 * rhs.get(k, c) as u64) % p;
                        }
                        out.set(r, c, acc as u32);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Bits { words, .. } => words.iter().all(|&w| w == 0),
            Store::Dense(d) => d.iter().all(|&v| v == 0),
        }
    }

    /// Stacks `self` above `other` (same column count and characteristic).
    pub fn stack(&self, other: &MatGFp) -> Result<MatGFp> {
        if self.p != other.p {
            return Err(Error::CharacteristicMismatch(self.p, other.p));
        }
        if self.ncols != other.ncols {
            return Err(Error::DimensionMismatch(format!(
                "stack {} vs {} columns",
                self.ncols, other.ncols
            )));
        }
        let mut m = MatGFp::zeros(self.p, self.nrows + other.nrows, self.ncols)?;
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                let v = self.get(r, c);
                if v != 0 {
                    m.set(r, c, v);
                }
            }
        }
        for r in 0..other.nrows {
            for c in 0..self.ncols {
                let v = other.get(r, c);
                if v != 0 {
                    m.set(self.nrows + r, c, v);
                }
            }
        }
        Ok(m)
    }

    fn feed_row_into(&self, r: usize, acc: &mut RankAccumulator) {
        match &self.store {
            Store::Bits { wpr, words } => acc.push_bit_words(&words[r * wpr..(r + 1) * wpr]),
            Store::Dense(d) => acc.push_row(&d[r * self.ncols..(r + 1) * self.ncols]),
        }
    }

    /// Rank over GF(p). The input is left unmodified.
    pub fn rank(&self) -> usize {
        #[cfg(feature = "parallel")]
        if self.nrows >= PAR_RANK_MIN_ROWS {
            return self.rank_parallel();
        }
        let mut acc = RankAccumulator::new(self.p, self.ncols).unwrap();
        for r in 0..self.nrows {
            self.feed_row_into(r, &mut acc);
        }
        acc.rank()
    }

    #[cfg(feature = "parallel")]
    fn rank_parallel(&self) -> usize {
        use rayon::prelude::*;
        let threads = rayon::current_num_threads().max(1);
        let chunk = (self.nrows / (4 * threads)).max(1024);
        let starts: Vec<usize> = (0..self.nrows).step_by(chunk).collect();
        starts
            .into_par_iter()
            .map(|start| {
                let mut acc = RankAccumulator::new(self.p, self.ncols).unwrap();
                for r in start..(start + chunk).min(self.nrows) {
                    self.feed_row_into(r, &mut acc);
                }
                acc
            })
            .reduce(
                || RankAccumulator::new(self.p, self.ncols).unwrap(),
                |a, b| a.merge(b),
            )
            .rank()
    }

    /// Reduced row-echelon form and the (strictly increasing) pivot columns.
    /// The result has the same shape; zero rows sit at the bottom.
    pub fn rref(&self) -> (MatGFp, Vec<usize>) {
        let mut acc = RankAccumulator::new(self.p, self.ncols).unwrap();
        for r in 0..self.nrows {
            self.feed_row_into(r, &mut acc);
        }
        let (rows, pivots) = acc.finish_rref();
        let mut out = MatGFp::zeros(self.p, self.nrows, self.ncols).unwrap();
        for (i, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    out.set(i, c, v);
                }
            }
        }
        (out, pivots)
    }

    /// A basis of the right kernel `{ c : M c^T = 0 }`, one row per basis
    /// vector, in the canonical free-column form read from the RREF. The
    /// result has `ncols - rank` rows.
    pub fn right_kernel_basis(&self) -> MatGFp {
        let mut acc = RankAccumulator::new(self.p, self.ncols).unwrap();
        for r in 0..self.nrows {
            self.feed_row_into(r, &mut acc);
        }
        acc.kernel_basis()
    }
}

/// Streaming row reducer: feed rows one at a time, keeping at most `ncols`
/// pivot rows in memory. Used both by the in-memory operations above and by
/// rank computations over block iterators too large to materialize.
#[derive(Debug)]
pub struct RankAccumulator {
    engine: Engine,
}

#[derive(Debug)]
enum Engine {
    Gf2 {
        ncols: usize,
        wpr: usize,
        pivots: Vec<Option<Box<[u64]>>>,
        rank: usize,
    },
    Gfp {
        p: u32,
        ncols: usize,
        pivots: Vec<Option<Vec<u32>>>,
        rank: usize,
    },
}

impl RankAccumulator {
    pub fn new(p: u32, ncols: usize) -> Result<RankAccumulator> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        let engine = if p == 2 {
            Engine::Gf2 {
                ncols,
                wpr: words_per_row(ncols),
                pivots: vec![None; ncols],
                rank: 0,
            }
        } else {
            Engine::Gfp {
                p,
                ncols,
                pivots: vec![None; ncols],
                rank: 0,
            }
        };
        Ok(RankAccumulator { engine })
    }

    pub fn ncols(&self) -> usize {
        match &self.engine {
            Engine::Gf2 { ncols, .. } | Engine::Gfp { ncols, .. } => *ncols,
        }
    }

    /// Feeds a 0/1 row given by its support (sorted or not).
    pub fn push_support(&mut self, support: &[u32]) {
        match &mut self.engine {
            Engine::Gf2 { wpr, .. } => {
                let mut row = vec![0u64; *wpr];
                for &c in support {
                    row[c as usize / 64] |= 1 << (c % 64);
                }
                self.push_bit_words_owned(row.into_boxed_slice());
            }
            Engine::Gfp { p, ncols, .. } => {
                let mut row = vec![0u32; *ncols];
                for &c in support {
                    row[c as usize] = (row[c as usize] + 1) % *p;
                }
                self.push_row_owned(row);
            }
        }
    }

    /// Feeds a dense row of residues.
    pub fn push_row(&mut self, row: &[u32]) {
        match &mut self.engine {
            Engine::Gf2 { wpr, .. } => {
                let mut bits = vec![0u64; *wpr];
                for (c, &v) in row.iter().enumerate() {
                    if v & 1 == 1 {
                        bits[c / 64] |= 1 << (c % 64);
                    }
                }
                self.push_bit_words_owned(bits.into_boxed_slice());
            }
            Engine::Gfp { p, .. } => {
                let p = *p;
                self.push_row_owned(row.iter().map(|&v| v % p).collect());
            }
        }
    }

    fn push_bit_words(&mut self, words: &[u64]) {
        self.push_bit_words_owned(words.to_vec().into_boxed_slice());
    }

    fn push_bit_words_owned(&mut self, mut row: Box<[u64]>) {
        let Engine::Gf2 { pivots, rank, .. } = &mut self.engine else {
            panic!("bit rows pushed into an odd-characteristic accumulator");
        };
        loop {
            let Some(c) = lowest_set_bit(&row) else {
                return;
            };
            match &pivots[c] {
                Some(pivot) => xor_rows(&mut row, pivot),
                None => {
                    pivots[c] = Some(row);
                    *rank += 1;
                    return;
                }
            }
        }
    }

    fn push_row_owned(&mut self, mut row: Vec<u32>) {
        let Engine::Gfp {
            p, pivots, rank, ..
        } = &mut self.engine
        else {
            panic!("dense rows pushed into a GF(2) accumulator");
        };
        let p64 = *p as u64;
        let mut c = 0;
        while c < row.len() {
            if row[c] == 0 {
                c += 1;
                continue;
            }
            match &pivots[c] {
                Some(pivot) => {
                    // pivot[c] == 1, so subtract row[c] * pivot.
                    let f = row[c] as u64;
                    for (rv, &pv) in row[c..].iter_mut().zip(&pivot[c..]) {
                        *rv = ((*rv as u64 + p64 * p64 - f * pv as u64 % p64) % p64) as u32;
                    }
                    c += 1;
                }
                None => {
                    let inv = mod_inverse(row[c], *p);
                    for rv in row[c..].iter_mut() {
                        *rv = (*rv as u64 * inv as u64 % p64) as u32;
                    }
                    pivots[c] = Some(row);
                    *rank += 1;
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        match &self.engine {
            Engine::Gf2 { rank, .. } | Engine::Gfp { rank, .. } => *rank,
        }
    }

    /// Absorbs every pivot row of `other`. Rank of the merge equals the rank
    /// of the concatenated row sets regardless of order.
    pub fn merge(mut self, other: RankAccumulator) -> RankAccumulator {
        match other.engine {
            Engine::Gf2 { pivots, .. } => {
                for row in pivots.into_iter().flatten() {
                    self.push_bit_words_owned(row);
                }
            }
            Engine::Gfp { pivots, .. } => {
                for row in pivots.into_iter().flatten() {
                    self.push_row_owned(row);
                }
            }
        }
        self
    }

    /// Back-substitutes the pivot rows into reduced row-echelon form.
    /// Returns the nonzero RREF rows (pivot order) and the pivot columns.
    pub fn finish_rref(self) -> (Vec<Vec<u32>>, Vec<usize>) {
        match self.engine {
            Engine::Gf2 {
                ncols, mut pivots, ..
            } => {
                let cols: Vec<usize> = (0..ncols).filter(|&c| pivots[c].is_some()).collect();
                // Eliminate each pivot column from every earlier pivot row.
                for (i, &ci) in cols.iter().enumerate() {
                    for &cj in &cols[i + 1..] {
                        let needs = {
                            let ri = pivots[ci].as_ref().unwrap();
                            (ri[cj / 64] >> (cj % 64)) & 1 == 1
                        };
                        if needs {
                            let rj = pivots[cj].take().unwrap();
                            xor_rows(pivots[ci].as_mut().unwrap(), &rj);
                            pivots[cj] = Some(rj);
                        }
                    }
                }
                let rows = cols
                    .iter()
                    .map(|&c| {
                        let bits = pivots[c].as_ref().unwrap();
                        (0..ncols)
                            .map(|j| ((bits[j / 64] >> (j % 64)) & 1) as u32)
                            .collect()
                    })
                    .collect();
                (rows, cols)
            }
            Engine::Gfp {
                p,
                ncols,
                mut pivots,
                ..
            } => {
                let p64 = p as u64;
                let cols: Vec<usize> = (0..ncols).filter(|&c| pivots[c].is_some()).collect();
                for (i, &ci) in cols.iter().enumerate() {
                    for &cj in &cols[i + 1..] {
                        let f = pivots[ci].as_ref().unwrap()[cj] as u64;
                        if f != 0 {
                            let rj = pivots[cj].take().unwrap();
                            {
                                let ri = pivots[ci].as_mut().unwrap();
                                for (rv, &pv) in ri[cj..].iter_mut().zip(&rj[cj..]) {
                                    *rv =
                                        ((*rv as u64 + p64 * p64 - f * pv as u64 % p64) % p64) as u32;
                                }
                            }
                            pivots[cj] = Some(rj);
                        }
                    }
                }
                let rows = cols
                    .iter()
                    .map(|&c| pivots[c].take().unwrap())
                    .collect();
                (rows, cols)
            }
        }
    }

    /// The canonical right-kernel basis read off the RREF free columns,
    /// ordered by free-column index.
    pub fn kernel_basis(self) -> MatGFp {
        let (p, ncols) = match &self.engine {
            Engine::Gf2 { ncols, .. } => (2, *ncols),
            Engine::Gfp { p, ncols, .. } => (*p, *ncols),
        };
        let (rows, pivots) = self.finish_rref();
        let is_pivot = {
            let mut v = vec![false; ncols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = MatGFp::zeros(p, free.len(), ncols).unwrap();
        for (bi, &f) in free.iter().enumerate() {
            basis.set(bi, f, 1);
            for (ri, &c) in pivots.iter().enumerate() {
                let v = rows[ri][f];
                if v != 0 {
                    basis.set(bi, c, (p - v) % p);
                }
            }
        }
        basis
    }
}

#[inline]
fn lowest_set_bit(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

#[inline]
fn xor_rows(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // p is prime, a != 0: Fermat.
    let mut base = a as u64 % p as u64;
    let mut n = p as u64 - 2;
    let mut acc = 1u64;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        n >>= 1;
    }
    acc as u32
}

/// True iff the row spaces coincide, decided by rank of each matrix and of
/// their stack.
pub fn row_space_equal(a: &MatGFp, b: &MatGFp) -> Result<bool> {
    if a.p() != b.p() {
        return Err(Error::CharacteristicMismatch(a.p(), b.p()));
    }
    if a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "row_space_equal: {} vs {} columns",
            a.ncols(),
            b.ncols()
        )));
    }
    let ra = a.rank();
    if ra != b.rank() {
        return Ok(false);
    }
    Ok(a.stack(b)?.rank() == ra)
}

/// A systematic encoder for the row space of a full-rank generator matrix:
/// messages reappear verbatim on the information set `sigma`.
#[derive(Debug, Clone)]
pub struct SystematicEncoder {
    rows: MatGFp,
    sigma: Vec<usize>,
}

impl SystematicEncoder {
    /// Information set: `encode(m)[sigma[i]] == m[i]`.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    pub fn n(&self) -> usize {
        self.rows.ncols()
    }

    /// RREF basis rows of the code; row `i` is the codeword with message
    /// `e_i`.
    pub fn basis(&self) -> &MatGFp {
        &self.rows
    }

    pub fn encode(&self, msg: &[u32]) -> Result<Vec<u32>> {
        if msg.len() != self.k() {
            return Err(Error::DimensionMismatch(format!(
                "message has {} symbols, expected {}",
                msg.len(),
                self.k()
            )));
        }
        let p = self.rows.p() as u64;
        let mut out = vec![0u32; self.n()];
        for (i, &m) in msg.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let g = self.rows.get(i, j);
                if g != 0 {
                    *o = ((*o as u64 + m as u64 * g as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }
}

/// Derives the systematic encoder of `g`'s row space; `g` must have full row
/// rank. `sigma` is the pivot-column list of `rref(g)`.
pub fn systematic_encoder(g: &MatGFp) -> Result<SystematicEncoder> {
    let (r, pivots) = g.rref();
    if pivots.len() < g.nrows() {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            rows: g.nrows(),
        });
    }
    let mut rows = MatGFp::zeros(g.p(), pivots.len(), g.ncols())?;
    for i in 0..pivots.len() {
        for c in 0..g.ncols() {
            let v = r.get(i, c);
            if v != 0 {
                rows.set(i, c, v);
            }
        }
    }
    Ok(SystematicEncoder {
        rows,
        sigma: pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: u32, rows: &[&[u32]]) -> MatGFp {
        let ncols = rows.first().map_or(0, |r| r.len());
        MatGFp::from_rows(p, ncols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Plain mod-p elimination, kept deliberately simple as the oracle.
    fn naive_rank(rows: &[Vec<u32>], p: u32) -> usize {
        let mut rows: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| (v % p) as u64).collect())
            .collect();
        let ncols = rows.first().map_or(0, |r| r.len());
        let p = p as u64;
        let mut rank = 0;
        for c in 0..ncols {
            let Some(pi) = (rank..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else {
                continue;
            };
            rows.swap(rank, pi);
            let inv = {
                let mut x = 1u64;
                for _ in 0..p - 2 {
                    x = x * rows[rank][c] % p;
                }
                x
            };
            for v in rows[rank].iter_mut() {
                *v = *v * inv % p;
            }
            let pivot_row = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && !row[c].is_multiple_of(p) {
                    let f = row[c];
                    for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                        *v = (*v + p * p - f * pv % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_basic() {
        for p in [2u32, 3, 5] {
            let id = MatGFp::identity(p, 7).unwrap();
            assert_eq!(id.rank(), 7);
            assert_eq!(MatGFp::zeros(p, 4, 6).unwrap().rank(), 0);
        }
    }

    #[test]
    fn rref_examples() {
        let (r, piv) = MatGFp::zeros(2, 3, 3).unwrap().rref();
        assert!(r.is_zero());
        assert!(piv.is_empty());

        let id = MatGFp::identity(3, 4).unwrap();
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2, 3]);

        let (r, piv) = m(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(MatGFp::identity(2, 5).unwrap().right_kernel_basis().nrows(), 0);

        // [1 1 1] over GF(2): canonical basis {110, 101}.
        let k = m(2, &[&[1, 1, 1]]).right_kernel_basis();
        assert_eq!(k, m(2, &[&[1, 1, 0], &[1, 0, 1]]));
    }

    #[test]
    fn kernel_orthogonality_and_dimension() {
        let mat = m(
            3,
            &[&[1, 2, 0, 1, 1], &[0, 1, 1, 2, 0], &[1, 0, 1, 0, 2], &[2, 1, 1, 0, 0]],
        );
        let k = mat.right_kernel_basis();
        assert_eq!(mat.rank() + k.nrows(), mat.ncols());
        assert!(mat.mul(&k.transpose()).unwrap().is_zero());
    }

    #[test]
    fn systematic_encoder_examples() {
        // Identity: sigma = 0..k, encode = identity.
        let enc = systematic_encoder(&MatGFp::identity(5, 3).unwrap()).unwrap();
        assert_eq!(enc.sigma(), &[0, 1, 2]);
        assert_eq!(enc.encode(&[4, 0, 2]).unwrap(), vec![4, 0, 2]);

        // Repetition [1 1] over GF(2).
        let enc = systematic_encoder(&m(2, &[&[1, 1]])).unwrap();
        assert_eq!(enc.sigma(), &[0]);
        assert_eq!(enc.encode(&[1]).unwrap(), vec![1, 1]);

        // Rank-deficient input is an error.
        assert!(matches!(
            systematic_encoder(&m(2, &[&[1, 1], &[1, 1]])),
            Err(Error::RankDeficient { rank: 1, rows: 2 })
        ));
    }

    #[test]
    fn systematic_encoder_evaluation_code() {
        // The [9, 3] evaluation code of affine functions on GF(3)^2: sigma
        // is the first three pivot columns, and every message reappears on
        // it. Exhaustive over all 27 messages.
        let g = m(
            3,
            &[
                &[1, 1, 1, 1, 1, 1, 1, 1, 1],
                &[0, 0, 0, 1, 1, 1, 2, 2, 2],
                &[0, 1, 2, 0, 1, 2, 0, 1, 2],
            ],
        );
        let enc = systematic_encoder(&g).unwrap();
        // Columns {0, 1, 2} are one group of the design and are dependent
        // there (rank 2), so the leftmost information set skips to column 3.
        assert_eq!(enc.sigma(), &[0, 1, 3]);
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    let msg = [a, b, c];
                    let cw = enc.encode(&msg).unwrap();
                    for (i, &pos) in enc.sigma().iter().enumerate() {
                        assert_eq!(cw[pos], msg[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn row_space_equal_examples() {
        let g = m(3, &[&[1, 2, 1], &[0, 1, 2]]);
        let (r, _) = g.rref();
        // rref rows span the same space (drop the zero rows by rank check).
        assert!(row_space_equal(&g, &r).unwrap());
        // Scaling by 2 over GF(3).
        let g2 = m(3, &[&[2, 1, 2], &[0, 2, 1]]);
        assert!(row_space_equal(&g, &g2).unwrap());
        assert!(!row_space_equal(&MatGFp::identity(2, 2).unwrap(), &m(2, &[&[1, 1], &[0, 0]])).unwrap());
    }

    #[test]
    fn streaming_matches_in_memory() {
        let rows: Vec<Vec<u32>> = (0..200u32)
            .map(|i| {
                (0..50u32)
                    .map(|j| (i.wrapping_mul(31) ^ j.wrapping_mul(17)) % 3)
                    .collect()
            })
            .collect();
        let mat = MatGFp::from_rows(3, 50, &rows).unwrap();
        let mut acc = RankAccumulator::new(3, 50).unwrap();
        for r in &rows {
            acc.push_row(r);
        }
        assert_eq!(acc.rank(), mat.rank());
        assert_eq!(mat.rank(), naive_rank(&rows, 3));
    }

    #[test]
    fn support_rows_match_dense() {
        let supports: Vec<Vec<u32>> = vec![vec![0, 3, 9], vec![1, 3], vec![0, 1, 9], vec![2]];
        for p in [2u32, 3] {
            let mat = MatGFp::from_supports(p, supports.len(), 10, &supports).unwrap();
            let dense: Vec<Vec<u32>> = supports
                .iter()
                .map(|s| {
                    let mut row = vec![0u32; 10];
                    for &c in s {
                        row[c as usize] = 1;
                    }
                    row
                })
                .collect();
            assert_eq!(mat.rank(), naive_rank(&dense, p));
            let mut acc = RankAccumulator::new(p, 10).unwrap();
            for s in &supports {
                acc.push_support(s);
            }
            assert_eq!(acc.rank(), mat.rank());
        }
    }

    proptest! {
        /// Bit-packed and naive elimination agree on random GF(2) matrices
        /// (up to 256x256), and rank is invariant under transpose and row
        /// permutation.
        #[test]
        fn gf2_matches_naive(seed in any::<u64>(), nrows in 1usize..48, ncols in 1usize..48) {
            let mut state = seed | 1;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let rows: Vec<Vec<u32>> = (0..nrows)
                .map(|_| (0..ncols).map(|_| (next() & 1) as u32).collect())
                .collect();
            let mat = MatGFp::from_rows(2, ncols, &rows).unwrap();
            let rank = mat.rank();
            prop_assert_eq!(rank, naive_rank(&rows, 2));
            prop_assert_eq!(mat.transpose().rank(), rank);

            let mut permuted = rows.clone();
            let plen = permuted.len();
            for i in (1..plen).rev() {
                permuted.swap(i, (next() as usize) % (i + 1));
            }
            prop_assert_eq!(MatGFp::from_rows(2, ncols, &permuted).unwrap().rank(), rank);

            // Column permutation preserves the rank as well.
            let mut cols: Vec<usize> = (0..ncols).collect();
            for i in (1..ncols).rev() {
                cols.swap(i, (next() as usize) % (i + 1));
            }
            let col_permuted: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c]).collect())
                .collect();
            prop_assert_eq!(MatGFp::from_rows(2, ncols, &col_permuted).unwrap().rank(), rank);

            let k = mat.right_kernel_basis();
            prop_assert_eq!(k.nrows() + rank, ncols);
            prop_assert!(mat.mul(&k.transpose()).unwrap().is_zero());
        }

        #[test]
        fn gfp_matches_naive(seed in any::<u64>(), nrows in 1usize..24, ncols in 1usize..24, pi in 0usize..3) {
            let p = [3u32, 5, 7][pi];
            let mut state = seed | 1;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let rows: Vec<Vec<u32>> = (0..nrows)
                .map(|_| (0..ncols).map(|_| (next() % p as u64) as u32).collect())
                .collect();
            let mat = MatGFp::from_rows(p, ncols, &rows).unwrap();
            prop_assert_eq!(mat.rank(), naive_rank(&rows, p));
            prop_assert_eq!(mat.transpose().rank(), mat.rank());
            let k = mat.right_kernel_basis();
            prop_assert!(mat.mul(&k.transpose()).unwrap().is_zero());
            prop_assert_eq!(k.nrows() + mat.rank(), ncols);
        }
    }

    #[test]
    fn bitpacked_vs_naive_large() {
        // One deterministic 256x256 instance at the size bound.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let rows: Vec<Vec<u32>> = (0..256)
            .map(|_| (0..256).map(|_| (next() & 1) as u32).collect())
            .collect();
        let mat = MatGFp::from_rows(2, 256, &rows).unwrap();
        assert_eq!(mat.rank(), naive_rank(&rows, 2));
    }
}
