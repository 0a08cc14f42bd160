//! Codes of designs and incidence codes.
//!
//! The code of a design is the kernel of its incidence matrix: every block's
//! incidence vector is a parity check, so a codeword sums to zero over every
//! block. For a transversal design this is exactly what the retrieval
//! protocol needs. The incidence code IC_q(C0) of a base code C0 is the code
//! of the transversal design built from C0's orthogonal array.
//!
//! All ranks are taken over the prime subfield GF(p): a 0/1 matrix has the
//! same rank over GF(p^e) for every e, so one generator matrix serves every
//! extension alphabet.

use crate::basecodes::{oa_from_code, LinearCode};
use crate::comb::{binomial, unrank_combination};
use crate::design::{td_from_oa, TransversalDesign};
use crate::error::{Error, Result};
use crate::ff::{Felt, FieldSpec};
use crate::linalg::{row_space_equal, systematic_encoder, MatGFp, RankAccumulator};
use crate::par::indexed_map_reduce;
use std::collections::BTreeMap;
use std::io::{BufRead, Write};

/// The kernel code of a transversal design's incidence matrix, over the
/// prime subfield of its symbol alphabet.
#[derive(Debug, Clone)]
pub struct IncidenceCode {
    field: FieldSpec,
    n: usize,
    k: usize,
    /// RREF generator over GF(p); rows restrict to the identity on `sigma`.
    gen: MatGFp,
    sigma: Vec<usize>,
    ell: usize,
    s: usize,
    lambda: usize,
    strength: usize,
}

impl IncidenceCode {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Generator matrix over GF(p), in reduced row-echelon form.
    pub fn generator(&self) -> &MatGFp {
        &self.gen
    }

    /// Information set: encoding puts message symbol i at point `sigma[i]`.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    /// Group (server) of a codeword position.
    pub fn group_of(&self, col: usize) -> usize {
        col / self.s
    }

    /// Systematic encoding of a k-symbol database over GF(p^e), using the
    /// GF(p) generator with entries acting as integer multiples.
    pub fn encode(&self, msg: &[Felt]) -> Result<Vec<Felt>> {
        if msg.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "message has {} symbols, expected {}",
                msg.len(),
                self.k
            )));
        }
        let f = &self.field;
        let mut out = vec![Felt::ZERO; self.n];
        for (i, &m) in msg.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let g = self.gen.get(i, j);
                if g != 0 {
                    *o = f.add(*o, f.scale_residue(m, g));
                }
            }
        }
        Ok(out)
    }

    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "IC {} {} {} {} {} {}",
            self.field.p(),
            self.field.e(),
            self.n,
            self.k,
            self.ell,
            self.s
        )?;
        for r in 0..self.k {
            let line: Vec<String> = (0..self.n).map(|c| self.gen.get(r, c).to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        let sig: Vec<String> = self.sigma.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", sig.join(" "))?;
        Ok(())
    }

    /// Reads a code file and adopts the index and strength of its paired
    /// design (the code file itself stores only `p e n k ell s`).
    pub fn read_with_design(
        r: &mut impl BufRead,
        design: &TransversalDesign,
    ) -> Result<IncidenceCode> {
        let mut header = String::new();
        r.read_line(&mut header)
            .map_err(|e| Error::Parse(e.to_string()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 7 || parts[0] != "IC" {
            return Err(Error::Parse("expected header: IC p e n k ell s".into()));
        }
        let nums: Vec<usize> = parts[1..]
            .iter()
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad integer {v}"))))
            .collect::<Result<_>>()?;
        let (p, e, n, k, ell, s) = (nums[0], nums[1], nums[2], nums[3], nums[4], nums[5]);
        if ell != design.ell() || s != design.s() || n != design.n_points() {
            return Err(Error::Parse(
                "code file does not match the design file".into(),
            ));
        }
        let field = FieldSpec::new(p as u32, e as u32)?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let mut line = String::new();
            r.read_line(&mut line)
                .map_err(|e| Error::Parse(e.to_string()))?;
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad entry {v}"))))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse("generator row length mismatch".into()));
            }
            rows.push(row);
        }
        let mut line = String::new();
        r.read_line(&mut line)
            .map_err(|e| Error::Parse(e.to_string()))?;
        let sigma: Vec<usize> = line
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad sigma entry {v}"))))
            .collect::<Result<_>>()?;
        if sigma.len() != k {
            return Err(Error::Parse("sigma length mismatch".into()));
        }
        let gen = MatGFp::from_rows(field.p(), n, &rows)?;
        Ok(IncidenceCode {
            field,
            n,
            k,
            gen,
            sigma,
            ell,
            s,
            lambda: design.lambda(),
            strength: design.strength(),
        })
    }
}

/// The code of a transversal design over GF(p^e): kernel basis of the
/// incidence matrix over GF(p), brought to RREF so the information set is
/// canonical.
pub fn code_of_design(design: &TransversalDesign, field: &FieldSpec) -> Result<IncidenceCode> {
    let m = design.incidence_matrix(field.p())?;
    let kernel = m.right_kernel_basis();
    let k = kernel.nrows();
    let n = design.n_points();
    let (gen, sigma) = if k == 0 {
        (MatGFp::zeros(field.p(), 0, n)?, Vec::new())
    } else {
        let enc = systematic_encoder(&kernel)?;
        (enc.basis().clone(), enc.sigma().to_vec())
    };
    Ok(IncidenceCode {
        field: field.clone(),
        n,
        k,
        gen,
        sigma,
        ell: design.ell(),
        s: design.s(),
        lambda: design.lambda(),
        strength: design.strength(),
    })
}

/// Dimension of the design code without building the kernel: `n` minus the
/// streamed rank of the incidence rows. Suitable for block iterators far too
/// large to hold in memory.
pub fn design_code_dimension<I, S>(npoints: usize, p: u32, blocks: I) -> Result<usize>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[u32]>,
{
    let mut acc = RankAccumulator::new(p, npoints)?;
    for b in blocks {
        acc.push_support(b.as_ref());
    }
    Ok(npoints - acc.rank())
}

/// IC_q(C0): the code of the design defined by C0's orthogonal array.
pub fn incidence_code(c0: &LinearCode, target: &FieldSpec) -> Result<IncidenceCode> {
    let (code, _) = incidence_code_with_design(c0, target)?;
    Ok(code)
}

/// As [`incidence_code`], also returning the underlying design (needed to
/// run the retrieval protocol).
pub fn incidence_code_with_design(
    c0: &LinearCode,
    target: &FieldSpec,
) -> Result<(IncidenceCode, TransversalDesign)> {
    let oa = oa_from_code(c0)?;
    let design = td_from_oa(&oa)?;
    let code = code_of_design(&design, target)?;
    Ok((code, design))
}

/// Dimension of IC_p(C0) by direct rank of the incidence rows, skipping the
/// kernel construction. Matches `incidence_code(c0, GF(p)).k()`.
pub fn incidence_code_dimension(c0: &LinearCode, p: u32) -> Result<usize> {
    let count = c0.codeword_count();
    if count > crate::basecodes::MAX_ENUMERATION {
        return Err(Error::BudgetExceeded(count, crate::basecodes::MAX_ENUMERATION));
    }
    let s = c0.field().q() as usize;
    let n = s * c0.len();
    let mut acc = RankAccumulator::new(p, n)?;
    let mut support = vec![0u32; c0.len()];
    for cw in c0.codewords() {
        for (j, c) in cw.iter().enumerate() {
            support[j] = (j * s) as u32 + c.value();
        }
        acc.push_support(&support);
    }
    Ok(n - acc.rank())
}

/// Report of the divisibility-based dimension bounds for `IC(C0)` with C0
/// p-divisible: the integer Gram identity `(M M^T)_{c,c'} = ell - d(c,c')`,
/// the containment of `dual /\ parity` in the code (all of the dual when p
/// divides ell), and the resulting dimension bound.
#[derive(Debug, Clone)]
pub struct DivisibilityReport {
    pub p: u32,
    pub ell: usize,
    pub n: usize,
    pub k: usize,
    pub gram_identity_ok: bool,
    pub intersection_contained: bool,
    pub p_divides_ell: bool,
    /// `Some(true)` iff p | ell and the dual is contained in the code.
    pub dual_contained: Option<bool>,
    /// Required dimension: n/2 when p | ell, else (n-1)/2 (as 2k >= bound).
    pub two_k_bound: usize,
    pub dim_bound_met: bool,
}

impl DivisibilityReport {
    pub fn ok(&self) -> bool {
        self.gram_identity_ok
            && self.intersection_contained
            && self.dual_contained.unwrap_or(true)
            && self.dim_bound_met
    }
}

pub fn check_divisibility_bounds(
    code: &IncidenceCode,
    c0: &LinearCode,
) -> Result<DivisibilityReport> {
    let p = code.field().p();
    if !c0.is_p_divisible(p)? {
        return Err(Error::NotDivisible(p));
    }
    let ell = c0.len();
    let words: Vec<Vec<u32>> = c0
        .codewords()
        .map(|cw| cw.iter().map(|c| c.value()).collect())
        .collect();
    let nrows = words.len();
    let s = c0.field().q() as usize;
    let n = s * ell;
    debug_assert_eq!(n, code.n());

    // One bit row per codeword: the block incidence vector.
    let m = MatGFp::from_supports(
        2, // stored as a bitset regardless of p; only supports are read
        nrows,
        n,
        words.iter().map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, &sym)| (j * s) as u32 + sym)
                .collect::<Vec<u32>>()
        }),
    )?;

    // Gram identity over the integers, and the generator checks of the
    // intersection, in one pass over the row pairs. For each pair (c, c'):
    // agreements = (M M^T)_{c,c'} must equal ell - d(c, c'); mod p, all
    // entries must equal ell (rows of M M^T mod p are constant), which is
    // exactly M (M_c - M_{c'})^T = 0 for all generators of the intersection.
    let (gram_ok, rows_constant) = indexed_map_reduce(
        nrows,
        |i| {
            let mut gram = true;
            let first_agree = agreements(&m, i, 0, n);
            let mut constant = true;
            for j in 0..nrows {
                let agree = agreements(&m, i, j, n);
                let dist = words[i]
                    .iter()
                    .zip(&words[j])
                    .filter(|(a, b)| a != b)
                    .count();
                if agree != ell - dist {
                    gram = false;
                }
                if agree % p as usize != first_agree % p as usize {
                    constant = false;
                }
            }
            (gram, constant)
        },
        (true, true),
        |a, b| (a.0 && b.0, a.1 && b.1),
    );

    let p_divides_ell = ell.is_multiple_of(p as usize);
    let dual_contained = if p_divides_ell {
        // C_dual subset of C iff M M^T = 0 mod p: rows are constant mod p
        // and the diagonal agreement is ell = 0 mod p.
        Some(rows_constant)
    } else {
        None
    };
    let two_k_bound = if p_divides_ell { n } else { n - 1 };
    Ok(DivisibilityReport {
        p,
        ell,
        n,
        k: code.k(),
        gram_identity_ok: gram_ok,
        intersection_contained: rows_constant,
        p_divides_ell,
        dual_contained,
        two_k_bound,
        dim_bound_met: 2 * code.k() >= two_k_bound,
    })
}

fn agreements(m: &MatGFp, i: usize, j: usize, ncols: usize) -> usize {
    // Blocks meet each group once, so agreement = |B_i /\ B_j| as sets.
    let mut count = 0;
    for c in 0..ncols {
        if m.get(i, c) == 1 && m.get(j, c) == 1 {
            count += 1;
        }
    }
    count
}

/// For every `ell`-subset x of GF(q): the dimension of IC_p(RS_2(x)).
/// Returns the histogram dimension -> number of subsets. Subsets are
/// unordered (coordinate permutations preserve the dimension).
pub fn rs2_dimension_census(field: &FieldSpec, ell: usize) -> Result<BTreeMap<usize, u64>> {
    let q = field.q() as usize;
    if ell < 2 || ell > q {
        return Err(Error::InvalidArgument(format!(
            "census needs 2 <= ell <= q, got ell={ell} q={q}"
        )));
    }
    let subsets = binomial(q, ell);
    if subsets > 10_000_000 {
        return Err(Error::BudgetExceeded(subsets, 10_000_000));
    }
    let p = field.p();
    let n = q * ell;
    let hist = indexed_map_reduce(
        subsets as usize,
        |rank| {
            let subset = unrank_combination(q, ell, rank as u128);
            let xs: Vec<Felt> = subset.iter().map(|&v| field.felt(v as u32).unwrap()).collect();
            let mut acc = RankAccumulator::new(p, n).unwrap();
            let mut support = vec![0u32; ell];
            // Codewords of RS_2(x): evaluations of a*X + b.
            for a in field.elements() {
                for b in field.elements() {
                    for (j, &x) in xs.iter().enumerate() {
                        let sym = field.add(field.mul(a, x), b);
                        support[j] = (j * q) as u32 + sym.value();
                    }
                    acc.push_support(&support);
                }
            }
            let dim = n - acc.rank();
            let mut map = BTreeMap::new();
            map.insert(dim, 1u64);
            map
        },
        BTreeMap::new(),
        |mut a, b| {
            for (dim, count) in b {
                *a.entry(dim).or_insert(0) += count;
            }
            a
        },
    );
    Ok(hist)
}

/// Verifies that IC(puncture(C0, positions)) equals the shortening of
/// IC(C0) on the point columns of the removed groups.
pub fn puncture_shortening_holds(
    c0: &LinearCode,
    positions: &[usize],
    target: &FieldSpec,
) -> Result<bool> {
    let full = incidence_code(c0, target)?;
    if positions.is_empty() {
        return Ok(true);
    }
    let punctured = c0.puncture(positions)?;
    let short = incidence_code(&punctured, target)?;

    let s = full.s();
    let mut removed = vec![false; c0.len()];
    for &pos in positions {
        removed[pos] = true;
    }
    let removed_cols: Vec<usize> = (0..c0.len())
        .filter(|&g| removed[g])
        .flat_map(|g| g * s..(g + 1) * s)
        .collect();
    let kept_cols: Vec<usize> = (0..full.n())
        .filter(|c| !removed_cols.contains(c))
        .collect();

    // Messages whose codeword vanishes on the removed columns: the right
    // kernel of the k x |Z| column restriction, transposed.
    let p = full.field().p();
    let gen = full.generator();
    let mut restricted_t = MatGFp::zeros(p, removed_cols.len(), full.k())?;
    for (ri, &c) in removed_cols.iter().enumerate() {
        for row in 0..full.k() {
            let v = gen.get(row, c);
            if v != 0 {
                restricted_t.set(ri, row, v);
            }
        }
    }
    let msgs = restricted_t.right_kernel_basis();
    // Shortened generator: those codewords, restricted to the kept columns.
    let sub = msgs.mul(gen)?;
    let mut shortened = MatGFp::zeros(p, msgs.nrows(), kept_cols.len())?;
    for r in 0..msgs.nrows() {
        for (ci, &c) in kept_cols.iter().enumerate() {
            let v = sub.get(r, c);
            if v != 0 {
                shortened.set(r, ci, v);
            }
        }
    }
    row_space_equal(&shortened, short.generator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basecodes::{
        golay12_ternary, golay24_binary, mds_q_plus_2, parity_check_code, rm1, rs_full,
    };
    use crate::design::td_affine;

    fn gf(p: u32, e: u32) -> FieldSpec {
        FieldSpec::new(p, e).unwrap()
    }

    #[test]
    fn affine_f8_code_dimensions() {
        let d = td_affine(2, &gf(2, 3)).unwrap();
        // Over GF(2): the known dimension 37 on 64 points.
        let c = code_of_design(&d, &gf(2, 1)).unwrap();
        assert_eq!((c.n(), c.k()), (64, 37));
        // The generator really is a kernel of the incidence matrix.
        let m = d.incidence_matrix(2).unwrap();
        assert!(m.mul(&c.generator().transpose()).unwrap().is_zero());
        assert_eq!(c.k() + m.rank(), c.n());

        // Over GF(3): 3 does not divide lambda*s = 8, so every codeword is
        // constant on every group and the dimension is at most ell.
        let c3 = code_of_design(&d, &gf(3, 1)).unwrap();
        assert!(c3.k() <= d.ell());
        for r in 0..c3.k() {
            for g in 0..d.ell() {
                let v = c3.generator().get(r, g * d.s());
                for loc in 1..d.s() {
                    assert_eq!(c3.generator().get(r, g * d.s() + loc), v);
                }
            }
        }
    }

    #[test]
    fn sigma_is_an_information_set() {
        let d = td_affine(2, &gf(3, 1)).unwrap();
        let f9 = gf(3, 2);
        let c = code_of_design(&d, &f9).unwrap();
        assert_eq!(c.k(), 3);
        // Exhaustive over all 3-symbol messages over GF(9) is large; check
        // all messages over the prime subfield plus a few extension ones.
        for m0 in 0..9u32 {
            for m1 in 0..3u32 {
                for m2 in 0..3u32 {
                    let msg = vec![
                        f9.felt(m0).unwrap(),
                        f9.felt(m1).unwrap(),
                        f9.felt(m2).unwrap(),
                    ];
                    let cw = c.encode(&msg).unwrap();
                    for (i, &pos) in c.sigma().iter().enumerate() {
                        assert_eq!(cw[pos], msg[i]);
                    }
                    // Every block sums to zero.
                    for b in d.blocks() {
                        let mut acc = Felt::ZERO;
                        for &x in b {
                            acc = f9.add(acc, cw[x as usize]);
                        }
                        assert!(acc.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn worked_incidence_code_over_gf4_base() {
        // IC_2(RS_2(F_4)): n = 16, k = 7, with the known generator row
        // space.
        let f4 = gf(2, 2);
        let (code, design) = incidence_code_with_design(&rs_full(2, &f4).unwrap(), &gf(2, 1)).unwrap();
        assert_eq!((code.n(), code.k()), (16, 7));
        assert_eq!((design.ell(), design.s()), (4, 4));
        let printed: Vec<Vec<u32>> = vec![
            vec![1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0],
            vec![0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1],
            vec![0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 1, 0],
            vec![0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1, 0, 1, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1],
        ];
        let g = MatGFp::from_rows(2, 16, &printed).unwrap();
        assert!(row_space_equal(code.generator(), &g).unwrap());
    }

    #[test]
    fn incidence_code_dimension_fast_path_agrees() {
        let f4 = gf(2, 2);
        let c0 = rs_full(2, &f4).unwrap();
        assert_eq!(
            incidence_code_dimension(&c0, 2).unwrap(),
            incidence_code(&c0, &gf(2, 1)).unwrap().k()
        );
        let f3 = gf(3, 1);
        let pc = parity_check_code(3, &f3).unwrap();
        assert_eq!(
            incidence_code_dimension(&pc, 3).unwrap(),
            incidence_code(&pc, &f3).unwrap().k()
        );
    }

    #[test]
    fn golay_and_small_base_code_dimensions() {
        // Ternary Golay: n = 36, k = 18 (the bound n/2 is attained).
        let g3 = golay12_ternary();
        let c = incidence_code(&g3, &gf(3, 1)).unwrap();
        assert_eq!((c.n(), c.k()), (36, 18));

        // Hyperoval [6,3,4] over GF(4): n = 24, k = 12.
        let hv = mds_q_plus_2(&gf(2, 2)).unwrap();
        let c = incidence_code(&hv, &gf(2, 1)).unwrap();
        assert_eq!((c.n(), c.k()), (24, 12));

        // First-order Reed-Muller of length 8: n = 16, k = 11.
        let c = incidence_code(&rm1(3).unwrap(), &gf(2, 1)).unwrap();
        assert_eq!((c.n(), c.k()), (16, 11));
    }

    #[test]
    fn binary_alphabet_rank_is_affine_in_the_codeword() {
        // For a binary-alphabet base code (s = 2), each incidence row equals
        // the all-evens row plus a linear image of the codeword, so the
        // incidence rank is dim(C0) + 1 and k = n - dim(C0) - 1.
        let g24 = golay24_binary();
        let c = incidence_code(&g24, &gf(2, 1)).unwrap();
        assert_eq!((c.n(), c.k()), (48, 48 - 13));

        let r4 = rm1(4).unwrap();
        let c = incidence_code(&r4, &gf(2, 1)).unwrap();
        assert_eq!((c.n(), c.k()), (32, 32 - 6));
    }

    #[test]
    fn divisibility_reports() {
        // Golay-24: p = 2 divides ell = 24, dual contained, 2k >= n.
        let g24 = golay24_binary();
        let c = incidence_code(&g24, &gf(2, 1)).unwrap();
        let rep = check_divisibility_bounds(&c, &g24).unwrap();
        assert!(rep.ok());
        assert!(rep.p_divides_ell);
        assert_eq!(rep.dual_contained, Some(true));
        assert!(2 * rep.k >= rep.n);

        // Ternary Golay: 3 | 12, k = 18 = n/2 exactly.
        let g3 = golay12_ternary();
        let c = incidence_code(&g3, &gf(3, 1)).unwrap();
        let rep = check_divisibility_bounds(&c, &g3).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.k, 18);
        assert_eq!(rep.n, 36);

        // RM(3,1): 2 | 8, k = 11 >= 8.
        let c0 = rm1(3).unwrap();
        let c = incidence_code(&c0, &gf(2, 1)).unwrap();
        let rep = check_divisibility_bounds(&c, &c0).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.k, 11);

        // A non-divisible base code is rejected.
        let f3 = gf(3, 1);
        let rs2 = rs_full(2, &f3).unwrap();
        let c = incidence_code(&rs2, &f3).unwrap();
        assert!(matches!(
            check_divisibility_bounds(&c, &rs2),
            Err(Error::NotDivisible(3))
        ));
    }

    #[test]
    fn census_tiny() {
        // GF(4), ell = 3: four subsets, all dimensions computed directly.
        let f4 = gf(2, 2);
        let hist = rs2_dimension_census(&f4, 3).unwrap();
        let total: u64 = hist.values().sum();
        assert_eq!(total, 4);
        // Cross-check one subset against the full pipeline.
        let xs: Vec<Felt> = vec![
            f4.felt(0).unwrap(),
            f4.felt(1).unwrap(),
            f4.felt(2).unwrap(),
        ];
        let c0 = crate::basecodes::rs(2, &xs, &f4).unwrap();
        let k = incidence_code(&c0, &gf(2, 1)).unwrap().k();
        assert!(hist.contains_key(&k));
    }

    #[test]
    fn census_full_length_single_class() {
        // ell = q: a single subset whose dimension equals the affine design
        // code dimension.
        let f4 = gf(2, 2);
        let hist = rs2_dimension_census(&f4, 4).unwrap();
        assert_eq!(hist.len(), 1);
        let d = td_affine(2, &f4).unwrap();
        let k = code_of_design(&d, &gf(2, 1)).unwrap().k();
        assert_eq!(hist.get(&k), Some(&1));
    }

    #[test]
    fn puncture_shortening_examples() {
        let f4 = gf(2, 2);
        let c0 = rs_full(2, &f4).unwrap();
        let f2 = gf(2, 1);
        assert!(puncture_shortening_holds(&c0, &[3], &f2).unwrap());
        assert!(puncture_shortening_holds(&c0, &[], &f2).unwrap());

        let pc = parity_check_code(3, &f2).unwrap();
        assert!(puncture_shortening_holds(&pc, &[1], &f2).unwrap());
    }

    #[test]
    fn code_file_roundtrip() {
        let f4 = gf(2, 2);
        let (code, design) = incidence_code_with_design(&rs_full(2, &f4).unwrap(), &gf(2, 1)).unwrap();
        let mut buf = Vec::new();
        code.write_to(&mut buf).unwrap();
        let back =
            IncidenceCode::read_with_design(&mut std::io::BufReader::new(&buf[..]), &design)
                .unwrap();
        assert_eq!(back.k(), code.k());
        assert_eq!(back.sigma(), code.sigma());
        assert!(row_space_equal(back.generator(), code.generator()).unwrap());
    }

    #[test]
    fn streaming_dimension_matches() {
        let f = gf(2, 2);
        let d = td_affine(3, &f).unwrap();
        let k_stream =
            design_code_dimension(d.n_points(), 2, crate::design::affine_block_iter(3, &f))
                .unwrap();
        let k_mem = code_of_design(&d, &gf(2, 1)).unwrap().k();
        assert_eq!(k_stream, k_mem);
    }
}
