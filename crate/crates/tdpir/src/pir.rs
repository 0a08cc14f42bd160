//! The retrieval protocol: systematic setup, query generation, single-read
//! server answers, linear reconstruction, privacy auditing and cost
//! accounting.
//!
//! One server per design group. To fetch codeword position i, the client
//! draws a uniformly random block through i and sends each other server the
//! block's point in that server's group; the server holding i receives an
//! independent uniform index instead. Every server reads exactly one stored
//! symbol, and the block parity reconstructs the target: the sum of a
//! codeword over a block is zero, so `c_i = -sum of the other answers`.
//!
//! Privacy is information-theoretic for uniform draws. The injected RNG is
//! a deterministic simulation stand-in: seeds make runs reproducible, which
//! is exactly what the audits need, but a deployment would use a real
//! entropy source.

use crate::design::{PointId, TransversalDesign};
use crate::error::{Error, Result};
use crate::ff::{Felt, FieldSpec};
use crate::inccode::IncidenceCode;
use crate::par::indexed_map_reduce;
use rand::Rng;
use std::collections::HashMap;

/// A ready-to-run scheme: the code, its design, and the per-point block
/// lists used by query generation.
#[derive(Debug, Clone)]
pub struct PirScheme {
    code: IncidenceCode,
    design: TransversalDesign,
    point_to_blocks: Vec<Vec<u32>>,
}

/// The per-server slices of one encoded database column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedShares {
    shares: Vec<Vec<Felt>>,
}

impl EncodedShares {
    pub fn share(&self, server: usize) -> &[Felt] {
        &self.shares[server]
    }

    pub fn len(&self) -> usize {
        self.shares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shares.is_empty()
    }

    /// Concatenation in group-major order; a codeword of the scheme's code.
    pub fn codeword(&self) -> Vec<Felt> {
        self.shares.iter().flatten().copied().collect()
    }
}

/// One retrieval's queries. The chosen block never leaves the client.
#[derive(Debug, Clone)]
pub struct QuerySet {
    target: PointId,
    j_star: usize,
    queries: Vec<u32>,
    block_index: u32,
}

impl QuerySet {
    pub fn target(&self) -> PointId {
        self.target
    }

    /// Index of the server whose group contains the target.
    pub fn j_star(&self) -> usize {
        self.j_star
    }

    /// Per-server local indices, one per group.
    pub fn queries(&self) -> &[u32] {
        &self.queries
    }

    /// The hidden block (client-side only; never sent to a server).
    pub fn block_index(&self) -> u32 {
        self.block_index
    }
}

/// Protocol-content costs of one retrieval, per the design parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub upload_bits: u64,
    pub download_bits: u64,
    pub server_reads: u64,
    pub user_field_ops: u64,
    pub storage_overhead_symbols: u64,
    pub storage_overhead_bits: f64,
}

fn ceil_log2(x: u64) -> u64 {
    debug_assert!(x >= 1);
    (64 - (x - 1).leading_zeros() as u64).min(63) * u64::from(x > 1)
}

impl PirScheme {
    pub fn new(code: IncidenceCode, design: TransversalDesign) -> Result<PirScheme> {
        if code.n() != design.n_points() || code.ell() != design.ell() || code.s() != design.s() {
            return Err(Error::DimensionMismatch(
                "code and design disagree on the point set".into(),
            ));
        }
        let point_to_blocks = design.point_to_blocks();
        let per_point =
            design.lambda() as u128 * (design.s() as u128).pow(design.strength() as u32 - 1);
        for (x, list) in point_to_blocks.iter().enumerate() {
            if list.len() as u128 != per_point {
                return Err(Error::InvalidArgument(format!(
                    "point {x} lies on {} blocks, expected {per_point}",
                    list.len()
                )));
            }
        }
        Ok(PirScheme {
            code,
            design,
            point_to_blocks,
        })
    }

    pub fn code(&self) -> &IncidenceCode {
        &self.code
    }

    pub fn design(&self) -> &TransversalDesign {
        &self.design
    }

    pub fn field(&self) -> &FieldSpec {
        self.code.field()
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    pub fn ell(&self) -> usize {
        self.design.ell()
    }

    pub fn s(&self) -> usize {
        self.design.s()
    }

    /// Encodes the database and splits the codeword by groups. Databases
    /// shorter than k are zero-padded; longer ones are rejected (chunking
    /// belongs to the layer above).
    pub fn setup(&self, database: &[Felt]) -> Result<EncodedShares> {
        if database.len() > self.k() {
            return Err(Error::DatabaseTooLong {
                got: database.len(),
                k: self.k(),
            });
        }
        let mut msg = database.to_vec();
        msg.resize(self.k(), Felt::ZERO);
        let codeword = self.code.encode(&msg)?;
        let s = self.s();
        let shares = (0..self.ell())
            .map(|j| codeword[j * s..(j + 1) * s].to_vec())
            .collect();
        Ok(EncodedShares { shares })
    }

    /// Queries for database index `index` (0-based in `[0, k)`).
    pub fn gen_queries(&self, index: usize, rng: &mut impl Rng) -> Result<QuerySet> {
        if index >= self.k() {
            return Err(Error::IndexOutOfRange {
                index,
                k: self.k(),
            });
        }
        self.gen_queries_for_point(self.code.sigma()[index] as PointId, rng)
    }

    /// Low-level entry: queries for an arbitrary codeword position.
    pub fn gen_queries_for_point(
        &self,
        target: PointId,
        rng: &mut impl Rng,
    ) -> Result<QuerySet> {
        if target as usize >= self.design.n_points() {
            return Err(Error::IndexOutOfRange {
                index: target as usize,
                k: self.design.n_points(),
            });
        }
        let j_star = self.design.group_of(target);
        let candidates = &self.point_to_blocks[target as usize];
        let block_index = candidates[rng.gen_range(0..candidates.len())];
        let block = &self.design.blocks()[block_index as usize];
        let mut queries: Vec<u32> = block.iter().map(|&x| self.design.local_of(x)).collect();
        // The target's own server gets an independent uniform index; the
        // block's point there is never sent.
        queries[j_star] = rng.gen_range(0..self.s()) as u32;
        Ok(QuerySet {
            target,
            j_star,
            queries,
            block_index,
        })
    }

    /// Reconstruction: minus the sum of the answers from every server other
    /// than the one holding the target.
    pub fn reconstruct(&self, qs: &QuerySet, answers: &[Felt]) -> Result<Felt> {
        if answers.len() != self.ell() {
            return Err(Error::AnswerCountMismatch {
                expected: self.ell(),
                got: answers.len(),
            });
        }
        let f = self.field();
        let mut acc = Felt::ZERO;
        for (j, &a) in answers.iter().enumerate() {
            if j != qs.j_star {
                acc = f.add(acc, a);
            }
        }
        Ok(f.neg(acc))
    }

    /// Whole retrieval against in-memory shares; the reference path used by
    /// tests and the simulator's loopback transport.
    pub fn retrieve_local(
        &self,
        shares: &EncodedShares,
        index: usize,
        rng: &mut impl Rng,
    ) -> Result<Felt> {
        let qs = self.gen_queries(index, rng)?;
        let answers: Vec<Felt> = (0..self.ell())
            .map(|j| server_answer(shares.share(j), qs.queries[j]))
            .collect::<Result<_>>()?;
        self.reconstruct(&qs, &answers)
    }

    /// Exhaustive privacy audit: for every server subset T with |T| <=
    /// t_max, every joint assignment of local indices to T, and every target
    /// outside T's groups, the number of consistent blocks through the
    /// target must be `lambda * s^(t-1-|T|)`, independent of the target.
    /// The queried server's own marginal is uniform by construction (it is
    /// drawn independently of the block).
    pub fn audit_privacy_exact(&self, t_max: usize) -> Result<PrivacyAuditReport> {
        let t = self.design.strength();
        if t_max + 1 > t {
            return Err(Error::StrengthTooLow {
                required: t_max + 1,
                got: t,
            });
        }
        let s = self.s();
        let n = self.design.n_points();
        let lambda = self.design.lambda() as u128;
        let mut checked: u64 = 0;
        for u in 1..=t_max {
            let expected = (lambda * (s as u128).pow((t - 1 - u) as u32)) as u32;
            let keys = (s as u128).pow(u as u32) as usize;
            if keys as u128 * n as u128 > 200_000_000 {
                return Err(Error::BudgetExceeded(
                    keys as u128 * n as u128,
                    200_000_000,
                ));
            }
            let n_subsets = crate::comb::binomial(self.ell(), u) as usize;
            let violation = indexed_map_reduce(
                n_subsets,
                |rank| {
                    let groups = crate::comb::unrank_combination(self.ell(), u, rank as u128);
                    let mut counts = vec![0u32; keys * n];
                    for block in self.design.blocks() {
                        let mut key = 0usize;
                        for &g in &groups {
                            key = key * s + self.design.local_of(block[g]) as usize;
                        }
                        for (g, &x) in block.iter().enumerate() {
                            if !groups.contains(&g) {
                                counts[key * n + x as usize] += 1;
                            }
                        }
                    }
                    let mut in_t_group = vec![false; n];
                    for &g in &groups {
                        in_t_group[g * s..(g + 1) * s].fill(true);
                    }
                    for key in 0..keys {
                        for x in 0..n {
                            if in_t_group[x] {
                                continue;
                            }
                            let got = counts[key * n + x];
                            if got != expected {
                                let mut assignment = vec![0u32; u];
                                let mut kk = key;
                                for i in (0..u).rev() {
                                    assignment[i] = (kk % s) as u32;
                                    kk /= s;
                                }
                                return Some((
                                    rank,
                                    PrivacyViolation {
                                        groups: groups.clone(),
                                        assignment,
                                        target: x as PointId,
                                        expected,
                                        got,
                                    },
                                ));
                            }
                        }
                    }
                    None
                },
                None,
                |a: Option<(usize, PrivacyViolation)>, b| match (a, b) {
                    (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                    (x, None) => x,
                    (None, y) => y,
                },
            );
            checked += (n_subsets * keys) as u64;
            if let Some((_, v)) = violation {
                return Ok(PrivacyAuditReport {
                    t_max,
                    passed: false,
                    assignments_checked: checked,
                    jstar_uniform_by_construction: true,
                    violation: Some(v),
                });
            }
        }
        Ok(PrivacyAuditReport {
            t_max,
            passed: true,
            assignments_checked: checked,
            jstar_uniform_by_construction: true,
            violation: None,
        })
    }

    /// Sampling audit: empirical total-variation distance between the joint
    /// query distributions of two targets on a server subset, against the
    /// threshold `4 * sqrt(|assignments| / n_samples)`.
    pub fn audit_privacy_empirical(
        &self,
        index_a: usize,
        index_b: usize,
        servers: &[usize],
        n_samples: usize,
        rng: &mut impl Rng,
    ) -> Result<EmpiricalPrivacyReport> {
        if servers.is_empty() || n_samples == 0 {
            return Err(Error::InvalidArgument(
                "empirical audit needs servers and samples".into(),
            ));
        }
        let ha = self.joint_histogram(index_a, servers, n_samples, rng)?;
        let hb = self.joint_histogram(index_b, servers, n_samples, rng)?;
        let mut keys: Vec<&Vec<u32>> = ha.keys().chain(hb.keys()).collect();
        keys.sort();
        keys.dedup();
        let nf = n_samples as f64;
        let tv = keys
            .iter()
            .map(|k| {
                let pa = *ha.get(*k).unwrap_or(&0) as f64 / nf;
                let pb = *hb.get(*k).unwrap_or(&0) as f64 / nf;
                (pa - pb).abs()
            })
            .sum::<f64>()
            / 2.0;
        let space = (self.s() as f64).powi(servers.len() as i32);
        let threshold = 4.0 * (space / nf).sqrt();
        Ok(EmpiricalPrivacyReport {
            tv_distance: tv,
            threshold,
            distinguishable: tv > threshold,
        })
    }

    fn joint_histogram(
        &self,
        index: usize,
        servers: &[usize],
        n_samples: usize,
        rng: &mut impl Rng,
    ) -> Result<HashMap<Vec<u32>, u64>> {
        let mut hist: HashMap<Vec<u32>, u64> = HashMap::new();
        for _ in 0..n_samples {
            let qs = self.gen_queries(index, rng)?;
            let key: Vec<u32> = servers.iter().map(|&j| qs.queries[j]).collect();
            *hist.entry(key).or_insert(0) += 1;
        }
        Ok(hist)
    }

    /// Per-retrieval accounting, from the design parameters alone.
    pub fn cost_report(&self) -> CostReport {
        let ell = self.ell() as u64;
        let s = self.s() as u64;
        let q = self.field().q() as u64;
        let overhead_symbols = ell * s - self.k() as u64;
        CostReport {
            upload_bits: ell * ceil_log2(s),
            download_bits: ell * ceil_log2(q),
            server_reads: 1,
            user_field_ops: ell - 1,
            storage_overhead_symbols: overhead_symbols,
            storage_overhead_bits: overhead_symbols as f64 * (q as f64).log2(),
        }
    }
}

/// The server side of one query: read the single requested symbol.
pub fn server_answer(share: &[Felt], local_index: u32) -> Result<Felt> {
    share
        .get(local_index as usize)
        .copied()
        .ok_or(Error::QueryOutOfRange {
            q: local_index,
            s: share.len(),
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivacyViolation {
    pub groups: Vec<usize>,
    pub assignment: Vec<u32>,
    pub target: PointId,
    pub expected: u32,
    pub got: u32,
}

#[derive(Debug, Clone)]
pub struct PrivacyAuditReport {
    pub t_max: usize,
    pub passed: bool,
    pub assignments_checked: u64,
    pub jstar_uniform_by_construction: bool,
    pub violation: Option<PrivacyViolation>,
}

#[derive(Debug, Clone)]
pub struct EmpiricalPrivacyReport {
    pub tv_distance: f64,
    pub threshold: f64,
    pub distinguishable: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basecodes::{golay12_ternary, rs_full};
    use crate::design::td_affine;
    use crate::inccode::{code_of_design, incidence_code_with_design};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32, e: u32) -> FieldSpec {
        FieldSpec::new(p, e).unwrap()
    }

    fn affine_scheme(m: usize, p: u32, e: u32, target: &FieldSpec) -> PirScheme {
        let f = gf(p, e);
        let d = td_affine(m, &f).unwrap();
        let c = code_of_design(&d, target).unwrap();
        PirScheme::new(c, d).unwrap()
    }

    #[test]
    fn roundtrip_every_index_affine_gf3() {
        let f3 = gf(3, 1);
        let scheme = affine_scheme(2, 3, 1, &f3);
        assert_eq!(scheme.k(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // Exhaustive over all 27 databases and all indices.
        for dbv in 0..27u32 {
            let db: Vec<Felt> = (0..3)
                .map(|i| f3.felt(dbv / 3u32.pow(i) % 3).unwrap())
                .collect();
            let shares = scheme.setup(&db).unwrap();
            for (i, &expect) in db.iter().enumerate() {
                for _ in 0..3 {
                    assert_eq!(scheme.retrieve_local(&shares, i, &mut rng).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn zero_database_gives_zero_everything() {
        let scheme = affine_scheme(2, 2, 2, &gf(2, 1));
        let shares = scheme.setup(&[]).unwrap();
        assert!(shares.codeword().iter().all(|c| c.is_zero()));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(scheme
            .retrieve_local(&shares, 0, &mut rng)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn setup_rejects_long_database() {
        let scheme = affine_scheme(2, 3, 1, &gf(3, 1));
        let too_long = vec![Felt::ZERO; scheme.k() + 1];
        assert!(matches!(
            scheme.setup(&too_long),
            Err(Error::DatabaseTooLong { .. })
        ));
    }

    #[test]
    fn block_parity_holds_for_every_block() {
        let f3 = gf(3, 1);
        let scheme = affine_scheme(2, 3, 1, &f3);
        let db: Vec<Felt> = vec![
            f3.felt(1).unwrap(),
            f3.felt(2).unwrap(),
            f3.felt(1).unwrap(),
        ];
        let cw = scheme.setup(&db).unwrap().codeword();
        for b in scheme.design().blocks() {
            let mut acc = Felt::ZERO;
            for &x in b {
                acc = f3.add(acc, cw[x as usize]);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn queries_follow_a_block_through_the_target() {
        let scheme = affine_scheme(2, 2, 3, &gf(2, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..scheme.k() {
            let qs = scheme.gen_queries(i, &mut rng).unwrap();
            let block = &scheme.design().blocks()[qs.block_index() as usize];
            assert!(block.contains(&qs.target()));
            for (j, &q) in qs.queries().iter().enumerate() {
                if j != qs.j_star() {
                    assert_eq!(scheme.design().local_of(block[j]), q);
                }
            }
        }
    }

    #[test]
    fn candidate_blocks_and_marginals() {
        // lambda = 1 strength-2 design: s candidate blocks per point, and
        // over those blocks each point of a foreign group occurs once.
        let scheme = affine_scheme(2, 2, 3, &gf(2, 1));
        let s = scheme.s();
        for x in 0..scheme.design().n_points() as u32 {
            let blocks = &scheme.point_to_blocks[x as usize];
            assert_eq!(blocks.len(), s);
            let jx = scheme.design().group_of(x);
            for j in 0..scheme.ell() {
                if j == jx {
                    continue;
                }
                let mut counts = vec![0u32; s];
                for &bi in blocks {
                    let b = &scheme.design().blocks()[bi as usize];
                    counts[scheme.design().local_of(b[j]) as usize] += 1;
                }
                assert!(counts.iter().all(|&c| c == 1));
            }
        }
    }

    #[test]
    fn jstar_query_is_uniform_and_independent() {
        let scheme = affine_scheme(2, 3, 1, &gf(3, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut counts = vec![0u32; scheme.s()];
        let n = 9000;
        for _ in 0..n {
            let qs = scheme.gen_queries(0, &mut rng).unwrap();
            counts[qs.queries()[qs.j_star()] as usize] += 1;
        }
        let expect = n as f64 / scheme.s() as f64;
        for c in counts {
            assert!((c as f64 - expect).abs() < 6.0 * expect.sqrt());
        }
    }

    #[test]
    fn exact_audit_passes_on_strength_two() {
        let scheme = affine_scheme(2, 2, 3, &gf(2, 1));
        let report = scheme.audit_privacy_exact(1).unwrap();
        assert!(report.passed, "{:?}", report.violation);
        assert!(report.jstar_uniform_by_construction);
        // Asking beyond the strength is an error, not a failure.
        assert!(matches!(
            scheme.audit_privacy_exact(2),
            Err(Error::StrengthTooLow { .. })
        ));
    }

    #[test]
    fn exact_audit_higher_strength() {
        // RS_3 over GF(4): strength-3 design, 2-private.
        let f4 = gf(2, 2);
        let (code, design) =
            incidence_code_with_design(&rs_full(3, &f4).unwrap(), &gf(2, 1)).unwrap();
        let scheme = PirScheme::new(code, design).unwrap();
        assert!(scheme.audit_privacy_exact(2).unwrap().passed);

        // Ternary Golay: strength 5, 4-private.
        let (code, design) =
            incidence_code_with_design(&golay12_ternary(), &gf(3, 1)).unwrap();
        let scheme = PirScheme::new(code, design).unwrap();
        let report = scheme.audit_privacy_exact(4).unwrap();
        assert!(report.passed, "{:?}", report.violation);
    }

    #[test]
    fn empirical_audit_same_index_is_indistinguishable() {
        let scheme = affine_scheme(2, 2, 3, &gf(2, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rep = scheme
            .audit_privacy_empirical(2, 2, &[1], 20_000, &mut rng)
            .unwrap();
        assert!(rep.tv_distance < 0.02);
        assert!(!rep.distinguishable);
    }

    #[test]
    fn empirical_audit_single_server_hides_the_index() {
        let scheme = affine_scheme(2, 2, 3, &gf(2, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        // Two different targets, one (non-j*) server: below threshold.
        let rep = scheme
            .audit_privacy_empirical(0, 1, &[7], 100_000, &mut rng)
            .unwrap();
        assert!(!rep.distinguishable, "tv={}", rep.tv_distance);
    }

    #[test]
    fn empirical_audit_two_colluding_servers_leak() {
        // Strength-2 scheme, both colluders away from j*: the supports of
        // the joint distributions are (nearly) disjoint, so the distance is
        // far above threshold.
        let scheme = affine_scheme(2, 2, 3, &gf(2, 1));
        let sigma = scheme.code().sigma().to_vec();
        let g0 = scheme.design().group_of(sigma[0] as PointId);
        // Find another index in the same group and two servers elsewhere.
        let other = (0..scheme.k())
            .find(|&i| i != 0 && scheme.design().group_of(sigma[i] as PointId) == g0)
            .expect("two information positions share a group");
        let servers: Vec<usize> = (0..scheme.ell()).filter(|&j| j != g0).take(2).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rep = scheme
            .audit_privacy_empirical(0, other, &servers, 100_000, &mut rng)
            .unwrap();
        assert!(rep.distinguishable, "tv={} thr={}", rep.tv_distance, rep.threshold);
        assert!(rep.tv_distance > 0.9);
    }

    #[test]
    fn cost_reports() {
        // Affine over GF(8), binary code: ell = s = 8, k = 37.
        let scheme = affine_scheme(2, 2, 3, &gf(2, 1));
        let cost = scheme.cost_report();
        assert_eq!(cost.upload_bits, 24);
        assert_eq!(cost.download_bits, 8);
        assert_eq!(cost.server_reads, 1);
        assert_eq!(cost.user_field_ops, 7);
        assert_eq!(cost.storage_overhead_symbols, 27);
        assert_eq!(cost.storage_overhead_bits, 27.0);

        // Degenerate s = 1: a single forced block, 2 bits downloaded.
        let d = crate::design::TransversalDesign::new(2, 1, 1, 2, vec![vec![0, 1]]).unwrap();
        let c = code_of_design(&d, &gf(2, 1)).unwrap();
        let scheme = PirScheme::new(c, d).unwrap();
        let cost = scheme.cost_report();
        assert_eq!(cost.upload_bits, 0);
        assert_eq!(cost.download_bits, 2);
    }

    #[test]
    fn reconstruct_two_server_single_term() {
        let d = crate::design::TransversalDesign::new(2, 1, 1, 2, vec![vec![0, 1]]).unwrap();
        let f2 = gf(2, 1);
        let c = code_of_design(&d, &f2).unwrap();
        assert_eq!(c.k(), 1);
        let scheme = PirScheme::new(c, d).unwrap();
        let db = vec![Felt::ONE];
        let shares = scheme.setup(&db).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(scheme.retrieve_local(&shares, 0, &mut rng).unwrap(), Felt::ONE);
    }

    #[test]
    fn low_level_entry_retrieves_any_codeword_position() {
        // Non-systematic positions are retrievable too: the protocol works
        // on any point of the design, not just the information set.
        let f3 = gf(3, 1);
        let scheme = affine_scheme(2, 3, 1, &f3);
        let db = vec![
            f3.felt(2).unwrap(),
            f3.felt(0).unwrap(),
            f3.felt(1).unwrap(),
        ];
        let shares = scheme.setup(&db).unwrap();
        let cw = shares.codeword();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for target in 0..scheme.design().n_points() as u32 {
            let qs = scheme.gen_queries_for_point(target, &mut rng).unwrap();
            let answers: Vec<Felt> = (0..scheme.ell())
                .map(|j| server_answer(shares.share(j), qs.queries()[j]).unwrap())
                .collect();
            assert_eq!(
                scheme.reconstruct(&qs, &answers).unwrap(),
                cw[target as usize]
            );
        }
    }

    #[test]
    fn deterministic_given_the_seed() {
        let scheme = affine_scheme(2, 2, 3, &gf(2, 1));
        let q1 = scheme
            .gen_queries(5, &mut ChaCha8Rng::seed_from_u64(42))
            .unwrap();
        let q2 = scheme
            .gen_queries(5, &mut ChaCha8Rng::seed_from_u64(42))
            .unwrap();
        assert_eq!(q1.queries(), q2.queries());
        assert_eq!(q1.block_index(), q2.block_index());
    }
}
