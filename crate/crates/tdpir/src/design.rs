//! Transversal designs and their incidence matrices.
//!
//! A transversal design TD_lambda(ell, s) partitions `ell * s` points into
//! `ell` groups of size `s`; every block meets every group exactly once, and
//! every cross-group point pair lies in exactly `lambda` blocks. The
//! strength-t generalization requires every t-tuple of points from t
//! distinct groups to lie in exactly `lambda` blocks.
//!
//! Points are numbered group-major: point `g * s + r` is the r-th point of
//! group `g`. Blocks are stored sorted (which, group-major, means group
//! order) and the block list is sorted lexicographically, so incidence
//! matrices are byte-reproducible.

use crate::basecodes::OrthogonalArray;
use crate::error::{Error, Result};
use crate::ff::{Felt, FieldSpec};
use crate::linalg::MatGFp;
use crate::par::indexed_map_reduce;
use std::io::{BufRead, Write};

/// Flat point index; group = id / s, local = id % s.
pub type PointId = u32;

/// In-memory designs are capped at 2^23 blocks; larger constructions go
/// through the streaming block iterators.
pub const MAX_BLOCKS: u128 = 1 << 23;

const MAX_VERIFY_WORK: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignViolation {
    BlockShape {
        block_index: usize,
        reason: String,
    },
    WrongBlockCount {
        expected: u128,
        got: usize,
    },
    /// A same-group pair is covered by a block, or a cross-group pair is
    /// covered the wrong number of times.
    PairCount {
        x: PointId,
        y: PointId,
        expected: u32,
        got: u32,
    },
    TupleCount {
        groups: Vec<usize>,
        locals: Vec<u32>,
        expected: u32,
        got: u32,
    },
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalDesign {
    ell: usize,
    s: usize,
    lambda: usize,
    strength: usize,
    blocks: Vec<Vec<PointId>>,
}

impl TransversalDesign {
    /// Wraps a block list, validating the structural invariants (shape,
    /// block count, one point per group, no repeats). The incidence axioms
    /// are checked separately by [`TransversalDesign::verify_td`].
    pub fn new(
        ell: usize,
        s: usize,
        lambda: usize,
        strength: usize,
        mut blocks: Vec<Vec<PointId>>,
    ) -> Result<TransversalDesign> {
        if ell < 2 || s < 1 || lambda < 1 || strength < 2 || strength > ell {
            return Err(Error::InvalidArgument(format!(
                "bad design parameters ell={ell} s={s} lambda={lambda} t={strength}"
            )));
        }
        let expected = lambda as u128 * (s as u128).pow(strength as u32);
        if blocks.len() as u128 != expected {
            return Err(Error::InvalidArgument(format!(
                "design must have lambda*s^t = {expected} blocks, got {}",
                blocks.len()
            )));
        }
        if blocks.len() as u128 > MAX_BLOCKS {
            return Err(Error::TooManyBlocks(blocks.len() as u128));
        }
        for (i, b) in blocks.iter_mut().enumerate() {
            b.sort_unstable();
            if b.len() != ell {
                return Err(Error::InvalidArgument(format!(
                    "block {i} has {} points, expected {ell}",
                    b.len()
                )));
            }
            for (g, &x) in b.iter().enumerate() {
                if (x as usize) / s != g || (x as usize) >= ell * s {
                    return Err(Error::InvalidArgument(format!(
                        "block {i} does not meet every group exactly once"
                    )));
                }
            }
        }
        blocks.sort_unstable();
        if blocks.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated block".into()));
        }
        Ok(TransversalDesign {
            ell,
            s,
            lambda,
            strength,
            blocks,
        })
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

    pub fn n_points(&self) -> usize {
        self.ell * self.s
    }

    pub fn blocks(&self) -> &[Vec<PointId>] {
        &self.blocks
    }

    #[inline]
    pub fn group_of(&self, x: PointId) -> usize {
        x as usize / self.s
    }

    #[inline]
    pub fn local_of(&self, x: PointId) -> u32 {
        (x as usize % self.s) as u32
    }

    #[inline]
    pub fn point_id(&self, group: usize, local: u32) -> PointId {
        (group * self.s) as PointId + local
    }

    /// 0/1 incidence matrix over GF(p): rows are blocks (in canonical block
    /// order), columns are points.
    pub fn incidence_matrix(&self, p: u32) -> Result<MatGFp> {
        MatGFp::from_supports(p, self.blocks.len(), self.n_points(), &self.blocks)
    }

    /// For each point, the indices of the blocks through it. Every list has
    /// length `lambda * s^(t-1)`.
    pub fn point_to_blocks(&self) -> Vec<Vec<u32>> {
        let mut map = vec![Vec::new(); self.n_points()];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &x in b {
                map[x as usize].push(bi as u32);
            }
        }
        map
    }

    /// Exhaustive pair-incidence check: a same-group pair must lie in no
    /// block, a cross-group pair in exactly `lambda` blocks.
    pub fn verify_td(&self) -> std::result::Result<(), DesignViolation> {
        let n = self.n_points();
        if (n as u128) * (n as u128) > MAX_VERIFY_WORK {
            return Err(DesignViolation::TooLarge);
        }
        let expected_blocks = self.lambda as u128 * (self.s as u128).pow(self.strength as u32);
        if self.blocks.len() as u128 != expected_blocks {
            return Err(DesignViolation::WrongBlockCount {
                expected: expected_blocks,
                got: self.blocks.len(),
            });
        }
        // lambda for the pair axiom of a strength-t design.
        let pair_lambda = (self.lambda as u128 * (self.s as u128).pow(self.strength as u32 - 2))
            as u32;
        let mut counts = vec![0u32; n * n];
        for b in &self.blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    counts[x as usize * n + y as usize] += 1;
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let got = counts[x * n + y];
                let expected = if x / self.s == y / self.s {
                    0
                } else {
                    pair_lambda
                };
                if got != expected {
                    return Err(DesignViolation::PairCount {
                        x: x as PointId,
                        y: y as PointId,
                        expected,
                        got,
                    });
                }
            }
        }
        Ok(())
    }

    /// Exhaustive strength check: for every choice of `t` groups and every
    /// assignment of one point per chosen group, exactly
    /// `blocks / s^t` blocks contain the tuple.
    pub fn verify_t_td(&self, t: usize) -> std::result::Result<(), DesignViolation> {
        if t < 2 || t > self.ell {
            return Err(DesignViolation::TupleCount {
                groups: vec![],
                locals: vec![],
                expected: 0,
                got: 0,
            });
        }
        let tuples = (self.s as u128).pow(t as u32);
        if !(self.blocks.len() as u128).is_multiple_of(tuples) {
            return Err(DesignViolation::WrongBlockCount {
                expected: tuples,
                got: self.blocks.len(),
            });
        }
        let n_subsets = crate::comb::binomial(self.ell, t);
        let work = n_subsets * (tuples + self.blocks.len() as u128 * t as u128);
        if work > MAX_VERIFY_WORK {
            return Err(DesignViolation::TooLarge);
        }
        let expected = (self.blocks.len() as u128 / tuples) as u32;
        let first_violation = indexed_map_reduce(
            n_subsets as usize,
            |rank| {
                let groups = crate::comb::unrank_combination(self.ell, t, rank as u128);
                let mut counts = vec![0u32; tuples as usize];
                for b in &self.blocks {
                    let mut key = 0usize;
                    for &g in &groups {
                        key = key * self.s + self.local_of(b[g]) as usize;
                    }
                    counts[key] += 1;
                }
                counts.iter().position(|&c| c != expected).map(|key| {
                    let mut locals = vec![0u32; t];
                    let mut k = key;
                    for i in (0..t).rev() {
                        locals[i] = (k % self.s) as u32;
                        k /= self.s;
                    }
                    (
                        rank,
                        DesignViolation::TupleCount {
                            groups: groups.clone(),
                            locals,
                            expected,
                            got: counts[key],
                        },
                    )
                })
            },
            None,
            |a: Option<(usize, DesignViolation)>, b| match (a, b) {
                (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                (x, None) => x,
                (None, y) => y,
            },
        );
        match first_violation {
            Some((_, v)) => Err(v),
            None => Ok(()),
        }
    }

    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "TD {} {} {} {} {}",
            self.ell,
            self.s,
            self.lambda,
            self.strength,
            self.blocks.len()
        )?;
        for b in &self.blocks {
            let line: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl BufRead) -> Result<TransversalDesign> {
        let mut header = String::new();
        r.read_line(&mut header)
            .map_err(|e| Error::Parse(e.to_string()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 6 || parts[0] != "TD" {
            return Err(Error::Parse(
                "expected header: TD ell s lambda t nblocks".into(),
            ));
        }
        let nums: Vec<usize> = parts[1..]
            .iter()
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad integer {v}"))))
            .collect::<Result<_>>()?;
        let (ell, s, lambda, strength, nblocks) = (nums[0], nums[1], nums[2], nums[3], nums[4]);
        let mut blocks = Vec::with_capacity(nblocks);
        for _ in 0..nblocks {
            let mut line = String::new();
            r.read_line(&mut line)
                .map_err(|e| Error::Parse(e.to_string()))?;
            let b: Vec<PointId> = line
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad point {v}"))))
                .collect::<Result<_>>()?;
            blocks.push(b);
        }
        TransversalDesign::new(ell, s, lambda, strength, blocks)
    }
}

// ---- affine construction ----

/// Point index in A^m(F_q): the last coordinate selects the group, the
/// remaining coordinates (low to high significance) the point in the group.
fn affine_point_id(coords: &[Felt], q: u32) -> PointId {
    let m = coords.len();
    let mut local = 0u64;
    for i in (0..m - 1).rev() {
        local = local * q as u64 + coords[i].value() as u64;
    }
    (coords[m - 1].value() as u64 * (q as u64).pow(m as u32 - 1) + local) as PointId
}

fn decode_base_q(mut v: u64, q: u32, len: usize, field: &FieldSpec) -> Vec<Felt> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(field.felt((v % q as u64) as u32).unwrap());
        v /= q as u64;
    }
    out
}

/// Streams the blocks of the affine transversal design T_A(m, q): all lines
/// secant to the hyperplane partition `{x_m = alpha}`, i.e. lines whose
/// direction has last coordinate 1, parameterized by the direction's free
/// coordinates and the base point on `{x_m = 0}`.
pub fn affine_block_iter<'a>(
    m: usize,
    field: &'a FieldSpec,
) -> impl Iterator<Item = Vec<PointId>> + 'a {
    let q = field.q();
    let free = (q as u64).pow(m as u32 - 1);
    (0..free).flat_map(move |dlow| {
        let dir = decode_base_q(dlow, q, m - 1, field);
        (0..free).map(move |blow| {
            let base = decode_base_q(blow, q, m - 1, field);
            let mut block: Vec<PointId> = field
                .elements()
                .map(|t| {
                    let mut coords: Vec<Felt> = base
                        .iter()
                        .zip(&dir)
                        .map(|(&b, &d)| field.add(b, field.mul(t, d)))
                        .collect();
                    coords.push(t);
                    affine_point_id(&coords, q)
                })
                .collect();
            block.sort_unstable();
            block
        })
    })
}

/// The affine transversal design T_A(m, q) = TD(q, q^{m-1}).
pub fn td_affine(m: usize, field: &FieldSpec) -> Result<TransversalDesign> {
    if m < 2 {
        return Err(Error::InvalidArgument("affine design needs m >= 2".into()));
    }
    let q = field.q() as u128;
    let nblocks = q.pow(2 * (m as u32 - 1));
    if nblocks > MAX_BLOCKS {
        return Err(Error::TooManyBlocks(nblocks));
    }
    let blocks: Vec<Vec<PointId>> = affine_block_iter(m, field).collect();
    TransversalDesign::new(
        field.q() as usize,
        (q.pow(m as u32 - 1)) as usize,
        1,
        2,
        blocks,
    )
}

/// The full point-line design of the affine geometry: every line of
/// A^m(F_q), including the ones inside the hyperplane slices. Returned as a
/// raw block list over the same point numbering as [`td_affine`].
pub fn ag_line_blocks(m: usize, field: &FieldSpec) -> Result<(usize, Vec<Vec<PointId>>)> {
    if m < 2 {
        return Err(Error::InvalidArgument("geometry needs m >= 2".into()));
    }
    let q = field.q();
    let npoints = (q as u64).pow(m as u32) as usize;
    let mut blocks = Vec::new();
    // Directions up to scale: first nonzero coordinate normalized to 1.
    let mut dirs = Vec::new();
    for v in 0..(q as u64).pow(m as u32) {
        let d = decode_base_q(v, q, m, field);
        match d.iter().find(|c| !c.is_zero()) {
            Some(c) if *c == Felt::ONE => dirs.push(d),
            _ => {}
        }
    }
    for d in dirs {
        let lead = d.iter().position(|c| !c.is_zero()).unwrap();
        // One base point per parallel line: the points with coordinate
        // `lead` equal to zero.
        for v in 0..(q as u64).pow(m as u32 - 1) {
            let partial = decode_base_q(v, q, m - 1, field);
            let mut base: Vec<Felt> = Vec::with_capacity(m);
            let mut it = partial.into_iter();
            for i in 0..m {
                if i == lead {
                    base.push(Felt::ZERO);
                } else {
                    base.push(it.next().unwrap());
                }
            }
            let mut block: Vec<PointId> = field
                .elements()
                .map(|t| {
                    let coords: Vec<Felt> = base
                        .iter()
                        .zip(&d)
                        .map(|(&b, &dc)| field.add(b, field.mul(t, dc)))
                        .collect();
                    affine_point_id(&coords, q)
                })
                .collect();
            block.sort_unstable();
            blocks.push(block);
        }
    }
    blocks.sort_unstable();
    Ok((npoints, blocks))
}

// ---- projective construction ----

/// The projective transversal design T_P(m, q) = TD(q+1, q^{m-1}): points of
/// P^m(F_q) off the codimension-2 flat `{x_0 = x_1 = 0}`, grouped by the
/// q+1 hyperplanes through that flat; blocks are the lines disjoint from the
/// flat and contained in no group.
pub fn td_projective(m: usize, field: &FieldSpec) -> Result<TransversalDesign> {
    if m < 2 {
        return Err(Error::InvalidArgument(
            "projective design needs m >= 2".into(),
        ));
    }
    let q = field.q();
    let s = (q as u128).pow(m as u32 - 1);
    if s * s > MAX_BLOCKS || s > (1 << 12) {
        return Err(Error::TooManyBlocks(s * s));
    }
    let normalize = |coords: &[Felt]| -> Option<Vec<Felt>> {
        let lead = coords.iter().find(|c| !c.is_zero())?;
        let inv = field.inv(*lead).unwrap();
        Some(coords.iter().map(|&c| field.mul(c, inv)).collect())
    };
    // All points of P^m, as normalized representatives in value-lex order.
    let mut points = Vec::new();
    for v in 0..(q as u64).pow(m as u32 + 1) {
        let coords = decode_base_q(v, q, m + 1, field);
        if let Some(norm) = normalize(&coords) {
            if norm == coords {
                points.push(coords);
            }
        }
    }
    let in_flat = |pt: &[Felt]| pt[0].is_zero() && pt[1].is_zero();
    // P^1 representatives, in canonical order: (1, beta) then (0, 1).
    let p1: Vec<(Felt, Felt)> = field
        .elements()
        .map(|beta| (Felt::ONE, beta))
        .chain(std::iter::once((Felt::ZERO, Felt::ONE)))
        .collect();
    // The group of a point off the flat: the hyperplane a*x0 + b*x1 = 0
    // through it, i.e. [a : b] = [x1 : -x0] normalized.
    let group_key = |pt: &[Felt]| -> (Felt, Felt) {
        let (a, b) = (pt[1], field.neg(pt[0]));
        if a.is_zero() {
            (Felt::ZERO, Felt::ONE)
        } else {
            let inv = field.inv(a).unwrap();
            (Felt::ONE, field.mul(b, inv))
        }
    };
    let mut group_members: Vec<Vec<usize>> = vec![Vec::new(); p1.len()];
    let mut point_ids: std::collections::HashMap<Vec<u32>, PointId> =
        std::collections::HashMap::new();
    let key_of = |pt: &[Felt]| -> Vec<u32> { pt.iter().map(|c| c.value()).collect() };
    let mut off_flat: Vec<usize> = Vec::new();
    for (pi, pt) in points.iter().enumerate() {
        if in_flat(pt) {
            continue;
        }
        off_flat.push(pi);
        let gk = group_key(pt);
        let gi = p1.iter().position(|&g| g == gk).unwrap();
        group_members[gi].push(pi);
    }
    let s = group_members[0].len();
    for (gi, members) in group_members.iter().enumerate() {
        debug_assert_eq!(members.len(), s);
        for (local, &pi) in members.iter().enumerate() {
            point_ids.insert(key_of(&points[pi]), (gi * s + local) as PointId);
        }
    }
    // Enumerate lines as spans of point pairs, deduplicated by their sorted
    // point-key set; keep those off the flat and transversal to the groups.
    let mut seen: std::collections::BTreeSet<Vec<Vec<u32>>> = std::collections::BTreeSet::new();
    let mut blocks = Vec::new();
    for (ai, &pi) in off_flat.iter().enumerate() {
        for &pj in &off_flat[ai + 1..] {
            let (pa, pb) = (&points[pi], &points[pj]);
            let mut line_keys: Vec<Vec<u32>> = Vec::with_capacity(q as usize + 1);
            for lam in field.elements() {
                for mu in field.elements() {
                    if lam.is_zero() && mu.is_zero() {
                        continue;
                    }
                    let coords: Vec<Felt> = pa
                        .iter()
                        .zip(pb)
                        .map(|(&x, &y)| field.add(field.mul(lam, x), field.mul(mu, y)))
                        .collect();
                    let norm = normalize(&coords).unwrap();
                    let k = key_of(&norm);
                    if !line_keys.contains(&k) {
                        line_keys.push(k);
                    }
                }
            }
            line_keys.sort_unstable();
            if !seen.insert(line_keys.clone()) {
                continue;
            }
            // Off the flat entirely?
            if line_keys
                .iter()
                .any(|k| k[0] == 0 && k[1] == 0)
            {
                continue;
            }
            let ids: Vec<PointId> = line_keys.iter().map(|k| point_ids[k]).collect();
            // Contained in a single group means not transversal.
            let g0 = ids[0] as usize / s;
            if ids.iter().all(|&x| x as usize / s == g0) {
                continue;
            }
            let mut b = ids;
            b.sort_unstable();
            blocks.push(b);
        }
    }
    TransversalDesign::new(q as usize + 1, s, 1, 2, blocks)
}

// ---- orthogonal array construction ----

/// Builds the design whose points are `symbol x column` pairs and whose
/// blocks are the array rows; strength and index carry over.
pub fn td_from_oa(a: &OrthogonalArray) -> Result<TransversalDesign> {
    let s = a.s();
    let blocks: Vec<Vec<PointId>> = a
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(g, &sym)| (g * s) as PointId + sym)
                .collect()
        })
        .collect();
    TransversalDesign::new(a.ell(), s, a.lambda(), a.strength(), blocks)
}
