//! Exact arithmetic in finite fields GF(p^e).
//!
//! Elements are encoded as integers in `[0, q)`: the coefficient of `x^i` in
//! the polynomial representative is the i-th base-p digit of the value. This
//! makes `0` the additive identity, `1` the multiplicative identity, and lets
//! field elements index arrays directly.
//!
//! The modulus for GF(p^e) is the monic irreducible polynomial of degree `e`
//! whose low-coefficient tuple `(c_0, ..., c_{e-1})`, read as a base-p
//! integer, is smallest. The choice is deterministic, so the same `(p, e)`
//! always yields the same element encoding.

use crate::error::{Error, Result};

/// Enumerable fields are capped at q = p^e <= 2^20.
pub const MAX_FIELD_BITS: u32 = 20;
const MAX_FIELD_SIZE: u64 = 1 << MAX_FIELD_BITS;

/// Multiplication tables are precomputed for fields up to this size.
const TABLE_LIMIT: u64 = 256;

/// A field element of some [`FieldSpec`], stored as its canonical integer
/// encoding. Elements are only meaningful relative to the field that produced
/// them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Felt(u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field GF(p^e) with its canonical modulus.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus of degree e, constant term first (so `modulus[e] == 1`).
    modulus: Vec<u32>,
    mul_table: Option<Box<[u32]>>,
    inv_table: Option<Box<[u32]>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds GF(p^e). Fails if `p` is not prime, `e < 1`, or `p^e` exceeds
    /// the enumerable-field limit.
    pub fn new(p: u32, e: u32) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if e < 1 {
            return Err(Error::DegreeTooSmall);
        }
        let q = match (p as u64).checked_pow(e) {
            Some(q) if q <= MAX_FIELD_SIZE => q,
            other => return Err(Error::FieldTooLarge(other.unwrap_or(u64::MAX))),
        };
        let modulus = first_irreducible(p, e);
        let mut field = FieldSpec {
            p,
            e,
            q: q as u32,
            modulus,
            mul_table: None,
            inv_table: None,
        };
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first; length `e + 1`, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Wraps a raw value, checking the range.
    pub fn felt(&self, value: u32) -> Result<Felt> {
        if value < self.q {
            Ok(Felt(value))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    /// Embeds a prime-subfield residue (a value in `[0, p)`).
    #[inline]
    pub fn from_residue(&self, r: u32) -> Felt {
        debug_assert!(r < self.p);
        Felt(r)
    }

    /// All q elements exactly once, in increasing value order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.q).map(Felt)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.e == 1 {
            let s = a.0 as u64 + b.0 as u64;
            let p = self.p as u64;
            return Felt(if s >= p { (s - p) as u32 } else { s as u32 });
        }
        if self.p == 2 {
            return Felt(a.0 ^ b.0);
        }
        let (mut av, mut bv, mut out, mut scale) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.e {
            out += ((av % self.p + bv % self.p) % self.p) * scale;
            av /= self.p;
            bv /= self.p;
            scale *= self.p;
        }
        Felt(out)
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        if self.p == 2 {
            return a;
        }
        if self.e == 1 {
            return Felt(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut av, mut out, mut scale) = (a.0, 0u32, 1u32);
        for _ in 0..self.e {
            let d = av % self.p;
            out += (if d == 0 { 0 } else { self.p - d }) * scale;
            av /= self.p;
            scale *= self.p;
        }
        Felt(out)
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if let Some(t) = &self.mul_table {
            return Felt(t[(a.0 * self.q + b.0) as usize]);
        }
        if self.e == 1 {
            return Felt(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        self.mul_raw(a, b)
    }

    /// Polynomial multiplication with reduction, independent of the tables.
    fn mul_raw(&self, a: Felt, b: Felt) -> Felt {
        let e = self.e as usize;
        let p = self.p as u64;
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce x^(e+k) using x^e = -(modulus lower part).
        for i in (e..2 * e).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..e {
                let m = self.modulus[j] as u64;
                if m != 0 {
                    let sub = (c * m) % p;
                    prod[i - e + j] = (prod[i - e + j] + p - sub) % p;
                }
            }
        }
        let mut out = 0u32;
        for i in (0..e).rev() {
            out = out * self.p + prod[i] as u32;
        }
        Felt(out)
    }

    pub fn pow(&self, a: Felt, mut n: u64) -> Felt {
        let mut base = a;
        let mut acc = Felt::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; error on zero.
    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::ZeroInverse(self.q));
        }
        if let Some(t) = &self.inv_table {
            return Ok(Felt(t[a.0 as usize]));
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    /// Multiplies by a prime-subfield residue (entry of a GF(p) matrix).
    #[inline]
    pub fn scale_residue(&self, a: Felt, r: u32) -> Felt {
        match r {
            0 => Felt::ZERO,
            1 => a,
            _ => self.mul(a, Felt(r)),
        }
    }

    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            d.push(v % self.p);
            v /= self.p;
        }
        d
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut mt = vec![0u32; q * q];
        for a in 0..q as u32 {
            for b in a..q as u32 {
                let v = if self.e == 1 {
                    ((a as u64 * b as u64) % self.p as u64) as u32
                } else {
                    self.mul_raw(Felt(a), Felt(b)).0
                };
                mt[(a as usize) * q + b as usize] = v;
                mt[(b as usize) * q + a as usize] = v;
            }
        }
        let mut it = vec![0u32; q];
        for a in 1..q as u32 {
            if it[a as usize] != 0 {
                continue;
            }
            // Find the inverse by scanning the row of the table.
            let row = &mt[(a as usize) * q..(a as usize + 1) * q];
            let b = row.iter().position(|&v| v == 1).expect("unit has inverse") as u32;
            it[a as usize] = b;
            it[b as usize] = a;
        }
        self.mul_table = Some(mt.into_boxed_slice());
        self.inv_table = Some(it.into_boxed_slice());
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Writes q = p^e with p prime, or errors.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NonPrime(q));
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if rest != 1 {
                return Err(Error::NonPrime(q));
            }
            return Ok((p as u32, e));
        }
        p += 1;
    }
    Ok((q as u32, 1)) // q itself is prime
}

/// The monic irreducible of degree e over GF(p) whose low-coefficient tuple,
/// read as a base-p integer, is smallest.
fn first_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1]; // x
    }
    let e = e as usize;
    let mut low = vec![0u32; e];
    loop {
        let mut poly = low.clone();
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
        // Increment the base-p counter; degree-e irreducibles always exist,
        // so this terminates well before overflow.
        for d in low.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if poly[0] == 0 {
        return deg == 1 && poly[1] != 0; // divisible by x
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = low;
            for _ in 0..d {
                div.push((v % p as u64) as u32);
                v /= p as u64;
            }
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], den: &[u32], p: u32) -> bool {
    let p64 = p as u64;
    let mut rem: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap() % p64;
        let top = rem.len() - 1;
        if lead != 0 {
            for (j, &dc) in den.iter().enumerate().take(dd) {
                let idx = top - dd + j;
                rem[idx] = (rem[idx] + p64 * p64 - lead * dc as u64 % p64) % p64;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p64 == 0)
}
