//! Database chunking: a raw byte file becomes k fixed-size records, each
//! record becomes m base-q symbols (big-endian digits, zero-padded), and the
//! records are laid out columnar: m codewords, codeword r holding symbol r
//! of every record. One query vector then retrieves a whole record, because
//! the same local index addresses all m codewords.

use crate::error::{HarnessError, Result};
use num_bigint::BigUint;
use num_traits::Zero;
use tdpir::ff::Felt;
use tdpir::pir::PirScheme;

/// Layout metadata needed to decode retrieved records back into bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbMeta {
    pub k: usize,
    pub m: usize,
    pub record_bytes: usize,
    pub file_len: u64,
}

impl DbMeta {
    pub fn header_line(&self) -> String {
        format!(
            "DB {} {} {} {}",
            self.k, self.m, self.record_bytes, self.file_len
        )
    }

    pub fn parse(line: &str) -> Result<DbMeta> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 5 || parts[0] != "DB" {
            return Err(HarnessError::FileFormat(
                "expected: DB k m record_bytes file_len".into(),
            ));
        }
        let nums: Vec<u64> = parts[1..]
            .iter()
            .map(|v| {
                v.parse()
                    .map_err(|_| HarnessError::FileFormat(format!("bad integer {v}")))
            })
            .collect::<Result<_>>()?;
        Ok(DbMeta {
            k: nums[0] as usize,
            m: nums[1] as usize,
            record_bytes: nums[2] as usize,
            file_len: nums[3],
        })
    }
}

/// Number of base-q digits that can hold any `record_bytes`-byte value.
pub fn symbols_per_record(record_bytes: usize, q: u32) -> usize {
    if q.is_power_of_two() {
        let w = q.trailing_zeros() as usize;
        (record_bytes * 8).div_ceil(w)
    } else {
        // Digit count of the largest record value.
        let max = BigUint::from_bytes_be(&vec![0xFFu8; record_bytes]);
        if max.is_zero() {
            1
        } else {
            max.to_radix_be(q).len()
        }
    }
}

/// Big-endian base-q digits of one record, zero-padded on the left to m.
pub fn record_to_symbols(record: &[u8], q: u32, m: usize) -> Vec<u32> {
    if q.is_power_of_two() {
        let w = q.trailing_zeros() as usize;
        let total_bits = m * w;
        let pad_bits = total_bits - record.len() * 8;
        let bit_at = |i: usize| -> u32 {
            if i < pad_bits {
                0
            } else {
                let j = i - pad_bits;
                ((record[j / 8] >> (7 - j % 8)) & 1) as u32
            }
        };
        (0..m)
            .map(|r| (0..w).fold(0u32, |acc, b| (acc << 1) | bit_at(r * w + b)))
            .collect()
    } else {
        let digits = BigUint::from_bytes_be(record).to_radix_be(q);
        let mut out = vec![0u32; m - digits.len()];
        out.extend(digits.iter().map(|&d| d as u32));
        out
    }
}

/// Inverse of [`record_to_symbols`]: reassembles exactly `record_bytes`
/// bytes.
pub fn symbols_to_record(symbols: &[u32], q: u32, record_bytes: usize) -> Vec<u8> {
    if q.is_power_of_two() {
        let w = q.trailing_zeros() as usize;
        let total_bits = symbols.len() * w;
        let pad_bits = total_bits - record_bytes * 8;
        let mut out = vec![0u8; record_bytes];
        for (r, &sym) in symbols.iter().enumerate() {
            for b in 0..w {
                let bit = (sym >> (w - 1 - b)) & 1;
                let i = r * w + b;
                if i >= pad_bits && bit == 1 {
                    let j = i - pad_bits;
                    out[j / 8] |= 1 << (7 - j % 8);
                }
            }
        }
        out
    } else {
        let digits: Vec<u8> = symbols.iter().map(|&s| s as u8).collect();
        let value = BigUint::from_radix_be(&digits, q).expect("digits below radix");
        let bytes = value.to_bytes_be();
        let mut out = vec![0u8; record_bytes - bytes.len().min(record_bytes)];
        out.extend_from_slice(&bytes[bytes.len().saturating_sub(record_bytes)..]);
        out
    }
}

/// The encoded database: per-server share matrices, codeword-major
/// (`symbols[r * s + local]` is codeword r at the server's local position).
#[derive(Debug, Clone)]
pub struct EncodedDatabase {
    pub meta: DbMeta,
    /// One entry per server: s * m symbol values.
    pub shares: Vec<Vec<u32>>,
}

/// Splits `data` into k records, encodes each symbol column with the
/// scheme's code, and splits every codeword across the servers.
pub fn encode_file(scheme: &PirScheme, data: &[u8]) -> Result<EncodedDatabase> {
    let k = scheme.k();
    if k == 0 {
        return Err(HarnessError::Invalid("scheme has dimension zero".into()));
    }
    let q = scheme.field().q();
    let record_bytes = data.len().div_ceil(k).max(1);
    let m = symbols_per_record(record_bytes, q);
    let meta = DbMeta {
        k,
        m,
        record_bytes,
        file_len: data.len() as u64,
    };
    // Record i, zero-padded at the tail of the file.
    let mut records: Vec<Vec<u32>> = Vec::with_capacity(k);
    for i in 0..k {
        let start = (i * record_bytes).min(data.len());
        let end = ((i + 1) * record_bytes).min(data.len());
        let mut rec = data[start..end].to_vec();
        rec.resize(record_bytes, 0);
        records.push(record_to_symbols(&rec, q, m));
    }
    let ell = scheme.ell();
    let s = scheme.s();
    let field = scheme.field();
    let mut shares = vec![vec![0u32; s * m]; ell];
    for r in 0..m {
        let column: Vec<Felt> = records
            .iter()
            .map(|rec| field.felt(rec[r]).expect("digit below q"))
            .collect();
        let encoded = scheme.setup(&column)?;
        for (j, share) in shares.iter_mut().enumerate() {
            for local in 0..s {
                share[r * s + local] = encoded.share(j)[local].value();
            }
        }
    }
    Ok(EncodedDatabase { meta, shares })
}

/// Reassembles record `index` from the m reconstructed symbols, trimming
/// the zero padding of the final record.
pub fn decode_record(meta: &DbMeta, index: usize, symbols: &[u32], q: u32) -> Vec<u8> {
    let mut bytes = symbols_to_record(symbols, q, meta.record_bytes);
    let start = index * meta.record_bytes;
    let remaining = (meta.file_len as usize).saturating_sub(start);
    bytes.truncate(meta.record_bytes.min(remaining));
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_roundtrip_binary() {
        let rec = [0xDE, 0xAD, 0xBE, 0xEF];
        for q in [2u32, 4, 8, 16, 256] {
            let m = symbols_per_record(rec.len(), q);
            let syms = record_to_symbols(&rec, q, m);
            assert_eq!(syms.len(), m);
            assert!(syms.iter().all(|&s| s < q));
            assert_eq!(symbols_to_record(&syms, q, rec.len()), rec);
        }
    }

    #[test]
    fn symbol_roundtrip_ternary() {
        let rec = [7u8, 0, 255, 3];
        let q = 3;
        let m = symbols_per_record(rec.len(), q);
        let syms = record_to_symbols(&rec, q, m);
        assert_eq!(symbols_to_record(&syms, q, rec.len()), rec);
        // Leading zeros survive.
        let rec = [0u8, 0, 1];
        let m = symbols_per_record(3, q);
        let syms = record_to_symbols(&rec, q, m);
        assert_eq!(symbols_to_record(&syms, q, 3), rec);
    }

    #[test]
    fn meta_roundtrip() {
        let meta = DbMeta {
            k: 37,
            m: 9,
            record_bytes: 3,
            file_len: 100,
        };
        assert_eq!(DbMeta::parse(&meta.header_line()).unwrap(), meta);
    }
}
