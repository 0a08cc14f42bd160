//! Length-prefixed binary frames exchanged between client and servers.
//!
//! Every frame is `[len: u32 LE] [tag: u8] [payload]` with `len` counting
//! the tag byte plus the payload. Symbols travel as fixed-width 32-bit
//! little-endian integers (their field-element values); the protocol-content
//! size in the retrieval cost accounting is smaller and is reported
//! separately from this framing by the client.

use crate::error::{HarnessError, Result};
use std::io::{Read, Write};

pub const TAG_QUERY: u8 = 1;
pub const TAG_ANSWER: u8 = 2;
pub const TAG_LOAD: u8 = 3;
pub const TAG_ERROR: u8 = 4;
pub const TAG_OK: u8 = 5;

/// Frames too large to be legitimate are rejected before allocation.
pub const MAX_FRAME: u32 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Frame {
    /// One local index into the server's share, in `[0, s)`.
    Query { local_index: u32 },
    /// The symbols at the queried index, one per stored codeword.
    Answer { symbols: Vec<u32> },
    /// Replace the server's share with the given share-file bytes.
    Load { share: Vec<u8> },
    /// Fatal diagnostic; the sender closes the connection after this.
    Error { message: String },
    /// Acknowledgement for `Load`.
    Ok,
}

impl Frame {
    pub fn encode(&self) -> Vec<u8> {
        let (tag, payload): (u8, Vec<u8>) = match self {
            Frame::Query { local_index } => (TAG_QUERY, local_index.to_le_bytes().to_vec()),
            Frame::Answer { symbols } => (
                TAG_ANSWER,
                symbols.iter().flat_map(|s| s.to_le_bytes()).collect(),
            ),
            Frame::Load { share } => (TAG_LOAD, share.clone()),
            Frame::Error { message } => (TAG_ERROR, message.as_bytes().to_vec()),
            Frame::Ok => (TAG_OK, Vec::new()),
        };
        let len = (payload.len() + 1) as u32;
        let mut out = Vec::with_capacity(5 + payload.len());
        out.extend_from_slice(&len.to_le_bytes());
        out.push(tag);
        out.extend_from_slice(&payload);
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Frame> {
        if bytes.is_empty() {
            return Err(HarnessError::MalformedFrame("empty frame body".into()));
        }
        let tag = bytes[0];
        let payload = &bytes[1..];
        match tag {
            TAG_QUERY => {
                if payload.len() != 4 {
                    return Err(HarnessError::MalformedFrame(
                        "query payload must be 4 bytes".into(),
                    ));
                }
                Ok(Frame::Query {
                    local_index: u32::from_le_bytes(payload.try_into().unwrap()),
                })
            }
            TAG_ANSWER => {
                if !payload.len().is_multiple_of(4) {
                    return Err(HarnessError::MalformedFrame(
                        "answer payload must be a multiple of 4 bytes".into(),
                    ));
                }
                Ok(Frame::Answer {
                    symbols: payload
                        .chunks_exact(4)
                        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
                        .collect(),
                })
            }
            TAG_LOAD => Ok(Frame::Load {
                share: payload.to_vec(),
            }),
            TAG_ERROR => Ok(Frame::Error {
                message: String::from_utf8_lossy(payload).into_owned(),
            }),
            TAG_OK => {
                if !payload.is_empty() {
                    return Err(HarnessError::MalformedFrame("ok carries no payload".into()));
                }
                Ok(Frame::Ok)
            }
            other => Err(HarnessError::MalformedFrame(format!("unknown tag {other}"))),
        }
    }

    /// Total bytes on the wire, framing included.
    pub fn wire_len(&self) -> u64 {
        self.encode().len() as u64
    }
}

pub fn write_frame(w: &mut impl Write, frame: &Frame) -> Result<()> {
    w.write_all(&frame.encode())?;
    w.flush()?;
    Ok(())
}

pub fn read_frame(r: &mut impl Read) -> Result<Frame> {
    let mut len_bytes = [0u8; 4];
    r.read_exact(&mut len_bytes)?;
    let len = u32::from_le_bytes(len_bytes);
    if len == 0 || len > MAX_FRAME {
        return Err(HarnessError::MalformedFrame(format!("bad length {len}")));
    }
    let mut body = vec![0u8; len as usize];
    r.read_exact(&mut body)?;
    Frame::decode(&body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        let f = Frame::Query { local_index: 7 };
        assert_eq!(f.encode(), vec![5, 0, 0, 0, TAG_QUERY, 7, 0, 0, 0]);
        assert_eq!(Frame::Ok.encode(), vec![1, 0, 0, 0, TAG_OK]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Frame::decode(&[]).is_err());
        assert!(Frame::decode(&[99, 1, 2]).is_err());
        assert!(Frame::decode(&[TAG_QUERY, 1, 2]).is_err()); // short payload
        let mut r = &[3u8, 0, 0, 0][..]; // truncated body
        assert!(read_frame(&mut r).is_err());
    }

    proptest! {
        #[test]
        fn roundtrip(tagged in prop_oneof![
            any::<u32>().prop_map(|local_index| Frame::Query { local_index }),
            proptest::collection::vec(any::<u32>(), 0..64).prop_map(|symbols| Frame::Answer { symbols }),
            proptest::collection::vec(any::<u8>(), 0..256).prop_map(|share| Frame::Load { share }),
            "[a-z ]{0,40}".prop_map(|message| Frame::Error { message }),
            Just(Frame::Ok),
        ]) {
            let bytes = tagged.encode();
            let mut cursor = &bytes[..];
            let back = read_frame(&mut cursor).unwrap();
            prop_assert_eq!(back, tagged);
            prop_assert!(cursor.is_empty());
        }
    }
}
