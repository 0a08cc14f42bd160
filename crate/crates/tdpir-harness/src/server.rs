//! The server side of the simulator: a share store answering single-index
//! queries, usable in-process or behind a TCP listener.

use crate::error::{HarnessError, Result};
use crate::wire::{read_frame, write_frame, Frame};
use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

/// One server's share: m codeword slices of s symbols each, codeword-major,
/// with an instrumented read counter (one read per codeword per query).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareStore {
    pub p: u32,
    pub e: u32,
    pub s: usize,
    pub m: usize,
    pub group_index: usize,
    /// `symbols[r * s + local]` = codeword r at the local position.
    pub symbols: Vec<u32>,
}

impl ShareStore {
    pub fn new(
        p: u32,
        e: u32,
        s: usize,
        m: usize,
        group_index: usize,
        symbols: Vec<u32>,
    ) -> Result<ShareStore> {
        if symbols.len() != s * m {
            return Err(HarnessError::Invalid(format!(
                "share needs s*m = {} symbols, got {}",
                s * m,
                symbols.len()
            )));
        }
        Ok(ShareStore {
            p,
            e,
            s,
            m,
            group_index,
            symbols,
        })
    }

    /// The m symbols at one local index, one contiguous read per codeword.
    pub fn column(&self, local: u32) -> Option<Vec<u32>> {
        if (local as usize) < self.s {
            Some(
                (0..self.m)
                    .map(|r| self.symbols[r * self.s + local as usize])
                    .collect(),
            )
        } else {
            None
        }
    }

    /// Text header `SHARE p e s m group_index`, then s*m fixed-width
    /// little-endian 32-bit symbols.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        writeln!(
            w,
            "SHARE {} {} {} {} {}",
            self.p, self.e, self.s, self.m, self.group_index
        )?;
        for &sym in &self.symbols {
            w.write_all(&sym.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_to(&mut out).expect("vec write");
        out
    }

    pub fn read_from(r: &mut impl Read) -> Result<ShareStore> {
        let mut reader = BufReader::new(r);
        let mut header = String::new();
        reader.read_line(&mut header)?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 6 || parts[0] != "SHARE" {
            return Err(HarnessError::FileFormat(
                "expected header: SHARE p e s m group_index".into(),
            ));
        }
        let nums: Vec<u64> = parts[1..]
            .iter()
            .map(|v| {
                v.parse()
                    .map_err(|_| HarnessError::FileFormat(format!("bad integer {v}")))
            })
            .collect::<Result<_>>()?;
        let (p, e, s, m, group_index) = (
            nums[0] as u32,
            nums[1] as u32,
            nums[2] as usize,
            nums[3] as usize,
            nums[4] as usize,
        );
        let mut symbols = vec![0u32; s * m];
        let mut buf = [0u8; 4];
        for sym in symbols.iter_mut() {
            reader.read_exact(&mut buf)?;
            *sym = u32::from_le_bytes(buf);
        }
        ShareStore::new(p, e, s, m, group_index, symbols)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<ShareStore> {
        ShareStore::read_from(&mut &bytes[..])
    }
}

/// A running server: the share plus its instrumentation, shareable across
/// connection threads.
#[derive(Debug)]
pub struct Server {
    store: RwLock<ShareStore>,
    symbol_reads: AtomicU64,
    queries_served: AtomicU64,
}

impl Server {
    pub fn new(store: ShareStore) -> Server {
        Server {
            store: RwLock::new(store),
            symbol_reads: AtomicU64::new(0),
            queries_served: AtomicU64::new(0),
        }
    }

    /// Total stored-symbol reads; one per codeword per query.
    pub fn symbol_reads(&self) -> u64 {
        self.symbol_reads.load(Ordering::Relaxed)
    }

    pub fn queries_served(&self) -> u64 {
        self.queries_served.load(Ordering::Relaxed)
    }

    pub fn group_index(&self) -> usize {
        self.store.read().unwrap().group_index
    }

    /// Protocol step: queries read one column, loads replace the share.
    pub fn handle(&self, frame: &Frame) -> Frame {
        match frame {
            Frame::Query { local_index } => {
                let store = self.store.read().unwrap();
                match store.column(*local_index) {
                    Some(symbols) => {
                        self.symbol_reads
                            .fetch_add(store.m as u64, Ordering::Relaxed);
                        self.queries_served.fetch_add(1, Ordering::Relaxed);
                        Frame::Answer { symbols }
                    }
                    None => Frame::Error {
                        message: format!(
                            "local index {local_index} out of range (s = {})",
                            store.s
                        ),
                    },
                }
            }
            Frame::Load { share } => match ShareStore::from_bytes(share) {
                Ok(new_store) => {
                    *self.store.write().unwrap() = new_store;
                    Frame::Ok
                }
                Err(e) => Frame::Error {
                    message: format!("bad share: {e}"),
                },
            },
            other => Frame::Error {
                message: format!("unexpected frame {other:?}"),
            },
        }
    }
}

fn handle_connection(server: &Server, stream: TcpStream) {
    let mut reader = stream.try_clone().expect("clone stream");
    let mut writer = stream;
    loop {
        match read_frame(&mut reader) {
            Ok(frame) => {
                let reply = server.handle(&frame);
                let fatal = matches!(reply, Frame::Error { .. });
                if write_frame(&mut writer, &reply).is_err() || fatal {
                    return;
                }
            }
            Err(HarnessError::Io(e)) if e.kind() == std::io::ErrorKind::UnexpectedEof => return,
            Err(e) => {
                // Malformed frame: send a diagnostic and close.
                let _ = write_frame(
                    &mut writer,
                    &Frame::Error {
                        message: format!("malformed frame: {e}"),
                    },
                );
                return;
            }
        }
    }
}

/// Accepts connections until the listener is closed, one thread per client;
/// the shared store serves reads concurrently.
pub fn serve(server: Arc<Server>, listener: TcpListener) {
    for stream in listener.incoming() {
        match stream {
            Ok(stream) => {
                let server = Arc::clone(&server);
                std::thread::spawn(move || handle_connection(&server, stream));
            }
            Err(_) => return,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_store() -> ShareStore {
        ShareStore::new(2, 1, 4, 2, 3, vec![1, 0, 1, 1, 0, 0, 1, 0]).unwrap()
    }

    #[test]
    fn share_file_roundtrip() {
        let store = sample_store();
        let bytes = store.to_bytes();
        assert_eq!(ShareStore::from_bytes(&bytes).unwrap(), store);
    }

    #[test]
    fn query_reads_one_symbol_per_codeword() {
        let server = Server::new(sample_store());
        match server.handle(&Frame::Query { local_index: 0 }) {
            Frame::Answer { symbols } => assert_eq!(symbols, vec![1, 0]),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(server.symbol_reads(), 2);
        assert_eq!(server.queries_served(), 1);
    }

    #[test]
    fn out_of_range_query_is_an_error_frame() {
        let server = Server::new(sample_store());
        assert!(matches!(
            server.handle(&Frame::Query { local_index: 4 }),
            Frame::Error { .. }
        ));
        assert_eq!(server.symbol_reads(), 0);
    }

    #[test]
    fn load_replaces_the_share() {
        let server = Server::new(sample_store());
        let replacement = ShareStore::new(2, 1, 2, 1, 3, vec![1, 1]).unwrap();
        assert_eq!(
            server.handle(&Frame::Load {
                share: replacement.to_bytes()
            }),
            Frame::Ok
        );
        match server.handle(&Frame::Query { local_index: 1 }) {
            Frame::Answer { symbols } => assert_eq!(symbols, vec![1]),
            other => panic!("unexpected {other:?}"),
        }
    }
}
