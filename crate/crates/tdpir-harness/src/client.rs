//! The client side: connections to the ell servers (TCP or in-process), a
//! full record retrieval, and measured-versus-predicted cost accounting.

use crate::chunk::{decode_record, DbMeta};
use crate::error::{HarnessError, Result};
use crate::server::Server;
use crate::wire::{read_frame, write_frame, Frame};
use rand::Rng;
use std::net::TcpStream;
use std::sync::Arc;
use tdpir::ff::Felt;
use tdpir::pir::{CostReport, PirScheme};

/// A byte-counting connection to one server.
pub trait ServerLink: Send {
    fn exchange(&mut self, frame: &Frame) -> Result<Frame>;
    fn bytes_sent(&self) -> u64;
    fn bytes_received(&self) -> u64;
}

pub struct TcpLink {
    stream: TcpStream,
    sent: u64,
    received: u64,
}

impl TcpLink {
    pub fn connect(addr: &str) -> Result<TcpLink> {
        Ok(TcpLink {
            stream: TcpStream::connect(addr)?,
            sent: 0,
            received: 0,
        })
    }
}

impl ServerLink for TcpLink {
    fn exchange(&mut self, frame: &Frame) -> Result<Frame> {
        self.sent += frame.wire_len();
        write_frame(&mut self.stream, frame)?;
        let reply = read_frame(&mut self.stream)?;
        self.received += reply.wire_len();
        if let Frame::Error { message } = &reply {
            return Err(HarnessError::ServerError(message.clone()));
        }
        Ok(reply)
    }

    fn bytes_sent(&self) -> u64 {
        self.sent
    }

    fn bytes_received(&self) -> u64 {
        self.received
    }
}

/// In-process transport: the same frames, no sockets. The acceptance suite
/// runs the whole protocol through this.
pub struct LocalLink {
    server: Arc<Server>,
    sent: u64,
    received: u64,
}

impl LocalLink {
    pub fn new(server: Arc<Server>) -> LocalLink {
        LocalLink {
            server,
            sent: 0,
            received: 0,
        }
    }

    pub fn server(&self) -> &Arc<Server> {
        &self.server
    }
}

impl ServerLink for LocalLink {
    fn exchange(&mut self, frame: &Frame) -> Result<Frame> {
        self.sent += frame.wire_len();
        // Encode/decode anyway so the loopback exercises the wire format.
        let decoded = Frame::decode(&frame.encode()[4..])?;
        let reply = self.server.handle(&decoded);
        self.received += reply.wire_len();
        if let Frame::Error { message } = &reply {
            return Err(HarnessError::ServerError(message.clone()));
        }
        Ok(reply)
    }

    fn bytes_sent(&self) -> u64 {
        self.sent
    }

    fn bytes_received(&self) -> u64 {
        self.received
    }
}

/// Measured traffic of one retrieval, split into protocol content (what the
/// accounting formulas count) and framing overhead.
#[derive(Debug, Clone)]
pub struct RetrievalStats {
    pub content_upload_bits: u64,
    pub content_download_bits: u64,
    pub wire_upload_bits: u64,
    pub wire_download_bits: u64,
    pub predicted: CostReport,
    pub records_symbols: usize,
}

impl RetrievalStats {
    pub fn framing_upload_bits(&self) -> u64 {
        self.wire_upload_bits - self.content_upload_bits
    }

    pub fn framing_download_bits(&self) -> u64 {
        self.wire_download_bits - self.content_download_bits
    }

    /// Content equals the accounting prediction: `ell ceil(log2 s)` up,
    /// `ell ceil(log2 q) * m` down.
    pub fn content_matches_prediction(&self) -> bool {
        self.content_upload_bits == self.predicted.upload_bits
            && self.content_download_bits == self.predicted.download_bits * self.records_symbols as u64
    }
}

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as u64
    }
}

/// Retrieves record `index`: one query set, ell concurrent exchanges, m
/// reconstructions. No partial output: any unreachable or failing server
/// aborts the retrieval.
pub fn retrieve_record(
    scheme: &PirScheme,
    meta: &DbMeta,
    links: &mut [Box<dyn ServerLink>],
    index: usize,
    rng: &mut impl Rng,
) -> Result<(Vec<u8>, RetrievalStats)> {
    let ell = scheme.ell();
    if links.len() != ell {
        return Err(HarnessError::Protocol(format!(
            "need {ell} server links, got {}",
            links.len()
        )));
    }
    let queries = scheme.gen_queries(index, rng)?;
    let sent_before: u64 = links.iter().map(|l| l.bytes_sent()).sum();
    let recv_before: u64 = links.iter().map(|l| l.bytes_received()).sum();

    // One frame per server, issued concurrently.
    let mut answers: Vec<Option<Vec<u32>>> = vec![None; ell];
    std::thread::scope(|scope| -> Result<()> {
        let mut handles = Vec::with_capacity(ell);
        for (j, link) in links.iter_mut().enumerate() {
            let local_index = queries.queries()[j];
            handles.push((
                j,
                scope.spawn(move || link.exchange(&Frame::Query { local_index })),
            ));
        }
        for (j, handle) in handles {
            let reply = handle
                .join()
                .map_err(|_| HarnessError::Protocol("client thread panicked".into()))??;
            match reply {
                Frame::Answer { symbols } => answers[j] = Some(symbols),
                other => {
                    return Err(HarnessError::Protocol(format!(
                        "expected an answer, got {other:?}"
                    )))
                }
            }
        }
        Ok(())
    })?;
    let answers: Vec<Vec<u32>> = answers.into_iter().map(Option::unwrap).collect();
    let queries_sent = ell as u64;
    let mut symbols_received = 0u64;
    for (j, a) in answers.iter().enumerate() {
        symbols_received += a.len() as u64;
        if a.len() != meta.m {
            return Err(HarnessError::Protocol(format!(
                "server {j} answered {} symbols, expected {}",
                a.len(),
                meta.m
            )));
        }
    }

    // Reconstruct each codeword's symbol from the per-server answers.
    let field = scheme.field();
    let mut record_symbols = Vec::with_capacity(meta.m);
    for r in 0..meta.m {
        let row: Vec<Felt> = answers
            .iter()
            .map(|a| field.felt(a[r]))
            .collect::<tdpir::Result<_>>()
            .map_err(HarnessError::Core)?;
        record_symbols.push(scheme.reconstruct(&queries, &row)?.value());
    }
    let bytes = decode_record(meta, index, &record_symbols, field.q());

    // Protocol content: each query carries one index in [0, s), each
    // answer symbol one element of GF(q). Counts are measured from the
    // actual frames; the widths come from the scheme parameters.
    let sent_after: u64 = links.iter().map(|l| l.bytes_sent()).sum();
    let recv_after: u64 = links.iter().map(|l| l.bytes_received()).sum();
    let stats = RetrievalStats {
        content_upload_bits: queries_sent * ceil_log2(scheme.s() as u64),
        content_download_bits: symbols_received * ceil_log2(field.q() as u64),
        wire_upload_bits: (sent_after - sent_before) * 8,
        wire_download_bits: (recv_after - recv_before) * 8,
        predicted: scheme.cost_report(),
        records_symbols: meta.m,
    };
    Ok((bytes, stats))
}
