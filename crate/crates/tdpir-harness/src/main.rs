//! Command-line front end: build scheme files, encode a database into
//! shares, run servers, retrieve privately, audit privacy, and print the
//! dimension/accounting tables.

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::net::TcpListener;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use tdpir::basecodes::{golay12_ternary, golay24_binary, mds_q_plus_2, rm1, rs_full, LinearCode};
use tdpir::design::{td_affine, td_projective, TransversalDesign};
use tdpir::ff::{prime_power, FieldSpec};
use tdpir::hamada;
use tdpir::inccode::{code_of_design, incidence_code_with_design, rs2_dimension_census};
use tdpir_harness::chunk::{encode_file, symbols_per_record};
use tdpir_harness::client::{retrieve_record, LocalLink, ServerLink, TcpLink};
use tdpir_harness::scheme_io;
use tdpir_harness::server::{serve, Server, ShareStore};
use tdpir_harness::{HarnessError, Result};

#[derive(Parser)]
#[command(
    name = "tdpir",
    about = "Private information retrieval from transversal designs",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build design+code files from a family spec, e.g.
    /// `build affine 2 8`, `build golay3`, `build rs 3 4`,
    /// `build mds-q2 4`, `build rm1 3`, `build oa-code base.code`.
    Build {
        /// Family spec: affine m q | projective m q | oa-code FILE |
        /// golay2 | golay3 | rm1 m | mds-q2 q | rs k q
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        /// Output prefix (writes PREFIX.td and PREFIX.ic).
        #[arg(long)]
        out: String,
        /// Extension degree of the symbol alphabet GF(p^ext).
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Encode a raw file into per-server share files.
    Encode {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Serve one share file over TCP.
    Serve {
        #[arg(long)]
        share: PathBuf,
        #[arg(long)]
        listen: String,
    },
    /// Retrieve one record from running servers.
    Retrieve {
        #[arg(long)]
        scheme: String,
        /// Comma-separated server addresses, one per group, in group order.
        #[arg(long)]
        servers: String,
        /// Record index (0-based).
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the record here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the exact (and optionally empirical) privacy audits.
    Audit {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        tmax: usize,
        /// Also sample the joint query distribution of two indices.
        #[arg(long, default_value_t = false)]
        empirical: bool,
        #[arg(long, default_value_t = 0)]
        index_a: usize,
        #[arg(long, default_value_t = 1)]
        index_b: usize,
        /// Comma-separated colluding servers for the empirical audit.
        #[arg(long, default_value = "0")]
        servers: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print dimension tables (and retrieval accounting for a file size).
    Tables {
        /// affine | projective
        #[arg(long, default_value = "affine")]
        family: String,
        /// Comma-separated m:q rows, e.g. "2:8,2:16,3:8".
        #[arg(long)]
        rows: String,
        #[arg(long, default_value_t = false)]
        csv: bool,
        /// If set, add per-retrieval accounting for a database of this many
        /// bytes.
        #[arg(long)]
        file_size: Option<u64>,
    },
    /// Dimension histogram of the length-ell Reed-Solomon incidence codes.
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: usize,
    },
    /// Timed in-process retrievals with cost and read-count verification.
    Bench {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 32)]
        retrievals: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| HarnessError::Invalid(format!("bad {what}: {s}")))
}

fn field_of(q: u64, ext: u32) -> Result<FieldSpec> {
    let (p, _) = prime_power(q)?;
    Ok(FieldSpec::new(p, ext)?)
}

fn build_family(
    family: &[String],
    ext: u32,
) -> Result<(TransversalDesign, tdpir::inccode::IncidenceCode)> {
    let name = family[0].as_str();
    let base: Option<LinearCode> = match name {
        "affine" | "projective" => None,
        "golay2" => Some(golay24_binary()),
        "golay3" => Some(golay12_ternary()),
        "rm1" => {
            let m = parse_usize(family.get(1).map_or("", |s| s), "rm1 order")? as u32;
            Some(rm1(m)?)
        }
        "mds-q2" => {
            let q: u64 = family
                .get(1)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| HarnessError::Invalid("mds-q2 needs q".into()))?;
            let (p, e) = prime_power(q)?;
            Some(mds_q_plus_2(&FieldSpec::new(p, e)?)?)
        }
        "rs" => {
            let k = parse_usize(family.get(1).map_or("", |s| s), "rs dimension")?;
            let q: u64 = family
                .get(2)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| HarnessError::Invalid("rs needs k and q".into()))?;
            let (p, e) = prime_power(q)?;
            Some(rs_full(k, &FieldSpec::new(p, e)?)?)
        }
        "oa-code" => {
            let path = family
                .get(1)
                .ok_or_else(|| HarnessError::Invalid("oa-code needs a file".into()))?;
            Some(scheme_io::read_base_code(PathBuf::from(path).as_path())?)
        }
        other => {
            return Err(HarnessError::Invalid(format!(
                "unknown family {other}; see `tdpir build --help`"
            )))
        }
    };
    match base {
        Some(c0) => {
            let target = FieldSpec::new(c0.field().p(), ext)?;
            let (code, design) = incidence_code_with_design(&c0, &target)?;
            Ok((design, code))
        }
        None => {
            let m = parse_usize(family.get(1).map_or("", |s| s), "dimension m")?;
            let q: u64 = family
                .get(2)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| HarnessError::Invalid(format!("{name} needs m and q")))?;
            let (p, e) = prime_power(q)?;
            let geometry_field = FieldSpec::new(p, e)?;
            let design = if name == "affine" {
                td_affine(m, &geometry_field)?
            } else {
                td_projective(m, &geometry_field)?
            };
            let target = field_of(q, ext)?;
            let code = code_of_design(&design, &target)?;
            Ok((design, code))
        }
    }
}

fn human_bytes(b: f64) -> String {
    if b >= 1e9 {
        format!("{:.2} GB", b / 1e9)
    } else if b >= 1e6 {
        format!("{:.2} MB", b / 1e6)
    } else if b >= 1e3 {
        format!("{:.1} kB", b / 1e3)
    } else {
        format!("{b:.0} B")
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Build { family, out, ext } => {
            let (design, code) = build_family(&family, ext)?;
            scheme_io::write_scheme(&out, &design, &code)?;
            println!(
                "scheme {out}: ell={} s={} n={} k={} q={} (strength {}, lambda {})",
                design.ell(),
                design.s(),
                code.n(),
                code.k(),
                code.field().q(),
                design.strength(),
                design.lambda()
            );
            Ok(true)
        }
        Cmd::Encode {
            scheme,
            input,
            out_dir,
        } => {
            let s = scheme_io::load_scheme(&scheme)?;
            let data = fs::read(&input)?;
            let encoded = encode_file(&s, &data)?;
            fs::create_dir_all(&out_dir)?;
            for (j, symbols) in encoded.shares.iter().enumerate() {
                let store = ShareStore::new(
                    s.field().p(),
                    s.field().e(),
                    s.s(),
                    encoded.meta.m,
                    j,
                    symbols.clone(),
                )?;
                let mut f = fs::File::create(scheme_io::share_path(&out_dir, j))?;
                store.write_to(&mut f)?;
            }
            scheme_io::write_meta(&scheme, &encoded.meta)?;
            println!(
                "encoded {} bytes into {} records of {} bytes ({} symbols each) across {} servers",
                data.len(),
                encoded.meta.k,
                encoded.meta.record_bytes,
                encoded.meta.m,
                s.ell()
            );
            Ok(true)
        }
        Cmd::Serve { share, listen } => {
            let store = ShareStore::read_from(&mut fs::File::open(&share)?)?;
            println!(
                "serving group {} ({} symbols) on {listen}",
                store.group_index,
                store.symbols.len()
            );
            let listener = TcpListener::bind(&listen)?;
            serve(Arc::new(Server::new(store)), listener);
            Ok(true)
        }
        Cmd::Retrieve {
            scheme,
            servers,
            index,
            seed,
            out,
        } => {
            let s = scheme_io::load_scheme(&scheme)?;
            let meta = scheme_io::read_meta(&scheme)?;
            let addrs: Vec<&str> = servers.split(',').collect();
            let mut links: Vec<Box<dyn ServerLink>> = Vec::new();
            for a in &addrs {
                links.push(Box::new(TcpLink::connect(a)?));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (bytes, stats) = retrieve_record(&s, &meta, &mut links, index, &mut rng)?;
            eprintln!(
                "record {index}: {} bytes; content {} bits up / {} bits down \
                 (framing +{} / +{}), predicted {} up / {} down per codeword",
                bytes.len(),
                stats.content_upload_bits,
                stats.content_download_bits,
                stats.framing_upload_bits(),
                stats.framing_download_bits(),
                stats.predicted.upload_bits,
                stats.predicted.download_bits,
            );
            if !stats.content_matches_prediction() {
                eprintln!("cost accounting MISMATCH");
                return Ok(false);
            }
            match out {
                Some(path) => fs::write(path, &bytes)?,
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(&bytes)?;
                }
            }
            Ok(true)
        }
        Cmd::Audit {
            scheme,
            tmax,
            empirical,
            index_a,
            index_b,
            servers,
            samples,
            seed,
        } => {
            let s = scheme_io::load_scheme(&scheme)?;
            let report = s.audit_privacy_exact(tmax).map_err(HarnessError::Core)?;
            println!(
                "exact audit t_max={}: {} ({} assignments checked)",
                report.t_max,
                if report.passed { "PASS" } else { "FAIL" },
                report.assignments_checked
            );
            if let Some(v) = &report.violation {
                println!(
                    "first violation: groups {:?} assignment {:?} target {} expected {} got {}",
                    v.groups, v.assignment, v.target, v.expected, v.got
                );
            }
            let mut ok = report.passed;
            if empirical {
                let servers: Vec<usize> = servers
                    .split(',')
                    .map(|v| parse_usize(v, "server index"))
                    .collect::<Result<_>>()?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let rep = s
                    .audit_privacy_empirical(index_a, index_b, &servers, samples, &mut rng)
                    .map_err(HarnessError::Core)?;
                println!(
                    "empirical audit T={servers:?} i={index_a} i'={index_b}: \
                     tv={:.5} threshold={:.5} -> {}",
                    rep.tv_distance,
                    rep.threshold,
                    if rep.distinguishable {
                        "DISTINGUISHABLE"
                    } else {
                        "indistinguishable"
                    }
                );
                ok = ok && !rep.distinguishable;
            }
            Ok(ok)
        }
        Cmd::Tables {
            family,
            rows,
            csv,
            file_size,
        } => {
            let parsed: Vec<(u32, u64)> = rows
                .split(',')
                .map(|pair| {
                    let (m, q) = pair
                        .split_once(':')
                        .ok_or_else(|| HarnessError::Invalid(format!("bad row {pair}")))?;
                    Ok((
                        m.trim().parse().map_err(|_| {
                            HarnessError::Invalid(format!("bad m in {pair}"))
                        })?,
                        q.trim().parse().map_err(|_| {
                            HarnessError::Invalid(format!("bad q in {pair}"))
                        })?,
                    ))
                })
                .collect::<Result<_>>()?;
            let table = match family.as_str() {
                "affine" => hamada::table1(&parsed)?,
                "projective" => hamada::table_projective(&parsed)?,
                other => {
                    return Err(HarnessError::Invalid(format!(
                        "family must be affine or projective, got {other}"
                    )))
                }
            };
            if csv {
                println!("m,q,ell,n,k,rate");
                for r in &table {
                    println!("{},{},{},{},{},{:.3}", r.m, r.q, r.ell, r.n, r.k, r.rate());
                }
            } else {
                println!(
                    "{:>2} {:>7} {:>7} {:>14} {:>14} {:>6}",
                    "m", "q", "ell", "n", "k", "rate"
                );
                for r in &table {
                    println!(
                        "{:>2} {:>7} {:>7} {:>14} {:>14} {:>6.3}",
                        r.m,
                        r.q,
                        r.ell,
                        r.n,
                        r.k,
                        r.rate()
                    );
                }
            }
            if let Some(size) = file_size {
                println!();
                println!(
                    "accounting for a {} database:",
                    human_bytes(size as f64)
                );
                println!(
                    "{:>2} {:>7} {:>12} {:>14} {:>16} {:>12}",
                    "m", "q", "chunk", "download", "storage overhead", "ops/server"
                );
                for r in &table {
                    let record_bytes = (size as u128).div_ceil(r.k) as usize;
                    let m_syms = symbols_per_record(record_bytes, r.q as u32);
                    let w = (r.q as f64).log2();
                    let download_bits = r.ell as f64 * m_syms as f64 * w.ceil();
                    let overhead_bits = (r.n - r.k) as f64 * m_syms as f64 * w;
                    println!(
                        "{:>2} {:>7} {:>12} {:>14} {:>16} {:>12}",
                        r.m,
                        r.q,
                        human_bytes(record_bytes as f64),
                        human_bytes(download_bits / 8.0),
                        human_bytes(overhead_bits / 8.0),
                        1
                    );
                }
            }
            Ok(true)
        }
        Cmd::Census { q, ell } => {
            let (p, e) = prime_power(q)?;
            let field = FieldSpec::new(p, e)?;
            let hist = rs2_dimension_census(&field, ell).map_err(HarnessError::Core)?;
            let parts: Vec<String> = hist
                .iter()
                .rev()
                .map(|(dim, count)| format!("dim {dim}: {count}"))
                .collect();
            println!("{}", parts.join(", "));
            Ok(true)
        }
        Cmd::Bench {
            scheme,
            input,
            retrievals,
            seed,
        } => {
            let s = scheme_io::load_scheme(&scheme)?;
            let data = fs::read(&input)?;
            let encoded = encode_file(&s, &data)?;
            let servers: Vec<Arc<Server>> = encoded
                .shares
                .iter()
                .enumerate()
                .map(|(j, symbols)| {
                    Ok(Arc::new(Server::new(ShareStore::new(
                        s.field().p(),
                        s.field().e(),
                        s.s(),
                        encoded.meta.m,
                        j,
                        symbols.clone(),
                    )?)))
                })
                .collect::<Result<_>>()?;
            let mut links: Vec<Box<dyn ServerLink>> = servers
                .iter()
                .map(|srv| Box::new(LocalLink::new(Arc::clone(srv))) as Box<dyn ServerLink>)
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ok = true;
            let mut latencies = Vec::with_capacity(retrievals);
            for r in 0..retrievals {
                let index = r % s.k();
                let start = std::time::Instant::now();
                let (bytes, stats) = retrieve_record(&s, &encoded.meta, &mut links, index, &mut rng)?;
                latencies.push(start.elapsed().as_secs_f64() * 1e3);
                let lo = index * encoded.meta.record_bytes;
                let hi = (lo + encoded.meta.record_bytes).min(data.len());
                let expected = if lo < data.len() { &data[lo..hi] } else { &[] };
                if bytes != expected {
                    eprintln!("retrieval {r}: record mismatch at index {index}");
                    ok = false;
                }
                if !stats.content_matches_prediction() {
                    eprintln!("retrieval {r}: cost accounting mismatch");
                    ok = false;
                }
            }
            // One read per codeword per query, on every server.
            for srv in &servers {
                if srv.symbol_reads() != srv.queries_served() * encoded.meta.m as u64 {
                    eprintln!(
                        "server {} read {} symbols over {} queries (expected 1/codeword)",
                        srv.group_index(),
                        srv.symbol_reads(),
                        srv.queries_served()
                    );
                    ok = false;
                }
            }
            latencies.sort_by(f64::total_cmp);
            let mean: f64 = latencies.iter().sum::<f64>() / latencies.len().max(1) as f64;
            println!(
                "{} retrievals: latency min {:.3} ms / mean {:.3} ms / max {:.3} ms; \
                 upload {} bits, download {} bits per retrieval; reads/server/query = {} \
                 (1 per codeword); {}",
                latencies.len(),
                latencies.first().unwrap_or(&0.0),
                mean,
                latencies.last().unwrap_or(&0.0),
                s.cost_report().upload_bits,
                s.cost_report().download_bits * encoded.meta.m as u64,
                encoded.meta.m,
                if ok { "OK" } else { "FAILED" }
            );
            Ok(ok)
        }
    }
}
