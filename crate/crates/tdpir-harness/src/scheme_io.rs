//! Scheme files on disk. A scheme prefix `X` expands to `X.td` (the design,
//! text) and `X.ic` (the code: generator matrix and information set, text);
//! an encoded database adds `X.db` (chunk layout metadata) next to a
//! directory of binary share files, one per server.

use crate::chunk::DbMeta;
use crate::error::{HarnessError, Result};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use tdpir::basecodes::LinearCode;
use tdpir::design::TransversalDesign;
use tdpir::ff::FieldSpec;
use tdpir::inccode::IncidenceCode;
use tdpir::pir::PirScheme;

pub fn design_path(prefix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}.td"))
}

pub fn code_path(prefix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}.ic"))
}

pub fn meta_path(prefix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}.db"))
}

pub fn share_path(dir: &Path, group_index: usize) -> PathBuf {
    dir.join(format!("share_{group_index}.shr"))
}

pub fn write_scheme(prefix: &str, design: &TransversalDesign, code: &IncidenceCode) -> Result<()> {
    let mut dw = BufWriter::new(File::create(design_path(prefix))?);
    design.write_to(&mut dw)?;
    dw.flush()?;
    let mut cw = BufWriter::new(File::create(code_path(prefix))?);
    code.write_to(&mut cw)?;
    cw.flush()?;
    Ok(())
}

pub fn load_scheme(prefix: &str) -> Result<PirScheme> {
    let mut dr = BufReader::new(File::open(design_path(prefix))?);
    let design = TransversalDesign::read_from(&mut dr)?;
    let mut cr = BufReader::new(File::open(code_path(prefix))?);
    let code = IncidenceCode::read_with_design(&mut cr, &design)?;
    Ok(PirScheme::new(code, design)?)
}

pub fn write_meta(prefix: &str, meta: &DbMeta) -> Result<()> {
    let mut w = BufWriter::new(File::create(meta_path(prefix))?);
    writeln!(w, "{}", meta.header_line())?;
    w.flush()?;
    Ok(())
}

pub fn read_meta(prefix: &str) -> Result<DbMeta> {
    let mut r = BufReader::new(File::open(meta_path(prefix))?);
    let mut line = String::new();
    r.read_line(&mut line)?;
    DbMeta::parse(&line)
}

/// Base-code file: header `CODE p e ell k`, then k generator rows of
/// field-element values.
pub fn read_base_code(path: &Path) -> Result<LinearCode> {
    let mut r = BufReader::new(File::open(path)?);
    let mut header = String::new();
    r.read_line(&mut header)?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 5 || parts[0] != "CODE" {
        return Err(HarnessError::FileFormat(
            "expected header: CODE p e ell k".into(),
        ));
    }
    let nums: Vec<u32> = parts[1..]
        .iter()
        .map(|v| {
            v.parse()
                .map_err(|_| HarnessError::FileFormat(format!("bad integer {v}")))
        })
        .collect::<Result<_>>()?;
    let (p, e, ell, k) = (nums[0], nums[1], nums[2] as usize, nums[3] as usize);
    let field = FieldSpec::new(p, e).map_err(HarnessError::Core)?;
    let mut gen = Vec::with_capacity(k);
    for _ in 0..k {
        let mut line = String::new();
        r.read_line(&mut line)?;
        let row = line
            .split_whitespace()
            .map(|v| {
                let value: u32 = v
                    .parse()
                    .map_err(|_| HarnessError::FileFormat(format!("bad symbol {v}")))?;
                field.felt(value).map_err(HarnessError::Core)
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != ell {
            return Err(HarnessError::FileFormat("generator row length".into()));
        }
        gen.push(row);
    }
    Ok(LinearCode::new(field, gen)?)
}

pub fn write_base_code(path: &Path, code: &LinearCode) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(
        w,
        "CODE {} {} {} {}",
        code.field().p(),
        code.field().e(),
        code.len(),
        code.k()
    )?;
    for row in code.generator() {
        let line: Vec<String> = row.iter().map(|f| f.value().to_string()).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    w.flush()?;
    Ok(())
}
