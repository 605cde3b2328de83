//! CSV output for study results.
//!
//! Errors are written with four significant digits, rates with three
//! decimals, and ε, γ, H in shortest round-trip form. Fields that do not
//! apply to a row are left empty.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::MeshKind;
use crate::studies::{SlopeStudy, StudyResult, StudyRow};

pub const STUDY_HEADER: &str = "variant,k,N,H,eps,gamma,e_dG,rate_dG,e_dGb,rate_dGb";
pub const SLOPE_HEADER: &str = "eps,H,N_DL,e_dG,e_dGb,reference";

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

pub fn format_row(r: &StudyRow) -> String {
    format!(
        "{},{},{},{},{:e},{:e},{:.3e},{},{:.3e},{}",
        r.variant.label(),
        r.k,
        r.n,
        opt(r.h, |h| format!("{h:e}")),
        r.eps,
        r.gamma,
        r.e_dg,
        opt(r.rate_dg, |x| format!("{x:.3}")),
        r.e_dgb,
        opt(r.rate_dgb, |x| format!("{x:.3}")),
    )
}

pub fn study_csv(result: &StudyResult) -> String {
    let mut s = String::from(STUDY_HEADER);
    s.push('\n');
    for r in &result.rows {
        let _ = writeln!(s, "{}", format_row(r));
    }
    s
}

pub fn write_study(result: &StudyResult, mut out: impl Write) -> Result<()> {
    out.write_all(study_csv(result).as_bytes())?;
    Ok(())
}

/// Writes the study CSV to `path`.
pub fn emit_report(result: &StudyResult, path: &Path) -> Result<()> {
    std::fs::write(path, study_csv(result))?;
    Ok(())
}

fn field<T: std::str::FromStr>(s: &str, name: &str, line: usize) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad {name} '{s}'")))
}

fn opt_field(s: &str, name: &str, line: usize) -> Result<Option<f64>> {
    if s.trim().is_empty() {
        Ok(None)
    } else {
        field(s, name, line).map(Some)
    }
}

/// Parses a study CSV produced by [`study_csv`].
pub fn read_study(input: impl BufRead) -> Result<StudyResult> {
    let mut lines = input.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header.trim() != STUDY_HEADER {
        return Err(Error::Parse(format!("unexpected header '{header}'")));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let ln = i + 2;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 10 {
            return Err(Error::Parse(format!("line {ln}: expected 10 fields, found {}", f.len())));
        }
        rows.push(StudyRow {
            variant: MeshKind::parse(f[0])?,
            k: field(f[1], "k", ln)?,
            n: field(f[2], "N", ln)?,
            h: opt_field(f[3], "H", ln)?,
            eps: field(f[4], "eps", ln)?,
            gamma: field(f[5], "gamma", ln)?,
            e_dg: field(f[6], "e_dG", ln)?,
            rate_dg: opt_field(f[7], "rate_dG", ln)?,
            e_dgb: field(f[8], "e_dGb", ln)?,
            rate_dgb: opt_field(f[9], "rate_dGb", ln)?,
        });
    }
    Ok(StudyResult { rows })
}

pub fn slope_csv(study: &SlopeStudy) -> String {
    let mut s = String::from(SLOPE_HEADER);
    s.push('\n');
    for r in &study.rows {
        let _ = writeln!(s, "{:e},{:e},{},{:.3e},{:.3e},{:.3e}", r.eps, r.h, r.n, r.e_dg, r.e_dgb, r.reference);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> StudyResult {
        let base = StudyRow {
            variant: MeshKind::Shishkin,
            k: 1,
            n: 16,
            h: None,
            eps: 2f64.powi(-20),
            gamma: 0.405,
            e_dg: 1.369_2e-3,
            rate_dg: Some(0.970_49),
            e_dgb: 3.4567e-2,
            rate_dgb: Some(0.5),
        };
        let dl = StudyRow {
            variant: MeshKind::DuranLombardi,
            n: 70,
            h: Some(0.5),
            rate_dg: None,
            rate_dgb: None,
            ..base.clone()
        };
        StudyResult { rows: vec![base, dl] }
    }

    #[test]
    fn formatting() {
        let csv = study_csv(&sample());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], STUDY_HEADER);
        assert_eq!(lines[1], "S,1,16,,9.5367431640625e-7,4.05e-1,1.369e-3,0.970,3.457e-2,0.500");
        assert_eq!(lines[2], "DL,1,70,5e-1,9.5367431640625e-7,4.05e-1,1.369e-3,,3.457e-2,");
    }

    #[test]
    fn round_trip() {
        let original = sample();
        let back = read_study(study_csv(&original).as_bytes()).unwrap();
        assert_eq!(back.rows.len(), 2);
        for (a, b) in original.rows.iter().zip(&back.rows) {
            assert_eq!(a.variant, b.variant);
            assert_eq!((a.k, a.n, a.h, a.eps, a.gamma), (b.k, b.n, b.h, b.eps, b.gamma));
            assert_eq!(b.e_dg, format!("{:.3e}", a.e_dg).parse::<f64>().unwrap());
            assert_eq!(b.rate_dg.is_some(), a.rate_dg.is_some());
        }
        assert_eq!(study_csv(&back), study_csv(&original));
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_study("nope\n".as_bytes()).is_err());
        let bad = format!("{STUDY_HEADER}\nS,1,16\n");
        assert!(read_study(bad.as_bytes()).is_err());
    }
}
