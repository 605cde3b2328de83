//! Plain-text `key = value` configuration files and number lists.
//!
//! Lines starting with `#` are comments. Lists are comma separated and
//! numbers may be written as powers of two, e.g. `eps = 2^-20` or
//! `N = 2^4..2^10` for every power in between.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", i + 1)))?;
            let key = key.trim().trim_start_matches("--").to_string();
            if key.is_empty() {
                return Err(Error::Parse(format!("config line {}: empty key", i + 1)));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

/// A real number, also accepting `2^p` and `b^p`.
pub fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad number '{s}'"));
    if let Some((b, p)) = s.split_once('^') {
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        let p: f64 = p.trim().parse().map_err(|_| bad())?;
        return Ok(b.powf(p));
    }
    s.parse().map_err(|_| bad())
}

/// Comma-separated numbers; `2^a..2^b` expands to each integer power.
pub fn parse_number_list(s: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let exp = |t: &str| -> Result<(f64, i32)> {
                let (b, p) = t.trim().split_once('^').ok_or_else(|| Error::Parse(format!("range '{item}' needs b^p ends")))?;
                let b: f64 = b.parse().map_err(|_| Error::Parse(format!("bad range '{item}'")))?;
                let p: i32 = p.trim().parse().map_err(|_| Error::Parse(format!("bad range '{item}'")))?;
                Ok((b, p))
            };
            let ((b0, p0), (b1, p1)) = (exp(lo)?, exp(hi)?);
            if b0 != b1 {
                return Err(Error::Parse(format!("range '{item}' mixes bases")));
            }
            let step = if p1 >= p0 { 1 } else { -1 };
            let mut p = p0;
            loop {
                out.push(b0.powi(p));
                if p == p1 {
                    break;
                }
                p += step;
            }
        } else {
            out.push(parse_number(item)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("empty list '{s}'")));
    }
    Ok(out)
}

/// Like [`parse_number_list`] but every entry must be a nonnegative integer.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    parse_number_list(s)?
        .into_iter()
        .map(|v| {
            if v >= 0.0 && v.fract() == 0.0 && v < 1e15 {
                Ok(v as usize)
            } else {
                Err(Error::Parse(format!("'{v}' is not a nonnegative integer")))
            }
        })
        .collect()
}
