//! Plain-text strategy and phase files.
//!
//! Both formats are `key=value` lines; `#` starts a comment and blank lines are
//! ignored. Settings are listed in index order `0..d`.
//!
//! Strategy file:
//!
//! ```text
//! d=5
//! oa=0,0,1,2,3
//! ob=1,1,1,1,2
//! ```
//!
//! Phase file (`phi[s]` holds `φ^s_1..φ^s_{d−1}` in turns; `φ^s_0 = 0`). Entries
//! are decimals or fractions `a/b` with a decimal numerator. The optional
//! `phi_eps` row is added to every setting before reduction mod 1.
//!
//! ```text
//! d=3
//! phi[0]=0,1/3
//! phi[1]=0.25,0.5
//! phi[2]=1/6,0
//! phi_eps=0.01/6,0
//! ```

use std::fmt::Write as _;
use std::path::Path;

use quditbell_core::quantum::MultiportPhases;
use quditbell_core::{DeterministicStrategy, GameParams};

use crate::error::{Error, Result};

fn entries(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            return None;
        }
        let (key, value) = line.split_once('=').unwrap_or((line, ""));
        Some((i + 1, key.trim(), value.trim()))
    })
}

fn parse_d(line: usize, value: &str) -> Result<GameParams> {
    let d: usize = value.parse().map_err(|_| Error::parse(line, format!("bad dimension `{value}`")))?;
    Ok(GameParams::new(d)?)
}

fn parse_residues(line: usize, value: &str) -> Result<Vec<u8>> {
    value
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u8>().map_err(|_| Error::parse(line, format!("bad residue `{t}`")))
        })
        .collect()
}

/// A decimal or a fraction `a/b`.
pub fn parse_number(token: &str) -> Option<f64> {
    let token = token.trim();
    let value = match token.split_once('/') {
        Some((a, b)) => a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?,
        None => token.parse::<f64>().ok()?,
    };
    value.is_finite().then_some(value)
}

fn parse_row(line: usize, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|t| parse_number(t).ok_or_else(|| Error::parse(line, format!("bad phase `{}`", t.trim()))))
        .collect()
}

pub fn parse_strategy(text: &str) -> Result<DeterministicStrategy> {
    let mut params = None;
    let mut alice = None;
    let mut bob = None;
    let mut last = 0;
    for (line, key, value) in entries(text) {
        last = line;
        match key {
            "d" => params = Some(parse_d(line, value)?),
            "oa" => alice = Some(parse_residues(line, value)?),
            "ob" => bob = Some(parse_residues(line, value)?),
            _ => return Err(Error::parse(line, format!("unknown key `{key}`"))),
        }
    }
    let params = params.ok_or_else(|| Error::parse(last, "missing `d=`"))?;
    let alice = alice.ok_or_else(|| Error::parse(last, "missing `oa=`"))?;
    let bob = bob.ok_or_else(|| Error::parse(last, "missing `ob=`"))?;
    Ok(DeterministicStrategy::new(&params, alice, bob)?)
}

pub fn format_strategy(s: &DeterministicStrategy) -> String {
    let join = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(",");
    format!("d={}\noa={}\nob={}\n", s.d(), join(s.alice()), join(s.bob()))
}

pub fn parse_phases(text: &str) -> Result<MultiportPhases> {
    let mut d = None;
    let mut rows: Vec<Option<Vec<f64>>> = Vec::new();
    let mut offset = None;
    let mut last = 0;
    for (line, key, value) in entries(text) {
        last = line;
        if key == "d" {
            let p = parse_d(line, value)?;
            d = Some(p.d());
            rows = vec![None; p.d()];
        } else if key == "phi_eps" {
            offset = Some(parse_row(line, value)?);
        } else if let Some(index) = key.strip_prefix("phi[").and_then(|k| k.strip_suffix(']')) {
            let d = d.ok_or_else(|| Error::parse(line, "`d=` must come before the phases"))?;
            let s: usize = index.trim().parse().map_err(|_| Error::parse(line, format!("bad setting `{index}`")))?;
            if s >= d {
                return Err(Error::parse(line, format!("setting {s} out of range for d = {d}")));
            }
            let row = parse_row(line, value)?;
            if row.len() != d - 1 {
                return Err(Error::parse(line, format!("expected {} phases, found {}", d - 1, row.len())));
            }
            if rows[s].replace(row).is_some() {
                return Err(Error::parse(line, format!("setting {s} given twice")));
            }
        } else {
            return Err(Error::parse(line, format!("unknown key `{key}`")));
        }
    }
    let d = d.ok_or_else(|| Error::parse(last, "missing `d=`"))?;
    let mut phases = Vec::with_capacity(d);
    for (s, row) in rows.into_iter().enumerate() {
        phases.push(row.ok_or_else(|| Error::parse(last, format!("missing `phi[{s}]=`")))?);
    }
    if let Some(offset) = offset {
        if offset.len() != d - 1 {
            return Err(Error::parse(last, format!("`phi_eps` needs {} entries, found {}", d - 1, offset.len())));
        }
        for row in &mut phases {
            row.iter_mut().zip(&offset).for_each(|(x, e)| *x += e);
        }
    }
    Ok(MultiportPhases::new(d, phases)?)
}

pub fn format_phases(phases: &MultiportPhases) -> String {
    let mut out = format!("d={}\n", phases.d());
    for (s, row) in phases.rows().iter().enumerate() {
        let row: Vec<String> = row.iter().map(|x| format!("{x:.12}")).collect();
        let _ = writeln!(out, "phi[{s}]={}", row.join(","));
    }
    out
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_round_trip() {
        let text = "# comment\nd=3\noa=0,0,1\nob=1,1,2 # trailing\n";
        let s = parse_strategy(text).unwrap();
        assert_eq!(s.alice(), &[0, 0, 1]);
        assert_eq!(s.bob(), &[1, 1, 2]);
        assert_eq!(parse_strategy(&format_strategy(&s)).unwrap(), s);
    }

    #[test]
    fn strategy_errors_name_the_line() {
        match parse_strategy("d=3\noa=0,0,7\nob=0,0,0\n") {
            Err(Error::Core(quditbell_core::Error::ResidueOutOfRange { value: 7, .. })) => {}
            other => panic!("{other:?}"),
        }
        match parse_strategy("d=3\noa=0,x,0\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_strategy("d=3\noa=0,0,0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_strategy("d=3\nfoo=1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn numbers_accept_fractions() {
        assert_eq!(parse_number("3/4"), Some(0.75));
        assert_eq!(parse_number(" 0.5 "), Some(0.5));
        assert!((parse_number("0.74797/22").unwrap() - 0.74797 / 22.0).abs() < 1e-15);
        assert_eq!(parse_number("1/0"), None);
        assert_eq!(parse_number("a"), None);
    }

    #[test]
    fn phases_with_offset_wrap() {
        let text = "d=3\nphi[1]=0.5,0.75\nphi[0]=0,1/3\nphi[2]=1/6,0\nphi_eps=0.75,0\n";
        let p = parse_phases(text).unwrap();
        assert!((p.get(0, 1) - 0.75).abs() < 1e-15);
        assert!((p.get(1, 1) - 0.25).abs() < 1e-15);
        assert!((p.get(2, 2) - 0.0).abs() < 1e-15);
        let again = parse_phases(&format_phases(&p)).unwrap();
        for s in 0..3 {
            for l in 0..3 {
                assert!((again.get(s, l) - p.get(s, l)).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn phase_file_errors() {
        assert!(matches!(parse_phases("d=3\nphi[0]=0,0\nphi[1]=0,0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_phases("d=3\nphi[0]=0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_phases("d=3\nphi[5]=0,0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_phases("phi[0]=0,0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_phases("d=2\nphi[0]=0\nphi[1]=0\nphi_eps=0,0\n"),
            Err(Error::Parse { .. })
        ));
    }
}
