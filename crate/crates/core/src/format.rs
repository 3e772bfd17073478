//! Text formats for ambients and monomial lists.
//!
//! Ambient files are sectioned:
//!
//! ```text
//! [names]        optional variable names, whitespace separated
//! [rays]         one primitive ray per line
//! [cones]        one maximal cone per line, 1-based ray indices
//! [grading]      one row of the free part of the degree map per line
//! [torsion]      `q | w_1 ... w_r`
//! [irrelevant]   one component per line, 1-based indices or names
//! ```
//!
//! Either `[rays]` + `[cones]` or `[grading]` + `[irrelevant]` must be given.
//! When both are present the fan wins and the rest is checked against it.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::toric::{Fan, Grading, Presentation, ToricAmbient};
use crate::varset::VarSet;

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

#[derive(Default)]
struct Sections {
    names: Vec<String>,
    rays: Vec<(usize, Vec<i64>)>,
    cones: Vec<(usize, Vec<String>)>,
    grading: Vec<(usize, Vec<BigInt>)>,
    torsion: Vec<(usize, BigInt, Vec<BigInt>)>,
    irrelevant: Vec<(usize, Vec<String>)>,
    seen: Vec<String>,
}

fn ints<T: std::str::FromStr>(line: &str, lineno: usize) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(lineno, format!("not an integer: {t}"))))
        .collect()
}

pub fn parse_ambient(text: &str) -> Result<ToricAmbient> {
    let mut s = Sections::default();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim().to_ascii_lowercase();
            if !["names", "rays", "cones", "grading", "torsion", "irrelevant"].contains(&name.as_str()) {
                return Err(Error::parse(lineno, format!("unknown section [{name}]")));
            }
            if s.seen.contains(&name) {
                return Err(Error::parse(lineno, format!("section [{name}] repeated")));
            }
            s.seen.push(name.clone());
            current = Some(name);
            continue;
        }
        let Some(sec) = current.as_deref() else {
            return Err(Error::parse(lineno, "data before the first section header"));
        };
        match sec {
            "names" => s.names.extend(line.split_whitespace().map(String::from)),
            "rays" => s.rays.push((lineno, ints(line, lineno)?)),
            "cones" => s.cones.push((lineno, line.split_whitespace().map(String::from).collect())),
            "grading" => s.grading.push((lineno, ints(line, lineno)?)),
            "torsion" => {
                let (q, w) = line
                    .split_once('|')
                    .ok_or_else(|| Error::parse(lineno, "torsion rows look like `q | w_1 ... w_r`"))?;
                let q: BigInt = q
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad modulus {}", q.trim())))?;
                s.torsion.push((lineno, q, ints(w, lineno)?));
            }
            "irrelevant" => s
                .irrelevant
                .push((lineno, line.split_whitespace().map(String::from).collect())),
            _ => unreachable!(),
        }
    }

    let has_fan = !s.rays.is_empty() || !s.cones.is_empty();
    let has_quotient = !s.grading.is_empty() || !s.irrelevant.is_empty();
    if !has_fan && !has_quotient {
        return Err(Error::InvalidAmbient("need [rays] and [cones], or [grading] and [irrelevant]".into()));
    }

    let r = if has_fan {
        s.rays.len()
    } else {
        s.grading.first().map_or(0, |(_, g)| g.len())
    };
    let names = if s.names.is_empty() {
        None
    } else {
        if s.names.len() != r {
            return Err(Error::InvalidAmbient(format!(
                "{} names given for {} variables",
                s.names.len(),
                r
            )));
        }
        Some(s.names.clone())
    };
    let lookup: HashMap<&str, usize> = s
        .names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let resolve = |tok: &str, lineno: usize, bound: usize| -> Result<usize> {
        if let Some(&i) = lookup.get(tok) {
            return Ok(i);
        }
        match tok.parse::<usize>() {
            Ok(k) if k >= 1 && k <= bound => Ok(k - 1),
            _ => Err(Error::parse(lineno, format!("unknown index or name {tok}"))),
        }
    };

    let grading = if s.grading.is_empty() {
        if !s.torsion.is_empty() {
            return Err(Error::InvalidAmbient("[torsion] requires [grading]".into()));
        }
        None
    } else {
        for (lineno, row) in &s.grading {
            if row.len() != r {
                return Err(Error::parse(*lineno, format!("expected {r} entries, got {}", row.len())));
            }
        }
        let free = IntMatrix::from_rows_with_cols(r, s.grading.iter().map(|(_, g)| g.clone()).collect())?;
        for (lineno, _, w) in &s.torsion {
            if w.len() != r {
                return Err(Error::parse(*lineno, format!("expected {r} weights, got {}", w.len())));
            }
        }
        Some(Grading::new(
            free,
            s.torsion.iter().map(|(_, q, w)| (q.clone(), w.clone())).collect(),
        )?)
    };
    let irrelevant = if s.irrelevant.is_empty() {
        None
    } else {
        let mut comps = Vec::new();
        for (lineno, toks) in &s.irrelevant {
            let ix = toks
                .iter()
                .map(|t| resolve(t, *lineno, r))
                .collect::<Result<Vec<_>>>()?;
            comps.push(VarSet::from_indices(ix));
        }
        Some(comps)
    };

    let amb = if has_fan {
        if s.rays.is_empty() || s.cones.is_empty() {
            return Err(Error::InvalidAmbient("a fan needs both [rays] and [cones]".into()));
        }
        let n = s.rays[0].1.len();
        for (lineno, ray) in &s.rays {
            if ray.len() != n {
                return Err(Error::parse(*lineno, format!("expected {n} coordinates, got {}", ray.len())));
            }
        }
        let mut cones = Vec::new();
        for (lineno, toks) in &s.cones {
            cones.push(
                toks.iter()
                    .map(|t| resolve(t, *lineno, r))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let fan = Fan::new(n, s.rays.into_iter().map(|(_, v)| v).collect(), cones)?;
        ToricAmbient::from_fan_checked(fan, grading, irrelevant)?
    } else {
        let grading = grading.ok_or_else(|| Error::InvalidAmbient("missing [grading]".into()))?;
        let irrelevant = irrelevant.ok_or_else(|| Error::InvalidAmbient("missing [irrelevant]".into()))?;
        ToricAmbient::from_quotient(grading, irrelevant)?
    };
    match names {
        Some(n) => amb.with_names(n),
        None => Ok(amb),
    }
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_ambient(amb: &ToricAmbient) -> String {
    let mut out = String::new();
    out.push_str("[names]\n");
    out.push_str(&amb.names().join(" "));
    out.push('\n');
    match amb.presentation() {
        Presentation::Fan(f) => {
            out.push_str("[rays]\n");
            for r in f.rays() {
                out.push_str(&join(r));
                out.push('\n');
            }
            out.push_str("[cones]\n");
            for c in f.max_cones() {
                out.push_str(&join(c.iter().map(|i| i + 1)));
                out.push('\n');
            }
        }
        Presentation::Quotient => {
            let g = amb.grading();
            out.push_str("[grading]\n");
            for i in 0..g.free_rank() {
                out.push_str(&join(g.free_part().row(i)));
                out.push('\n');
            }
            if !g.torsion().is_empty() {
                out.push_str("[torsion]\n");
                for (q, w) in g.torsion() {
                    out.push_str(&format!("{q} | {}\n", join(w)));
                }
            }
            out.push_str("[irrelevant]\n");
            for c in amb.irrelevant_components() {
                out.push_str(&join(c.iter().map(|i| i + 1)));
                out.push('\n');
            }
        }
    }
    out
}

/// Split a symbolic monomial such as `x1^3*x2` or `y2^2y4^2` into
/// `(name, exponent)` factors.
fn scan_symbolic(line: &str, lineno: usize) -> Result<Vec<(String, i64)>> {
    let chars: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        if chars[i] == '*' {
            i += 1;
            continue;
        }
        if !(chars[i].is_alphabetic() || chars[i] == '_') {
            return Err(Error::parse(lineno, format!("unexpected character '{}'", chars[i])));
        }
        let start = i;
        while i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
            i += 1;
        }
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let name: String = chars[start..i].iter().collect();
        let mut exp = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if s == i {
                return Err(Error::parse(lineno, "missing exponent after '^'"));
            }
            let digits: String = chars[s..i].iter().collect();
            exp = digits
                .parse()
                .map_err(|_| Error::parse(lineno, format!("exponent {digits} out of range")))?;
        }
        out.push((name, exp));
    }
    if out.is_empty() {
        return Err(Error::parse(lineno, "empty monomial"));
    }
    Ok(out)
}

fn resolve_variable(name: &str, names: &[String]) -> Option<usize> {
    if let Some(i) = names.iter().position(|n| n == name) {
        return Some(i);
    }
    let digits = name.strip_prefix('x').or_else(|| name.strip_prefix('y'))?;
    let k: usize = digits.parse().ok()?;
    (k >= 1 && k <= names.len()).then(|| k - 1)
}

/// Parse a monomial file for an ambient with the given variable names. Lines
/// are either `r` nonnegative integers or a symbolic product.
pub fn parse_monomials(text: &str, names: &[String]) -> Result<Vec<Vec<i64>>> {
    let r = names.len();
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        let numeric = line
            .split_whitespace()
            .all(|t| t.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) && !t.is_empty());
        let row = if numeric {
            let row: Vec<i64> = ints(line, lineno)?;
            if row.len() != r {
                return Err(Error::parse(lineno, format!("expected {r} exponents, got {}", row.len())));
            }
            if row.iter().any(|&x| x < 0) {
                return Err(Error::parse(lineno, "negative exponent"));
            }
            row
        } else {
            let mut row = vec![0i64; r];
            for (name, e) in scan_symbolic(line, lineno)? {
                let i = resolve_variable(&name, names)
                    .ok_or_else(|| Error::parse(lineno, format!("unknown variable {name}")))?;
                row[i] += e;
            }
            row
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Render an exponent vector as `x1^2*x3`.
pub fn format_monomial(row: &[i64], names: &[String]) -> String {
    let parts: Vec<String> = row
        .iter()
        .zip(names)
        .filter(|(e, _)| **e != 0)
        .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn write_monomials(rows: &[Vec<i64>]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&join(r));
        out.push('\n');
    }
    out
}
