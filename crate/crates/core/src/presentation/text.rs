//! Line-oriented text format for presentations.
//!
//! ```text
//! # comment
//! even 2
//! odd 1
//! indeterminates c
//! c 1 2 1 1
//! a 1 1 c
//! ```
//!
//! Entry lines are `<tensor> <one-based indices...> <value>` where the value is a
//! polynomial in the declared indeterminates. Every nonzero entry is listed,
//! including the ones implied by symmetry.

use std::fmt::Write;

use super::{PresentationBuilder, PresentationError, QlsPresentation, SparseTensor};
use crate::nc_core::parse_scalar;

const HEADER: &str = "# quadratic Lie superalgebra presentation";

fn write_tensor<const R: usize>(out: &mut String, name: &str, t: &SparseTensor<R>) {
    for (k, v) in t.iter() {
        let idx: Vec<String> = k.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(out, "{name} {} {v}", idx.join(" ")).unwrap();
    }
}

impl QlsPresentation {
    /// Canonical text form; [`QlsPresentation::from_text`] inverts it exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{HEADER}").unwrap();
        writeln!(out, "even {}", self.n).unwrap();
        writeln!(out, "odd {}", self.m).unwrap();
        if !self.indeterminates.is_empty() {
            let names: Vec<&str> = self.indeterminates.iter().map(|s| s.name()).collect();
            writeln!(out, "indeterminates {}", names.join(" ")).unwrap();
        }
        write_tensor(&mut out, "c", &self.c);
        write_tensor(&mut out, "cbar", &self.cbar);
        write_tensor(&mut out, "d", &self.d);
        write_tensor(&mut out, "b", &self.b);
        write_tensor(&mut out, "a", &self.a);
        out
    }

    pub fn from_text(src: &str) -> Result<QlsPresentation, PresentationError> {
        let mut n = None;
        let mut m = None;
        let mut builder: Option<PresentationBuilder> = None;
        let mut names: Vec<String> = Vec::new();
        for (ln, raw) in src.lines().enumerate() {
            let line_no = ln + 1;
            let err = |msg: String| PresentationError::Parse { line: line_no, msg };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let key = parts.next().unwrap();
            let size = |parts: &mut std::str::SplitWhitespace| -> Result<usize, PresentationError> {
                parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("expected a dimension".into()))
            };
            match key {
                "even" => n = Some(size(&mut parts)?),
                "odd" => m = Some(size(&mut parts)?),
                "indeterminates" => names.extend(parts.map(str::to_string)),
                "c" | "cbar" | "d" | "b" | "a" => {
                    let b = match &mut builder {
                        Some(b) => b,
                        None => {
                            let (Some(n), Some(m)) = (n, m) else {
                                return Err(err("entries must follow the 'even' and 'odd' lines".into()));
                            };
                            let mut b = PresentationBuilder::new(n, m);
                            for name in &names {
                                b.declare(name);
                            }
                            builder.insert(b)
                        }
                    };
                    let rank = match key {
                        "a" => 2,
                        "d" => 4,
                        _ => 3,
                    };
                    let tokens: Vec<&str> = parts.collect();
                    if tokens.len() <= rank {
                        return Err(err(format!("expected {rank} indices and a value")));
                    }
                    let mut idx = Vec::with_capacity(rank);
                    for t in &tokens[..rank] {
                        let v: usize = t.parse().map_err(|_| err(format!("bad index '{t}'")))?;
                        if v == 0 {
                            return Err(err("indices are one-based".into()));
                        }
                        idx.push(v - 1);
                    }
                    let value = parse_scalar(&tokens[rank..].join(" "))
                        .map_err(|e| err(format!("bad value: {e}")))?;
                    match key {
                        "c" => b.set_c(idx[0], idx[1], idx[2], value),
                        "cbar" => b.set_cbar(idx[0], idx[1], idx[2], value),
                        "d" => b.set_d(idx[0], idx[1], idx[2], idx[3], value),
                        "b" => b.set_b(idx[0], idx[1], idx[2], value),
                        _ => b.set_a(idx[0], idx[1], value),
                    }
                }
                other => return Err(err(format!("unknown keyword '{other}'"))),
            }
        }
        let builder = match builder {
            Some(b) => b,
            None => {
                let (Some(n), Some(m)) = (n, m) else {
                    return Err(PresentationError::Parse { line: 0, msg: "missing 'even' or 'odd'".into() });
                };
                let mut b = PresentationBuilder::new(n, m);
                for name in &names {
                    b.declare(name);
                }
                b
            }
        };
        builder.build()
    }
}
