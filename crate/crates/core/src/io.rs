//! Plain-text structure-constant and cocycle file formats.
//!
//! Algebra files:
//! ```text
//! # comment
//! p 5
//! dim 5
//! label W(1)
//! basis e_-1 e_0 e_1 e_2 e_3
//! b 0 1 1 1      # [x_0, x_1] has coefficient 1 on x_1 (i < j only)
//! pm 1 1 1       # x_1^{[p]} has coefficient 1 on x_1
//! ```
//! Indices are 0-based, coefficients lie in 1..p-1, omitted entries are
//! zero. The writer is canonical: b-lines sorted by (i, j, k), pm-lines
//! by (i, k), so parse/write round-trips are byte-identical.
//!
//! Cocycle files carry `kind phi` (a bare two-cochain, `c2 i j coeff`
//! lines) or `kind pair` (additionally `om i coeff` lines for the omega
//! base values).

use std::collections::BTreeMap;

use crate::algebra::{AlgebraDescription, SparseVec};
use crate::cohomology::{pair_index, TwoCochain};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
        }
    }

    /// Next significant line: (1-based number, content with comments and
    /// surrounding whitespace stripped).
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.iter.by_ref() {
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let content = content.trim();
            if !content.is_empty() {
                return Some((idx + 1, content));
            }
        }
        None
    }
}

fn parse_u64(line: usize, tok: &str, what: &str) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| parse_err(line, format!("invalid {what}: {tok:?}")))
}

fn parse_index(line: usize, tok: &str, dim: usize, what: &str) -> Result<usize> {
    let v = parse_u64(line, tok, what)? as usize;
    if v >= dim {
        return Err(parse_err(
            line,
            format!("{what} {v} out of range for dim {dim}"),
        ));
    }
    Ok(v)
}

fn parse_coeff(line: usize, tok: &str, p: u64) -> Result<u64> {
    let v = parse_u64(line, tok, "coefficient")?;
    if v == 0 || v >= p {
        return Err(parse_err(
            line,
            format!("coefficient {v} outside 1..{}", p - 1),
        ));
    }
    Ok(v)
}

/// Parses the common `p` / `dim` header prefix.
fn parse_header(lines: &mut Lines) -> Result<(FieldSpec, usize)> {
    let (ln, first) = lines.next().ok_or_else(|| parse_err(0, "empty document"))?;
    let mut toks = first.split_whitespace();
    if toks.next() != Some("p") {
        return Err(parse_err(ln, "expected `p <prime>` as the first line"));
    }
    let p = parse_u64(
        ln,
        toks.next().ok_or_else(|| parse_err(ln, "missing prime"))?,
        "prime",
    )?;
    let field = FieldSpec::new(p).map_err(|e| parse_err(ln, e.to_string()))?;
    let (ln, second) = lines
        .next()
        .ok_or_else(|| parse_err(ln, "missing `dim` line"))?;
    let mut toks = second.split_whitespace();
    if toks.next() != Some("dim") {
        return Err(parse_err(ln, "expected `dim <d>`"));
    }
    let dim = parse_u64(
        ln,
        toks.next()
            .ok_or_else(|| parse_err(ln, "missing dimension"))?,
        "dimension",
    )? as usize;
    if dim == 0 {
        return Err(parse_err(ln, "dimension must be positive"));
    }
    Ok((field, dim))
}

/// Parses an algebra document.
pub fn parse_algebra(text: &str) -> Result<AlgebraDescription> {
    let mut lines = Lines::new(text);
    let (field, dim) = parse_header(&mut lines)?;
    let p = field.p();
    let mut name: Option<String> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut brackets: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    let mut pmap: BTreeMap<usize, SparseVec> = BTreeMap::new();
    while let Some((ln, content)) = lines.next() {
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "label" => {
                let rest = content["label".len()..].trim();
                if rest.is_empty() {
                    return Err(parse_err(ln, "empty label"));
                }
                name = Some(rest.to_string());
            }
            "basis" => {
                let names: Vec<String> = toks.map(|s| s.to_string()).collect();
                if names.len() != dim {
                    return Err(parse_err(
                        ln,
                        format!("basis line has {} names, expected {dim}", names.len()),
                    ));
                }
                labels = Some(names);
            }
            "b" => {
                let i = parse_index(
                    ln,
                    toks.next().ok_or_else(|| parse_err(ln, "b: missing i"))?,
                    dim,
                    "index i",
                )?;
                let j = parse_index(
                    ln,
                    toks.next().ok_or_else(|| parse_err(ln, "b: missing j"))?,
                    dim,
                    "index j",
                )?;
                let k = parse_index(
                    ln,
                    toks.next().ok_or_else(|| parse_err(ln, "b: missing k"))?,
                    dim,
                    "index k",
                )?;
                let c = parse_coeff(
                    ln,
                    toks.next()
                        .ok_or_else(|| parse_err(ln, "b: missing coefficient"))?,
                    p,
                )?;
                if toks.next().is_some() {
                    return Err(parse_err(ln, "b: trailing tokens"));
                }
                if i >= j {
                    return Err(parse_err(ln, format!("b {i} {j}: requires i < j")));
                }
                let entry = brackets.entry((i, j)).or_default();
                if entry.iter().any(|&(l, _)| l as usize == k) {
                    return Err(parse_err(ln, format!("duplicate entry b {i} {j} {k}")));
                }
                entry.push((k as u32, c));
            }
            "pm" => {
                let i = parse_index(
                    ln,
                    toks.next().ok_or_else(|| parse_err(ln, "pm: missing i"))?,
                    dim,
                    "index i",
                )?;
                let k = parse_index(
                    ln,
                    toks.next().ok_or_else(|| parse_err(ln, "pm: missing k"))?,
                    dim,
                    "index k",
                )?;
                let c = parse_coeff(
                    ln,
                    toks.next()
                        .ok_or_else(|| parse_err(ln, "pm: missing coefficient"))?,
                    p,
                )?;
                if toks.next().is_some() {
                    return Err(parse_err(ln, "pm: trailing tokens"));
                }
                let entry = pmap.entry(i).or_default();
                if entry.iter().any(|&(l, _)| l as usize == k) {
                    return Err(parse_err(ln, format!("duplicate entry pm {i} {k}")));
                }
                entry.push((k as u32, c));
            }
            other => {
                return Err(parse_err(ln, format!("unknown directive {other:?}")));
            }
        }
    }
    let mut alg = AlgebraDescription::new(
        field,
        dim,
        labels,
        brackets.into_iter().collect(),
        pmap.into_iter().collect(),
    )?;
    alg.set_name(name);
    Ok(alg)
}

/// Canonical algebra document: header, then b-lines sorted by (i, j, k)
/// and pm-lines sorted by (i, k). `comments` are emitted first as `#`
/// lines (they do not round-trip).
pub fn write_algebra(alg: &AlgebraDescription, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("p {}\n", alg.p()));
    out.push_str(&format!("dim {}\n", alg.dim()));
    if let Some(name) = alg.name() {
        out.push_str(&format!("label {name}\n"));
    }
    if let Some(labels) = alg.labels() {
        out.push_str("basis");
        for l in labels {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
    }
    let mut blines: Vec<(usize, usize, u32, u64)> = Vec::new();
    for (i, j, coords) in alg.bracket_pairs() {
        for &(k, c) in coords {
            blines.push((i, j, k, c));
        }
    }
    blines.sort_unstable_by_key(|&(i, j, k, _)| (i, j, k));
    for (i, j, k, c) in blines {
        out.push_str(&format!("b {i} {j} {k} {c}\n"));
    }
    for i in 0..alg.dim() {
        for &(k, c) in alg.p_power_basis(i) {
            out.push_str(&format!("pm {i} {k} {c}\n"));
        }
    }
    out
}

/// A parsed cocycle document: a two-cochain, optionally paired with
/// omega base values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleDocument {
    Phi(TwoCochain),
    Pair(TwoCochain, Vec<u64>),
}

impl CocycleDocument {
    pub fn phi(&self) -> &TwoCochain {
        match self {
            CocycleDocument::Phi(phi) => phi,
            CocycleDocument::Pair(phi, _) => phi,
        }
    }

    pub fn omega_base(&self, dim: usize) -> Vec<u64> {
        match self {
            CocycleDocument::Phi(_) => vec![0; dim],
            CocycleDocument::Pair(_, base) => base.clone(),
        }
    }
}

/// Parses a cocycle document (`kind phi` or `kind pair`).
pub fn parse_cocycle(text: &str) -> Result<(FieldSpec, CocycleDocument)> {
    let mut lines = Lines::new(text);
    let (field, dim) = parse_header(&mut lines)?;
    let p = field.p();
    let (ln, kind_line) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing `kind` line"))?;
    let mut toks = kind_line.split_whitespace();
    if toks.next() != Some("kind") {
        return Err(parse_err(ln, "expected `kind phi|pair`"));
    }
    let kind = toks
        .next()
        .ok_or_else(|| parse_err(ln, "missing kind value"))?;
    let is_pair = match kind {
        "phi" => false,
        "pair" => true,
        other => return Err(parse_err(ln, format!("unknown kind {other:?}"))),
    };
    let mut phi = TwoCochain::zero(dim);
    let mut base = vec![0u64; dim];
    while let Some((ln, content)) = lines.next() {
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "c2" => {
                let i = parse_index(
                    ln,
                    toks.next().ok_or_else(|| parse_err(ln, "c2: missing i"))?,
                    dim,
                    "index i",
                )?;
                let j = parse_index(
                    ln,
                    toks.next().ok_or_else(|| parse_err(ln, "c2: missing j"))?,
                    dim,
                    "index j",
                )?;
                let c = parse_coeff(
                    ln,
                    toks.next()
                        .ok_or_else(|| parse_err(ln, "c2: missing coefficient"))?,
                    p,
                )?;
                if i >= j {
                    return Err(parse_err(ln, format!("c2 {i} {j}: requires i < j")));
                }
                let idx = pair_index(dim, i, j);
                if phi.values[idx] != 0 {
                    return Err(parse_err(ln, format!("duplicate entry c2 {i} {j}")));
                }
                phi.values[idx] = c;
            }
            "om" => {
                if !is_pair {
                    return Err(parse_err(ln, "om lines require kind pair"));
                }
                let i = parse_index(
                    ln,
                    toks.next().ok_or_else(|| parse_err(ln, "om: missing i"))?,
                    dim,
                    "index i",
                )?;
                let c = parse_coeff(
                    ln,
                    toks.next()
                        .ok_or_else(|| parse_err(ln, "om: missing coefficient"))?,
                    p,
                )?;
                if base[i] != 0 {
                    return Err(parse_err(ln, format!("duplicate entry om {i}")));
                }
                base[i] = c;
            }
            other => {
                return Err(parse_err(ln, format!("unknown directive {other:?}")));
            }
        }
    }
    let doc = if is_pair {
        CocycleDocument::Pair(phi, base)
    } else {
        CocycleDocument::Phi(phi)
    };
    Ok((field, doc))
}

/// Canonical cocycle document.
pub fn write_cocycle(field: FieldSpec, doc: &CocycleDocument, comments: &[String]) -> String {
    let phi = doc.phi();
    let dim = phi.dim();
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("p {}\n", field.p()));
    out.push_str(&format!("dim {dim}\n"));
    match doc {
        CocycleDocument::Phi(_) => out.push_str("kind phi\n"),
        CocycleDocument::Pair(..) => out.push_str("kind pair\n"),
    }
    let mut idx = 0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let v = phi.values[idx];
            idx += 1;
            if v != 0 {
                out.push_str(&format!("c2 {i} {j} {v}\n"));
            }
        }
    }
    if let CocycleDocument::Pair(_, base) = doc {
        for (i, &v) in base.iter().enumerate() {
            if v != 0 {
                out.push_str(&format!("om {i} {v}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_support::witt1_by_hand;
    use crate::constructors::{construct_sl, construct_witt};

    #[test]
    fn witt1_roundtrip_is_byte_identical() {
        let alg = construct_witt(1, 5, 2000).unwrap();
        let text = write_algebra(&alg, &[]);
        let parsed = parse_algebra(&text).unwrap();
        assert_eq!(parsed, alg);
        assert_eq!(write_algebra(&parsed, &[]), text);
    }

    #[test]
    fn parsed_witt1_matches_constructor() {
        let hand = witt1_by_hand(5);
        let text = write_algebra(&hand, &[]);
        let parsed = parse_algebra(&text).unwrap();
        assert!(parsed.structure_eq(&construct_witt(1, 5, 2000).unwrap()));
    }

    #[test]
    fn empty_body_is_abelian() {
        let alg = parse_algebra("p 5\ndim 3\n").unwrap();
        assert_eq!(alg.dim(), 3);
        for i in 0..3 {
            assert!(alg.p_power_basis(i).is_empty());
            for j in (i + 1)..3 {
                assert!(alg.bracket_is_zero(i, j));
            }
        }
    }

    #[test]
    fn rejects_wrong_pair_order() {
        let err = parse_algebra("p 5\ndim 3\nb 2 1 0 3\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("i < j"), "{message}");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn rejects_bad_coefficients_and_ranges() {
        assert!(parse_algebra("p 5\ndim 3\nb 0 1 0 0\n").is_err());
        assert!(parse_algebra("p 5\ndim 3\nb 0 1 0 5\n").is_err());
        assert!(parse_algebra("p 5\ndim 3\nb 0 3 0 1\n").is_err());
        assert!(parse_algebra("p 5\ndim 3\npm 0 0 7\n").is_err());
        assert!(parse_algebra("p 6\ndim 3\n").is_err());
        assert!(parse_algebra("p 5\ndim 3\nb 0 1 0 2\nb 0 1 0 2\n").is_err());
        assert!(parse_algebra("nonsense\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header comment\n\np 5\n# interior\ndim 2\n\nb 0 1 0 1  # trailing\n";
        let alg = parse_algebra(text).unwrap();
        assert_eq!(alg.bracket_basis(0, 1), &[(0, 1)]);
    }

    #[test]
    fn label_and_basis_roundtrip() {
        let text = "p 5\ndim 2\nlabel my algebra\nbasis u v\nb 0 1 0 1\n";
        let alg = parse_algebra(text).unwrap();
        assert_eq!(alg.name(), Some("my algebra"));
        assert_eq!(alg.labels().unwrap(), &["u".to_string(), "v".to_string()]);
        let out = write_algebra(&alg, &[]);
        assert_eq!(parse_algebra(&out).unwrap(), alg);
        assert_eq!(write_algebra(&parse_algebra(&out).unwrap(), &[]), out);
    }

    #[test]
    fn imported_direct_sum_is_not_simple() {
        // Two copies of sl_2 glued block-diagonally through the file
        // format: bracket-closed, restricted, but visibly non-simple.
        let sl2 = construct_sl(2, 5, 2000).unwrap();
        let mut text = String::from("p 5\ndim 6\n");
        for (i, j, coords) in sl2.bracket_pairs() {
            for &(k, c) in coords {
                text.push_str(&format!("b {i} {j} {k} {c}\n"));
                text.push_str(&format!("b {} {} {} {c}\n", i + 3, j + 3, k as usize + 3));
            }
        }
        for i in 0..3 {
            for &(k, c) in sl2.p_power_basis(i) {
                text.push_str(&format!("pm {i} {k} {c}\n"));
                text.push_str(&format!("pm {} {} {c}\n", i + 3, k as usize + 3));
            }
        }
        let sum = parse_algebra(&text).unwrap();
        assert!(sum.jacobi_check().is_ok());
        assert!(sum.restrictedness_check(10, 3).passed());
        let report = sum.simplicity_check(5, 4);
        assert!(!report.is_simple(), "{report}");
    }

    #[test]
    fn cocycle_roundtrip() {
        let f = FieldSpec::new(5).unwrap();
        let mut phi = TwoCochain::zero(4);
        phi.values[pair_index(4, 0, 2)] = 3;
        phi.values[pair_index(4, 1, 3)] = 1;
        let doc = CocycleDocument::Pair(phi, vec![0, 2, 0, 0]);
        let text = write_cocycle(f, &doc, &[]);
        let (pf, parsed) = parse_cocycle(&text).unwrap();
        assert_eq!(pf, f);
        assert_eq!(parsed, doc);
        assert_eq!(write_cocycle(pf, &parsed, &[]), text);
    }

    #[test]
    fn cocycle_kind_is_enforced() {
        assert!(parse_cocycle("p 5\ndim 3\nkind phi\nom 0 1\n").is_err());
        assert!(parse_cocycle("p 5\ndim 3\nkind what\n").is_err());
        assert!(parse_cocycle("p 5\ndim 3\nkind phi\nc2 1 0 1\n").is_err());
    }
}
