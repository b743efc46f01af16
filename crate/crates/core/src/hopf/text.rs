//! Line-oriented structure-constant format for finite-dimensional Hopf data.
//!
//! ```text
//! NAME sweedler
//! DIM 4
//! ORDER 2
//! UNIT 0 : 1
//! MUL 1 2 -> 3 : -1
//! COMUL 2 -> 0 2 : 1
//! COUNIT 0 : 1
//! ANTIPODE 1 -> 1 : 1
//! IDEAL 1 : 1, 0 : -1
//! ```
//!
//! Basis elements are numbered `0..DIM`. Scalars use the `CycScalar` text
//! form and must lie in ℚ(ζ_ORDER). `ANTIPODE_INV` lines are optional; when
//! absent the inverse antipode is computed. Each `IDEAL` line gives one
//! generator of an ideal for building a calculus.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::algebra::AlgebraPresentation;
use super::builders::finite_hopf;
use super::hopf_data::{invert_on_basis, table_map, HopfData};
use super::HopfError;
use crate::linalg::{Basis, BasisIndex, FreeVector};
use crate::scalars::CycScalar;

pub fn text_index(i: i64) -> BasisIndex {
    BasisIndex::new("e", &[i])
}

pub struct ParsedHopf {
    pub hopf: HopfData,
    pub order: u32,
    pub ideal: Vec<FreeVector>,
}

struct LineParser {
    line: usize,
    dim: Option<i64>,
    order: Option<u32>,
}

impl LineParser {
    fn err(&self, msg: impl Into<String>) -> HopfError {
        HopfError::Parse { line: self.line, msg: msg.into() }
    }

    fn index(&self, tok: &str) -> Result<BasisIndex, HopfError> {
        let dim = self.dim.ok_or_else(|| self.err("DIM must precede structure constants"))?;
        let i: i64 = tok.parse().map_err(|_| self.err(format!("bad basis number '{tok}'")))?;
        if !(0..dim).contains(&i) {
            return Err(self.err(format!("basis number {i} out of range 0..{dim}")));
        }
        Ok(text_index(i))
    }

    fn scalar(&self, tok: &str) -> Result<CycScalar, HopfError> {
        let s: CycScalar = tok.trim().parse().map_err(|e| self.err(format!("bad scalar '{}': {e}", tok.trim())))?;
        let order = self.order.ok_or_else(|| self.err("ORDER must precede structure constants"))?;
        if order % s.order() != 0 {
            return Err(self.err(format!("scalar {s} is not in Q(z{order})")));
        }
        Ok(s)
    }

    /// Splits "lhs : scalar" and returns the lhs tokens.
    fn split<'s>(&self, rest: &'s str) -> Result<(Vec<&'s str>, CycScalar), HopfError> {
        let (lhs, rhs) = rest.split_once(':').ok_or_else(|| self.err("missing ': scalar'"))?;
        Ok((lhs.split_whitespace().collect(), self.scalar(rhs)?))
    }

    fn arrow<'s>(
        &self,
        toks: &[&'s str],
        before: usize,
        after: usize,
    ) -> Result<(Vec<&'s str>, Vec<&'s str>), HopfError> {
        if toks.len() != before + after + 1 || toks[before] != "->" {
            return Err(self.err(format!("expected {before} index(es), '->', {after} index(es)")));
        }
        Ok((toks[..before].to_vec(), toks[before + 1..].to_vec()))
    }
}

type Table = BTreeMap<BasisIndex, FreeVector>;

fn add(table: &mut Table, key: BasisIndex, value: BasisIndex, c: CycScalar) {
    table.entry(key).or_default().add_term(value, c);
}

pub fn parse_hopf_text(src: &str) -> Result<ParsedHopf, HopfError> {
    let mut p = LineParser { line: 0, dim: None, order: None };
    let mut name = String::from("unnamed");
    let mut unit = FreeVector::zero();
    let (mut mul, mut comul, mut antipode, mut antipode_inv) = (Table::new(), Table::new(), Table::new(), Table::new());
    let mut counit: BTreeMap<BasisIndex, CycScalar> = BTreeMap::new();
    let mut ideal = Vec::new();
    let mut saw_inv = false;

    for (n, raw) in src.lines().enumerate() {
        p.line = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (directive, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match directive {
            "NAME" => name = rest.trim().to_string(),
            "DIM" => {
                p.dim = Some(
                    rest.trim()
                        .parse()
                        .ok()
                        .filter(|d| *d > 0)
                        .ok_or_else(|| p.err("DIM must be a positive integer"))?,
                )
            }
            "ORDER" => {
                p.order = Some(
                    rest.trim()
                        .parse()
                        .ok()
                        .filter(|d| *d > 0)
                        .ok_or_else(|| p.err("ORDER must be a positive integer"))?,
                )
            }
            "UNIT" | "COUNIT" => {
                let (toks, c) = p.split(rest)?;
                let [tok] = toks[..] else { return Err(p.err("expected one index")) };
                let i = p.index(tok)?;
                if directive == "UNIT" {
                    unit.add_term(i, c);
                } else {
                    let e = counit.entry(i).or_insert_with(CycScalar::zero);
                    *e = e.add(&c);
                }
            }
            "MUL" => {
                let (toks, c) = p.split(rest)?;
                let (l, r) = p.arrow(&toks, 2, 1)?;
                add(&mut mul, BasisIndex::pair(&p.index(l[0])?, &p.index(l[1])?), p.index(r[0])?, c);
            }
            "COMUL" => {
                let (toks, c) = p.split(rest)?;
                let (l, r) = p.arrow(&toks, 1, 2)?;
                add(&mut comul, p.index(l[0])?, BasisIndex::pair(&p.index(r[0])?, &p.index(r[1])?), c);
            }
            "ANTIPODE" | "ANTIPODE_INV" => {
                let (toks, c) = p.split(rest)?;
                let (l, r) = p.arrow(&toks, 1, 1)?;
                let table = if directive == "ANTIPODE" { &mut antipode } else { &mut antipode_inv };
                saw_inv |= directive == "ANTIPODE_INV";
                add(table, p.index(l[0])?, p.index(r[0])?, c);
            }
            "IDEAL" => {
                let mut g = FreeVector::zero();
                for part in rest.split(',') {
                    let (toks, c) = p.split(part)?;
                    let [tok] = toks[..] else { return Err(p.err("expected 'index : scalar'")) };
                    g.add_term(p.index(tok)?, c);
                }
                ideal.push(g);
            }
            other => return Err(p.err(format!("unknown directive '{other}'"))),
        }
    }
    let dim = p.dim.ok_or_else(|| p.err("missing DIM"))?;
    let order = p.order.unwrap_or(1);
    if unit.is_zero() {
        return Err(p.err("missing UNIT"));
    }
    let basis: Vec<BasisIndex> = (0..dim).map(text_index).collect();
    for b in &basis {
        for t in [&mut comul, &mut antipode] {
            t.entry(b.clone()).or_default();
        }
    }
    let mul_table = mul;
    let algebra = AlgebraPresentation::new(
        name,
        Basis::finite(basis.clone()),
        move |i, j| mul_table.get(&BasisIndex::pair(i, j)).cloned().unwrap_or_default(),
        unit,
    );
    if !saw_inv {
        antipode_inv = invert_on_basis(&basis, &table_map("antipode", antipode.clone()))?;
    }
    for b in &basis {
        antipode_inv.entry(b.clone()).or_default();
    }
    Ok(ParsedHopf { hopf: finite_hopf(algebra, comul, counit, antipode, antipode_inv), order, ideal })
}

/// Writes a finite Hopf algebra in the text format, numbering its basis in
/// sorted order.
pub fn hopf_to_text(h: &HopfData, ideal: &[FreeVector]) -> String {
    let basis = h.algebra.basis.elements();
    let pos: BTreeMap<&BasisIndex, usize> = basis.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let mut scalars: Vec<CycScalar> = Vec::new();
    let mut body = String::new();
    let mut emit = |line: String, c: &CycScalar| {
        scalars.push(c.clone());
        let _ = writeln!(body, "{line} : {c}");
    };
    for (i, c) in h.one().iter() {
        emit(format!("UNIT {}", pos[i]), c);
    }
    for x in &basis {
        for y in &basis {
            for (k, c) in h.algebra.mul_idx(x, y).iter() {
                emit(format!("MUL {} {} -> {}", pos[x], pos[y], pos[k]), c);
            }
        }
    }
    for x in &basis {
        for (p, c) in h.delta_idx(x).iter() {
            let (a, b) = p.split2();
            emit(format!("COMUL {} -> {} {}", pos[x], pos[a], pos[b]), c);
        }
    }
    for x in &basis {
        let e = h.eps_idx(x);
        if !e.is_zero() {
            emit(format!("COUNIT {}", pos[x]), &e);
        }
    }
    for (tag, map) in [("ANTIPODE", &h.antipode), ("ANTIPODE_INV", &h.antipode_inv)] {
        for x in &basis {
            for (k, c) in map(x).iter() {
                emit(format!("{tag} {} -> {}", pos[x], pos[k]), c);
            }
        }
    }
    for g in ideal {
        let terms: Vec<String> = g.iter().map(|(i, c)| format!("{} : {c}", pos[i])).collect();
        scalars.extend(g.iter().map(|(_, c)| c.clone()));
        let _ = writeln!(body, "IDEAL {}", terms.join(", "));
    }
    let order = scalars.iter().fold(1u32, |acc, c| num::integer::lcm(acc, c.order()));
    format!("NAME {}\nDIM {}\nORDER {order}\n{body}", h.name(), basis.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_radford, check_hopf_axioms};
    use crate::scalars::RootOfUnity;

    #[test]
    fn printed_radford_reparses_to_the_same_structure() {
        let h = build_radford(2, 2, RootOfUnity::primitive(4)).unwrap();
        let text = hopf_to_text(&h.hopf, &[]);
        let parsed = parse_hopf_text(&text).unwrap();
        assert_eq!(parsed.order, 4);
        assert!(check_hopf_axioms(&parsed.hopf, 0).passed());
        assert_eq!(
            hopf_to_text(&parsed.hopf, &[]).lines().skip(1).collect::<Vec<_>>(),
            text.lines().skip(1).collect::<Vec<_>>()
        );
    }

    #[test]
    fn unknown_directive_reports_line() {
        let err = parse_hopf_text("NAME x\nDIM 1\nFOO 1\n").err().unwrap();
        assert!(matches!(err, HopfError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn scalar_outside_declared_field_is_rejected() {
        let err = parse_hopf_text("DIM 1\nORDER 2\nUNIT 0 : z4^1\n").err().unwrap();
        assert!(matches!(err, HopfError::Parse { line: 3, .. }));
    }

    #[test]
    fn ideal_lines_are_collected() {
        let src = "DIM 2\nORDER 1\nUNIT 0 : 1\nMUL 0 0 -> 0 : 1\nMUL 0 1 -> 1 : 1\nMUL 1 0 -> 1 : 1\nMUL 1 1 -> 0 : 1\n\
                   COMUL 0 -> 0 0 : 1\nCOMUL 1 -> 1 1 : 1\nCOUNIT 0 : 1\nCOUNIT 1 : 1\nANTIPODE 0 -> 0 : 1\nANTIPODE 1 -> 1 : 1\n\
                   IDEAL 1 : 1, 0 : -1\n";
        let parsed = parse_hopf_text(src).unwrap();
        assert!(check_hopf_axioms(&parsed.hopf, 0).passed());
        assert_eq!(parsed.ideal, vec![FreeVector::basis(text_index(1)).sub(&FreeVector::basis(text_index(0)))]);
    }
}
