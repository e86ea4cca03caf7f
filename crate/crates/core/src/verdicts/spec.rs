//! Parsers for the spec strings used by scenario files and the CLI:
//! fields ("gf(p,k)"), groups ("sym(n)", "gl(n,p,k)", "prod(a,b,...)",
//! "cyclic(n)", "quaternion8", "dihedral(n)"), subgroups ("gens[...]",
//! "diag", "young(k)", "unitriangular", "cartan", "borel", "center",
//! "trivial", "full"), characters ("trivial", "sign", "gg(zeta_order)",
//! "multchar(exponent)") and representation expressions ("regular",
//! "natural", "perm(sub)", "induce(sub, char)", "dual(r)", "tensor(r,r)",
//! "sum(r,r)", "irr(i)").

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::groups::{ElementRepr, FiniteGroup, Subgroup};
use crate::linalg::MatrixFq;
use crate::meataxe::irreducible_inventory;
use crate::reps::{CharacterSpec, Representation};

fn strip_call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)
        .and_then(|r| r.trim().strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
}

/// Splits on top-level commas, respecting (), [] nesting.
fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let s = spec.trim();
    if let Some(inner) = strip_call(s, "sym") {
        let n: usize = inner.trim().parse().map_err(|_| bad("group", s))?;
        return FiniteGroup::symmetric_group(n);
    }
    if let Some(inner) = strip_call(s, "cyclic") {
        let n: usize = inner.trim().parse().map_err(|_| bad("group", s))?;
        return FiniteGroup::cyclic_group(n);
    }
    if let Some(inner) = strip_call(s, "dihedral") {
        let n: usize = inner.trim().parse().map_err(|_| bad("group", s))?;
        return FiniteGroup::dihedral_group(n);
    }
    if s == "quaternion8" {
        return FiniteGroup::quaternion8();
    }
    if let Some(inner) = strip_call(s, "gl") {
        let parts = split_args(inner);
        if parts.len() != 3 {
            return Err(bad("group", s));
        }
        let n: usize = parts[0].parse().map_err(|_| bad("group", s))?;
        let p: u64 = parts[1].parse().map_err(|_| bad("group", s))?;
        let k: u32 = parts[2].parse().map_err(|_| bad("group", s))?;
        let ctx = FieldCtx::new(p, k)?;
        return FiniteGroup::general_linear_group(n, &ctx);
    }
    if let Some(inner) = strip_call(s, "prod") {
        let parts = split_args(inner);
        if parts.len() < 2 {
            return Err(bad("group", s));
        }
        let factors: Vec<FiniteGroup> = parts.iter().map(|p| parse_group(p)).collect::<Result<_>>()?;
        return FiniteGroup::product_group(&factors);
    }
    Err(bad("group", s))
}

pub fn parse_subgroup(g: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    let s = spec.trim();
    if s == "trivial" {
        return Subgroup::trivial(g);
    }
    if s == "full" {
        return Subgroup::full(g);
    }
    if s == "diag" {
        return Subgroup::diagonal(g);
    }
    if s == "unitriangular" {
        return Subgroup::unitriangular(g);
    }
    if s == "cartan" {
        return Subgroup::cartan(g);
    }
    if s == "borel" {
        return Subgroup::borel(g);
    }
    if s == "center" {
        return Subgroup::center(g);
    }
    if let Some(inner) = strip_call(s, "young") {
        let k: usize = inner.trim().parse().map_err(|_| bad("subgroup", s))?;
        return Subgroup::young(g, k);
    }
    if let Some(inner) = s.strip_prefix("gens[").and_then(|r| r.strip_suffix(']')) {
        let gens: Vec<u32> = split_args(inner)
            .iter()
            .map(|e| parse_element(g, e))
            .collect::<Result<_>>()?;
        if gens.is_empty() {
            return Err(bad("subgroup", s));
        }
        return Subgroup::from_generators(g, &gens);
    }
    Err(bad("subgroup", s))
}

/// An element literal: a product of permutation cycles like "(1 2)(3 4)"
/// (1-based points) or an integer matrix like "[[1,1],[0,1]]".
pub fn parse_element(g: &FiniteGroup, spec: &str) -> Result<u32> {
    let s = spec.trim();
    if s.starts_with('(') {
        let degree = g
            .perm_degree()
            .ok_or_else(|| Error::Parse(format!("cycle literal {s:?} needs a permutation group")))?;
        let mut perm: Vec<u16> = (0..degree as u16).collect();
        for cyc in s.split(')').filter(|c| !c.trim().is_empty()) {
            let cyc = cyc.trim().strip_prefix('(').ok_or_else(|| bad("element", s))?;
            let pts: Vec<usize> = cyc
                .split_whitespace()
                .map(|t| t.trim_matches(',').parse::<usize>().map_err(|_| bad("element", s)))
                .collect::<Result<_>>()?;
            if pts.iter().any(|&p| p == 0 || p > degree) {
                return Err(Error::Parse(format!("cycle point out of range in {s:?}")));
            }
            for w in 0..pts.len() {
                let from = pts[w] - 1;
                let to = pts[(w + 1) % pts.len()] - 1;
                perm[from] = to as u16;
            }
        }
        return g
            .index_of(&ElementRepr::Perm(perm))
            .ok_or_else(|| Error::Parse(format!("permutation {s:?} is not in the group")));
    }
    if s.starts_with("[[") {
        let ctx = g
            .mat_ctx()
            .ok_or_else(|| Error::Parse(format!("matrix literal {s:?} needs a matrix group")))?
            .clone();
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| bad("element", s))?;
        let rows: Vec<Vec<i64>> = split_args(inner)
            .iter()
            .map(|row| {
                let row = row.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']'));
                row.ok_or_else(|| bad("element", s)).and_then(|r| {
                    r.split(',')
                        .map(|t| t.trim().parse::<i64>().map_err(|_| bad("element", s)))
                        .collect()
                })
            })
            .collect::<Result<_>>()?;
        let mat = MatrixFq::from_ints(&ctx, &rows);
        return g
            .index_of(&ElementRepr::Mat(mat))
            .ok_or_else(|| Error::Parse(format!("matrix {s:?} is not in the group")));
    }
    Err(bad("element", s))
}

pub fn parse_character(spec: &str) -> Result<CharacterSpec> {
    let s = spec.trim();
    if s == "trivial" {
        return Ok(CharacterSpec::Trivial);
    }
    if s == "sign" {
        return Ok(CharacterSpec::Sign);
    }
    if let Some(inner) = strip_call(s, "gg") {
        let zeta_order: u64 = inner.trim().parse().map_err(|_| bad("character", s))?;
        return Ok(CharacterSpec::AdditiveGg { zeta_order });
    }
    if let Some(inner) = strip_call(s, "multchar") {
        let exponent: u64 = inner.trim().parse().map_err(|_| bad("character", s))?;
        return Ok(CharacterSpec::Multiplicative { exponent });
    }
    Err(bad("character", s))
}

/// Recursive representation expressions over a fixed group and field.
pub fn parse_rho(
    g: &FiniteGroup,
    ctx: &FieldCtx,
    spec: &str,
    max_induced_dim: usize,
    seed: u64,
) -> Result<Representation> {
    let s = spec.trim();
    match s {
        "trivial" => return Ok(Representation::trivial(g, ctx)),
        "sign" => return Representation::sign(g, ctx),
        "regular" => return Representation::regular(g, ctx),
        "natural" => return Representation::natural(g, ctx),
        _ => {}
    }
    if let Some(inner) = strip_call(s, "perm") {
        let h = parse_subgroup(g, inner)?;
        return Representation::permutation_rep(g, &h, ctx);
    }
    if let Some(inner) = strip_call(s, "induce") {
        let parts = split_args(inner);
        if parts.len() != 2 {
            return Err(bad("rho", s));
        }
        let h = parse_subgroup(g, parts[0])?;
        let chi = parse_character(parts[1])?.evaluate(&h, ctx)?;
        return Representation::induce(&chi, &h, max_induced_dim);
    }
    if let Some(inner) = strip_call(s, "dual") {
        return Ok(parse_rho(g, ctx, inner, max_induced_dim, seed)?.dual());
    }
    if let Some(inner) = strip_call(s, "tensor") {
        let parts = split_args(inner);
        if parts.len() != 2 {
            return Err(bad("rho", s));
        }
        let a = parse_rho(g, ctx, parts[0], max_induced_dim, seed)?;
        let b = parse_rho(g, ctx, parts[1], max_induced_dim, seed)?;
        return a.tensor(&b);
    }
    if let Some(inner) = strip_call(s, "sum") {
        let parts = split_args(inner);
        if parts.len() != 2 {
            return Err(bad("rho", s));
        }
        let a = parse_rho(g, ctx, parts[0], max_induced_dim, seed)?;
        let b = parse_rho(g, ctx, parts[1], max_induced_dim, seed)?;
        return a.direct_sum(&b);
    }
    if let Some(inner) = strip_call(s, "irr") {
        let i: usize = inner.trim().parse().map_err(|_| bad("rho", s))?;
        let inv = irreducible_inventory(g, ctx, seed)?;
        if i >= inv.len() {
            return Err(Error::Parse(format!(
                "irr({i}) out of range: inventory has {} members",
                inv.len()
            )));
        }
        return Ok(inv.representations()[i].clone());
    }
    Err(bad("rho", s))
}

fn bad(kind: &str, s: &str) -> Error {
    Error::Parse(format!("unrecognized {kind} spec {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs() {
        assert_eq!(parse_group("sym(4)").unwrap().order(), 24);
        assert_eq!(parse_group("gl(2,3,1)").unwrap().order(), 48);
        assert_eq!(parse_group("cyclic(6)").unwrap().order(), 6);
        assert_eq!(parse_group("dihedral(4)").unwrap().order(), 8);
        assert_eq!(parse_group("quaternion8").unwrap().order(), 8);
        assert_eq!(parse_group("prod(sym(3),sym(3))").unwrap().order(), 36);
        assert!(parse_group("so(3)").is_err());
    }

    #[test]
    fn subgroup_specs() {
        let s4 = parse_group("sym(4)").unwrap();
        assert_eq!(parse_subgroup(&s4, "young(3)").unwrap().order(), 6);
        assert_eq!(parse_subgroup(&s4, "trivial").unwrap().order(), 1);
        assert_eq!(parse_subgroup(&s4, "gens[(1 2)]").unwrap().order(), 2);
        assert_eq!(parse_subgroup(&s4, "gens[(1 2),(1 2 3 4)]").unwrap().order(), 24);
        assert_eq!(parse_subgroup(&s4, "gens[(1 2)(3 4)]").unwrap().order(), 2);

        let gl23 = parse_group("gl(2,3,1)").unwrap();
        assert_eq!(parse_subgroup(&gl23, "unitriangular").unwrap().order(), 3);
        assert_eq!(parse_subgroup(&gl23, "cartan").unwrap().order(), 8);
        assert_eq!(parse_subgroup(&gl23, "borel").unwrap().order(), 12);
        assert_eq!(parse_subgroup(&gl23, "gens[[[1,1],[0,1]]]").unwrap().order(), 3);
        assert_eq!(parse_subgroup(&gl23, "center").unwrap().order(), 2);

        let prod = parse_group("prod(sym(3),sym(3))").unwrap();
        assert_eq!(parse_subgroup(&prod, "diag").unwrap().order(), 6);
    }

    #[test]
    fn rho_specs() {
        let s3 = parse_group("sym(3)").unwrap();
        let f5 = FieldCtx::parse("gf(5,1)").unwrap();
        assert_eq!(parse_rho(&s3, &f5, "regular", 256, 42).unwrap().dim(), 6);
        assert_eq!(parse_rho(&s3, &f5, "perm(young(2))", 256, 42).unwrap().dim(), 3);
        assert_eq!(parse_rho(&s3, &f5, "induce(young(2), trivial)", 256, 42).unwrap().dim(), 3);
        assert_eq!(parse_rho(&s3, &f5, "tensor(perm(young(2)), sign)", 256, 42).unwrap().dim(), 3);
        assert_eq!(parse_rho(&s3, &f5, "sum(trivial, sign)", 256, 42).unwrap().dim(), 2);
        assert_eq!(parse_rho(&s3, &f5, "dual(perm(young(2)))", 256, 42).unwrap().dim(), 3);
        // inventory order is (dim, discovery): irr(2) is the 2-dim simple
        assert_eq!(parse_rho(&s3, &f5, "irr(2)", 256, 42).unwrap().dim(), 2);
        assert!(parse_rho(&s3, &f5, "irr(7)", 256, 42).is_err());
    }
}
