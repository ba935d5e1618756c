//! Group parsing: named constructors (`cyclic:6`, `quaternion:8`,
//! `dihedral:8`, `symmetric:3`, `free-abelian:2`, `ab:[2,6]`, products via
//! `x`) and the JSON encodings of both group kinds.

use crate::abelian::FgAbelianGroup;
use crate::actions::GroupTarget;
use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::localization::LocalizedRing;
use num_bigint::BigInt;
use std::str::FromStr;

/// Parses a group from a named constructor or a JSON object. Validators
/// run on everything constructed.
pub fn parse_group(spec: &str) -> Result<GroupTarget> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return parse_group_json(spec);
    }
    let factors = split_product(spec)?;
    let parsed: Vec<GroupTarget> = factors
        .iter()
        .map(|f| parse_atom(f.trim()))
        .collect::<Result<_>>()?;
    let mut iter = parsed.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Parse("empty group expression".into()))?;
    iter.try_fold(first, product)
}

fn parse_group_json(spec: &str) -> Result<GroupTarget> {
    let value: serde_json::Value =
        serde_json::from_str(spec).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    if value.get("cayley").is_some() || value.get("order").is_some() {
        let g: FiniteGroup = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("invalid finite group: {e}")))?;
        Ok(GroupTarget::Finite(g))
    } else {
        let a: FgAbelianGroup = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("invalid abelian group: {e}")))?;
        Ok(GroupTarget::Abelian(a))
    }
}

/// Splits on `x` at bracket depth zero, so `ab:[2,6]xcyclic:3` works.
fn split_product(spec: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in spec.chars() {
        match c {
            '[' => {
                depth += 1;
                current.push(c);
            }
            ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse("unbalanced brackets".into()))?;
                current.push(c);
            }
            'x' if depth == 0 => {
                out.push(std::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets".into()));
    }
    out.push(current);
    Ok(out)
}

fn parse_atom(atom: &str) -> Result<GroupTarget> {
    if atom == "trivial" {
        return Ok(GroupTarget::Finite(FiniteGroup::trivial()));
    }
    let (name, arg) = atom
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("unknown group '{atom}'")))?;
    match name {
        "cyclic" => {
            let n: usize = arg
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic order '{arg}'")))?;
            Ok(GroupTarget::Finite(FiniteGroup::cyclic(n)?))
        }
        "dihedral" => {
            let n: usize = arg
                .parse()
                .map_err(|_| Error::Parse(format!("bad dihedral order '{arg}'")))?;
            Ok(GroupTarget::Finite(FiniteGroup::dihedral(n)?))
        }
        "quaternion" => {
            if arg != "8" {
                return Err(Error::Parse("only quaternion:8 is supported".into()));
            }
            Ok(GroupTarget::Finite(FiniteGroup::quaternion8()))
        }
        "symmetric" => {
            let k: usize = arg
                .parse()
                .map_err(|_| Error::Parse(format!("bad symmetric degree '{arg}'")))?;
            Ok(GroupTarget::Finite(FiniteGroup::symmetric(k)?))
        }
        "free-abelian" => {
            let r: usize = arg
                .parse()
                .map_err(|_| Error::Parse(format!("bad free rank '{arg}'")))?;
            Ok(GroupTarget::Abelian(FgAbelianGroup::free(
                LocalizedRing::integers(),
                r,
            )))
        }
        "ab" => {
            let inner = arg
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::Parse("ab expects a list, e.g. ab:[2,6]".into()))?;
            let moduli: Vec<BigInt> = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|t| {
                        BigInt::from_str(t.trim())
                            .map_err(|_| Error::Parse(format!("bad modulus '{t}'")))
                    })
                    .collect::<Result<_>>()?
            };
            Ok(GroupTarget::Abelian(FgAbelianGroup::from_torsion_list(
                LocalizedRing::integers(),
                &moduli,
            )?))
        }
        _ => Err(Error::Parse(format!("unknown group constructor '{name}'"))),
    }
}

fn product(a: GroupTarget, b: GroupTarget) -> Result<GroupTarget> {
    match (a, b) {
        (GroupTarget::Finite(x), GroupTarget::Finite(y)) => {
            Ok(GroupTarget::Finite(FiniteGroup::direct_product(&x, &y)))
        }
        (GroupTarget::Abelian(x), GroupTarget::Abelian(y)) => Ok(GroupTarget::Abelian(
            FgAbelianGroup::direct_sum(&x, &y).sum,
        )),
        _ => Err(Error::Parse(
            "cannot mix Cayley-table and symbolic abelian factors in a product".into(),
        )),
    }
}

/// Parses a comma-separated list of naturals, e.g. `2,3,5`.
pub fn parse_numbers(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad number '{t}'")))
        })
        .collect()
}
