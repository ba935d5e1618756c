//! Truncated nilpotent "spaces" as data: levelwise homotopy groups, the
//! fundamental-group actions, and explicit nilpotent structures, with
//! validation, degree, levelwise localization and factorization.

use crate::abelian::{AbelianSubgroup, FgAbelianGroup};
use crate::actions::{
    structure_to_tower, tower_to_structure, Automorphism, EpiTower, GroupAction, GroupTarget,
    NilpotentStructure, SubTarget,
};
use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::jsonutil::matrix_rows;
use crate::localization::{localize_abelian, localize_finite_nilpotent, localize_structure, NumSet};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One level `n >= 2`: an abelian homotopy group, the π₁-action on it, and
/// a nilpotent structure for that action.
#[derive(Clone, Debug, PartialEq)]
pub struct PostnikovLevel {
    pub n: usize,
    pub group: FgAbelianGroup,
    pub action: GroupAction,
    pub structure: NilpotentStructure,
}

/// Postnikov data of a truncated nilpotent type: π₁ with a nilpotent
/// structure for its conjugation self-action, and one level per
/// `2 <= n <= truncation`.
#[derive(Clone, Debug, PartialEq)]
pub struct PostnikovData {
    pub truncation: usize,
    pub pi1: FiniteGroup,
    pub pi1_structure: NilpotentStructure,
    pub levels: Vec<PostnikovLevel>,
}

/// Per-level validation outcomes; `valid` iff `failures` is empty.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub failures: Vec<String>,
}

impl PostnikovData {
    /// A tower with trivial π₁ and the given truncation.
    pub fn simply_connected(truncation: usize, levels: Vec<PostnikovLevel>) -> Result<Self> {
        let pi1 = FiniteGroup::trivial();
        let conj = GroupAction::conjugation(&pi1);
        let chain = vec![SubTarget::full_of(conj.target())];
        let pi1_structure = NilpotentStructure::new(conj, chain)?;
        Ok(PostnikovData {
            truncation,
            pi1,
            pi1_structure,
            levels,
        })
    }
}

/// Re-runs every invariant, reporting failures per level.
pub fn validate(x: &PostnikovData) -> ValidationReport {
    let mut failures = Vec::new();
    if x.truncation < 1 {
        failures.push("truncation level must be >= 1".to_string());
    }
    if !crate::finite::is_nilpotent(&x.pi1) {
        failures.push("pi1 is not nilpotent".to_string());
    }
    let conj = GroupAction::conjugation(&x.pi1);
    if x.pi1_structure.action() != &conj {
        failures.push("pi1 structure is not on the conjugation self-action".to_string());
    }
    if let Err(e) = x.pi1_structure.validate() {
        failures.push(format!("pi1 structure invalid: {e}"));
    }
    let expected: Vec<usize> = (2..=x.truncation).collect();
    let got: Vec<usize> = x.levels.iter().map(|l| l.n).collect();
    if expected != got {
        failures.push(format!(
            "levels must cover n = 2..={} in order, got {:?}",
            x.truncation, got
        ));
    }
    for level in &x.levels {
        let tag = format!("level {}", level.n);
        if level.action.actor() != &x.pi1 {
            failures.push(format!("{tag}: actor is not pi1"));
        }
        if level.action.target() != &GroupTarget::Abelian(level.group.clone()) {
            failures.push(format!("{tag}: action target differs from the level group"));
        }
        if level.structure.action() != &level.action {
            failures.push(format!("{tag}: structure is not on the level action"));
        }
        if let Err(e) = level.structure.validate() {
            failures.push(format!("{tag}: structure invalid: {e}"));
        }
    }
    ValidationReport {
        valid: failures.is_empty(),
        failures,
    }
}

fn ensure_valid(x: &PostnikovData) -> Result<()> {
    let report = validate(x);
    if report.valid {
        Ok(())
    } else {
        Err(Error::invalid("PostnikovData", report.failures.join("; ")))
    }
}

/// The sum, over π₁ and all levels, of the structure lengths.
pub fn nilpotency_degree(x: &PostnikovData) -> Result<usize> {
    ensure_valid(x)?;
    Ok(x.pi1_structure.length()
        + x.levels
            .iter()
            .map(|l| l.structure.length())
            .sum::<usize>())
}

/// Localizes every homotopy group away from `s`, carrying the structures
/// stagewise and checking the result against the direct group
/// localizations.
pub fn localize_tower(x: &PostnikovData, s: &NumSet) -> Result<PostnikovData> {
    ensure_valid(x)?;
    let pi1_loc_structure = localize_structure(&x.pi1_structure, s)?;
    let GroupTarget::Finite(pi1_loc) = pi1_loc_structure.action().target().clone() else {
        return Err(Error::invalid("localize_tower", "pi1 target kind changed"));
    };
    // the theorem's content, checked rather than assumed
    let direct = localize_finite_nilpotent(&x.pi1, s)?;
    if direct.localized != GroupTarget::Finite(pi1_loc.clone()) {
        return Err(Error::invalid(
            "localize_tower",
            "pi1 localization differs from the direct group localization",
        ));
    }
    let mut levels = Vec::new();
    for level in &x.levels {
        let structure = localize_structure(&level.structure, s)?;
        let action = structure.action().clone();
        let GroupTarget::Abelian(group) = action.target().clone() else {
            return Err(Error::invalid("localize_tower", "level target kind changed"));
        };
        let direct = localize_abelian(&level.group, s);
        if direct.localized != GroupTarget::Abelian(group.clone()) {
            return Err(Error::invalid(
                "localize_tower",
                format!(
                    "level {} localization differs from the direct group localization",
                    level.n
                ),
            ));
        }
        levels.push(PostnikovLevel {
            n: level.n,
            group,
            action,
            structure,
        });
    }
    let out = PostnikovData {
        truncation: x.truncation,
        pi1: pi1_loc,
        pi1_structure: pi1_loc_structure,
        levels,
    };
    ensure_valid(&out)?;
    Ok(out)
}

/// Per-level epimorphism towers; each stage is the data-level shadow of one
/// principal fibration.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub pi1_tower: EpiTower,
    pub level_towers: Vec<(usize, EpiTower)>,
    pub total_length: usize,
}

/// Factors every level through its central series, round-tripping each
/// tower back to the structure it came from.
pub fn principal_factorization(x: &PostnikovData) -> Result<FactorizationReport> {
    ensure_valid(x)?;
    let pi1_tower = structure_to_tower(&x.pi1_structure)?;
    if tower_to_structure(&pi1_tower)? != x.pi1_structure {
        return Err(Error::invalid(
            "principal_factorization",
            "pi1 tower does not round-trip",
        ));
    }
    let mut level_towers = Vec::new();
    let mut total = pi1_tower.length();
    for level in &x.levels {
        let tower = structure_to_tower(&level.structure)?;
        if tower_to_structure(&tower)? != level.structure {
            return Err(Error::invalid(
                "principal_factorization",
                format!("level {} tower does not round-trip", level.n),
            ));
        }
        total += tower.length();
        level_towers.push((level.n, tower));
    }
    Ok(FactorizationReport {
        pi1_tower,
        level_towers,
        total_length: total,
    })
}

// ---------------------------------------------------------------------------
// JSON schema:
// {"truncation": N,
//  "pi1": {"order":..., "cayley": [[...]], "chain": [[0], [0,1], ...]},
//  "levels": [{"n": 2, "group": {...}, "action": {"autos": {"0": [[..]]}},
//              "chain": [[[..gen coords..]], ...]}]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawTower {
    truncation: usize,
    pi1: RawPi1,
    #[serde(default)]
    levels: Vec<RawLevel>,
}

#[derive(Serialize, Deserialize)]
struct RawPi1 {
    #[serde(flatten)]
    group: FiniteGroup,
    chain: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawLevel {
    n: usize,
    group: FgAbelianGroup,
    action: RawAction,
    /// each chain entry is a list of generators, one coordinate vector each
    /// (i.e. a matrix whose rows are generators)
    chain: Vec<RawMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RawAction {
    autos: BTreeMap<usize, RawMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix(#[serde(with = "matrix_rows")] IntMatrix);

impl Serialize for PostnikovData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pi1_chain = self
            .pi1_structure
            .chain()
            .iter()
            .map(|sub| match sub {
                SubTarget::Finite(sg) => sg.elements().to_vec(),
                SubTarget::Abelian(_) => unreachable!("pi1 chain is finite"),
            })
            .collect();
        let levels = self
            .levels
            .iter()
            .map(|level| {
                let autos = level
                    .action
                    .autos()
                    .iter()
                    .enumerate()
                    .map(|(g, a)| match a {
                        Automorphism::Matrix(m) => (g, RawMatrix(m.clone())),
                        Automorphism::Perm(_) => unreachable!("level targets are abelian"),
                    })
                    .collect();
                let chain = level
                    .structure
                    .chain()
                    .iter()
                    .map(|sub| match sub {
                        SubTarget::Abelian(sg) => RawMatrix(sg.lattice().transpose()),
                        SubTarget::Finite(_) => unreachable!("level chains are abelian"),
                    })
                    .collect();
                RawLevel {
                    n: level.n,
                    group: level.group.clone(),
                    action: RawAction { autos },
                    chain,
                }
            })
            .collect();
        RawTower {
            truncation: self.truncation,
            pi1: RawPi1 {
                group: self.pi1.clone(),
                chain: pi1_chain,
            },
            levels,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PostnikovData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTower::deserialize(d)?;
        raw_to_tower(raw).map_err(serde::de::Error::custom)
    }
}

fn raw_to_tower(raw: RawTower) -> Result<PostnikovData> {
    let pi1 = raw.pi1.group;
    let conj = GroupAction::conjugation(&pi1);
    let chain = raw
        .pi1
        .chain
        .into_iter()
        .map(|elems| Ok(SubTarget::Finite(pi1.subgroup_from_elements(elems)?)))
        .collect::<Result<Vec<_>>>()?;
    let pi1_structure = NilpotentStructure::new(conj, chain)?;
    let mut levels = Vec::new();
    for raw_level in raw.levels {
        let group = raw_level.group;
        let n_gens = group.gens();
        let order = raw_level.action.autos.len();
        let mut autos = vec![None; order];
        for (g, m) in raw_level.action.autos {
            if g >= order {
                return Err(Error::Parse(format!(
                    "auto index {g} out of range (expected one entry per actor element)"
                )));
            }
            autos[g] = Some(Automorphism::Matrix(m.0));
        }
        let autos: Vec<Automorphism> = autos
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse("missing automorphism for an actor element".into()))?;
        let action = GroupAction::new(pi1.clone(), GroupTarget::Abelian(group.clone()), autos)?;
        let chain = raw_level
            .chain
            .into_iter()
            .map(|gens| {
                let rows = gens.0;
                if rows.rows() > 0 && rows.cols() != n_gens {
                    return Err(Error::Parse(
                        "chain generator has the wrong coordinate count".into(),
                    ));
                }
                let cols: Vec<Vec<BigInt>> = (0..rows.rows()).map(|i| rows.row(i)).collect();
                let m = IntMatrix::from_columns(n_gens, &cols);
                Ok(SubTarget::Abelian(AbelianSubgroup::from_generators(
                    group.clone(),
                    &m,
                )))
            })
            .collect::<Result<Vec<_>>>()?;
        let structure = NilpotentStructure::new(action.clone(), chain)?;
        levels.push(PostnikovLevel {
            n: raw_level.n,
            group,
            action,
            structure,
        });
    }
    let data = PostnikovData {
        truncation: raw.truncation,
        pi1,
        pi1_structure,
        levels,
    };
    ensure_valid(&data)?;
    Ok(data)
}
