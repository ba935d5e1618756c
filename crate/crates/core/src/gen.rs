//! Deterministic group catalogs and seeded random generators used by the
//! property and acceptance suites. Everything here takes an explicit
//! `StdRng` so runs are reproducible from a seed.

use crate::abelian::{AbelianHom, AbelianSubgroup, FgAbelianGroup};
use crate::actions::{
    alpha_lower_central_series, Automorphism, GroupAction, GroupTarget, NilpotentStructure,
    SubTarget,
};
use crate::finite::{is_nilpotent, FiniteGroup, Subgroup};
use crate::localization::LocalizedRing;
use crate::matrix::IntMatrix;
use crate::postnikov::{PostnikovData, PostnikovLevel};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

/// The named finite groups of order at most `max_order`: cyclic groups,
/// dihedral and quaternion groups, small symmetric groups, and a spread of
/// direct products.
pub fn library_groups(max_order: usize) -> Vec<FiniteGroup> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(FiniteGroup::cyclic(n).expect("cyclic"));
    }
    let mut m = 2;
    while 2 * m <= max_order {
        out.push(FiniteGroup::dihedral(2 * m).expect("dihedral"));
        m += 1;
    }
    if max_order >= 8 {
        out.push(FiniteGroup::quaternion8());
    }
    for k in [3, 4] {
        let g = FiniteGroup::symmetric(k).expect("symmetric");
        if g.order() <= max_order {
            out.push(g);
        }
    }
    let c = |n: usize| FiniteGroup::cyclic(n).expect("cyclic");
    let candidates = [
        FiniteGroup::direct_product(&c(2), &c(2)),
        FiniteGroup::direct_product(&c(2), &c(4)),
        FiniteGroup::direct_product(&c(2), &FiniteGroup::direct_product(&c(2), &c(2))),
        FiniteGroup::direct_product(&c(3), &c(3)),
        FiniteGroup::direct_product(&c(2), &c(6)),
        FiniteGroup::direct_product(&c(3), &c(6)),
        FiniteGroup::direct_product(&c(2), &FiniteGroup::quaternion8()),
        FiniteGroup::direct_product(&c(3), &FiniteGroup::quaternion8()),
        FiniteGroup::direct_product(&c(2), &FiniteGroup::dihedral(8).expect("dihedral")),
        FiniteGroup::direct_product(&c(3), &FiniteGroup::symmetric(3).expect("symmetric")),
    ];
    for g in candidates {
        if g.order() <= max_order {
            out.push(g);
        }
    }
    out
}

pub fn library_nilpotent_groups(max_order: usize) -> Vec<FiniteGroup> {
    library_groups(max_order)
        .into_iter()
        .filter(is_nilpotent_ref)
        .collect()
}

fn is_nilpotent_ref(g: &FiniteGroup) -> bool {
    is_nilpotent(g)
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for rest in rec(n - first, first) {
                let mut p = vec![first];
                p.extend(rest);
                out.push(p);
            }
        }
        out
    }
    rec(n, n)
}

/// Every isomorphism class of abelian groups of order exactly `n >= 1`.
pub fn abelian_groups_of_order(n: u64) -> Vec<FgAbelianGroup> {
    let factorization = crate::arith::factorize(&BigInt::from(n));
    let mut lists: Vec<Vec<Vec<BigInt>>> = Vec::new();
    for (p, e) in factorization {
        let choices = partitions(e)
            .into_iter()
            .map(|part| part.into_iter().map(|k| p.pow(k)).collect())
            .collect();
        lists.push(choices);
    }
    let mut combos: Vec<Vec<BigInt>> = vec![vec![]];
    for choices in lists {
        let mut next = Vec::new();
        for prefix in &combos {
            for choice in &choices {
                let mut moduli = prefix.clone();
                moduli.extend(choice.iter().cloned());
                next.push(moduli);
            }
        }
        combos = next;
    }
    combos
        .into_iter()
        .map(|moduli| {
            FgAbelianGroup::from_torsion_list(LocalizedRing::integers(), &moduli)
                .expect("prime powers canonicalize")
        })
        .collect()
}

/// Every isomorphism class of abelian groups of order `1..=max`.
pub fn abelian_groups_up_to(max: u64) -> Vec<FgAbelianGroup> {
    (1..=max).flat_map(abelian_groups_of_order).collect()
}

pub fn random_abelian_group(rng: &mut StdRng, max_order: u64) -> FgAbelianGroup {
    let order = rng.gen_range(1..=max_order);
    let classes = abelian_groups_of_order(order);
    classes[rng.gen_range(0..classes.len())].clone()
}

/// A random valid nilpotent structure on the conjugation self-action of a
/// nilpotent group: the twisted lower central series, randomly refined by
/// inserting intermediate invariant normal subgroups where possible.
pub fn random_conjugation_structure(rng: &mut StdRng, g: &FiniteGroup) -> NilpotentStructure {
    let conj = GroupAction::conjugation(g);
    let base = alpha_lower_central_series(&conj).expect("nilpotent library group");
    let mut chain: Vec<Subgroup> = base
        .chain()
        .iter()
        .map(|s| match s {
            SubTarget::Finite(sub) => sub.clone(),
            SubTarget::Abelian(_) => unreachable!(),
        })
        .collect();
    for _ in 0..4 {
        if chain.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..chain.len() - 1);
        let lower = &chain[i];
        let upper = &chain[i + 1];
        let extra: Vec<usize> = upper
            .elements()
            .iter()
            .cloned()
            .filter(|x| !lower.contains(*x))
            .collect();
        if extra.is_empty() {
            continue;
        }
        let pick = extra[rng.gen_range(0..extra.len())];
        let mut seed = lower.elements().to_vec();
        seed.push(pick);
        let candidate = g.subgroup_closure(&seed);
        if candidate.order() == upper.order() || !candidate.is_normal() {
            continue;
        }
        let mut refined = chain.clone();
        refined.insert(i + 1, candidate);
        let as_chain: Vec<SubTarget> = refined.iter().cloned().map(SubTarget::Finite).collect();
        if let Ok(s) = NilpotentStructure::new(conj.clone(), as_chain) {
            chain = refined;
            let _ = s;
        }
    }
    let as_chain: Vec<SubTarget> = chain.into_iter().map(SubTarget::Finite).collect();
    NilpotentStructure::new(conj, as_chain).expect("refined chain validates")
}

/// A random valid structure on an abelian-target action (trivial or
/// unipotent), randomly refined.
pub fn random_abelian_structure(rng: &mut StdRng, max_order: u64) -> NilpotentStructure {
    let target = random_abelian_group(rng, max_order);
    let actor = FiniteGroup::cyclic([1, 2, 2, 3][rng.gen_range(0..4)]).expect("cyclic");
    let action = random_nilpotent_action(rng, &actor, &target);
    let base = alpha_lower_central_series(&action).expect("constructed action is nilpotent");
    let mut chain: Vec<AbelianSubgroup> = base
        .chain()
        .iter()
        .map(|s| match s {
            SubTarget::Abelian(sub) => sub.clone(),
            SubTarget::Finite(_) => unreachable!(),
        })
        .collect();
    for _ in 0..3 {
        if chain.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..chain.len() - 1);
        // join the lower stage with a random multiple of a random generator
        let g = target.gens();
        if g == 0 {
            break;
        }
        let mut col = vec![BigInt::from(0); g];
        col[rng.gen_range(0..g)] = BigInt::from(rng.gen_range(1..=6i64));
        let extra = IntMatrix::from_columns(g, &[col]);
        let candidate = chain[i].join(&AbelianSubgroup::from_generators(target.clone(), &extra));
        if candidate == chain[i] || candidate == chain[i + 1] {
            continue;
        }
        if !candidate.is_contained_in(&chain[i + 1]) {
            continue;
        }
        let mut refined = chain.clone();
        refined.insert(i + 1, candidate);
        let as_chain: Vec<SubTarget> = refined.iter().cloned().map(SubTarget::Abelian).collect();
        if NilpotentStructure::new(action.clone(), as_chain).is_ok() {
            chain = refined;
        }
    }
    let as_chain: Vec<SubTarget> = chain.into_iter().map(SubTarget::Abelian).collect();
    NilpotentStructure::new(action, as_chain).expect("refined chain validates")
}

/// Trivial actions, plus unipotent `x -> (1 + d/p) x` twists on a torsion
/// factor with `p^2 | d`, wired through an exponent-mod-p pattern on the
/// actor. The pattern is a hom only for some actors (cyclic ones in
/// particular); anything failing the action law falls back to trivial.
fn random_nilpotent_action(
    rng: &mut StdRng,
    actor: &FiniteGroup,
    target: &FgAbelianGroup,
) -> GroupAction {
    let trivial = GroupAction::trivial(actor.clone(), GroupTarget::Abelian(target.clone()));
    if target.torsion().is_empty() || rng.gen_bool(0.4) {
        return trivial;
    }
    let p: usize = if rng.gen_bool(0.5) { 2 } else { 3 };
    if !actor.order().is_multiple_of(p) {
        return trivial;
    }
    // u = 1 + d/p has order p mod d when p^2 | d, and (u - 1) is nilpotent
    let psq = BigInt::from(p * p);
    let Some((idx, d)) = target
        .torsion()
        .iter()
        .enumerate()
        .find(|(_, d)| ((*d) % &psq) == BigInt::from(0))
    else {
        return trivial;
    };
    let u = BigInt::from(1) + d / BigInt::from(p);
    let n = target.gens();
    let row = target.free_rank() + idx;
    let mut twist = IntMatrix::identity(n);
    twist.set(row, row, u);
    let mut powers = vec![IntMatrix::identity(n)];
    for _ in 1..p {
        let next = powers.last().expect("nonempty").mul(&twist).expect("shape");
        powers.push(next);
    }
    let autos = (0..actor.order())
        .map(|g| Automorphism::Matrix(powers[g % p].clone()))
        .collect();
    GroupAction::new(actor.clone(), GroupTarget::Abelian(target.clone()), autos)
        .unwrap_or(trivial)
}

/// A random short exact sequence `0 -> K -> B -> C -> 0` of finite abelian
/// groups with `|B| <= max_order`, exact by construction.
pub fn random_short_exact(rng: &mut StdRng, max_order: u64) -> (AbelianHom, AbelianHom) {
    let b = random_abelian_group(rng, max_order);
    let gens = b.gens();
    let cols = if gens == 0 { 0 } else { rng.gen_range(1..=2) };
    let mut m = IntMatrix::zeros(gens, cols);
    for j in 0..cols {
        for i in 0..gens {
            m.set(i, j, BigInt::from(rng.gen_range(0..=12i64)));
        }
    }
    let sub = AbelianSubgroup::from_generators(b.clone(), &m);
    let (_, incl) = sub.as_group();
    let (_, proj, _) = incl.cokernel_with_section();
    (incl, proj)
}

/// A random valid Postnikov tower: nilpotent π₁ of order at most
/// `max_group`, truncation at most `max_truncation`, trivial or unipotent
/// level actions.
pub fn random_tower(
    rng: &mut StdRng,
    max_truncation: usize,
    max_group: u64,
) -> PostnikovData {
    let nilpotents = library_nilpotent_groups(max_group as usize);
    let pi1 = nilpotents[rng.gen_range(0..nilpotents.len())].clone();
    let pi1_structure = random_conjugation_structure(rng, &pi1);
    let truncation = rng.gen_range(1..=max_truncation);
    let levels = (2..=truncation)
        .map(|n| {
            let group = random_abelian_group(rng, max_group);
            let action = random_nilpotent_action(rng, &pi1, &group);
            let structure =
                alpha_lower_central_series(&action).expect("level action is nilpotent");
            PostnikovLevel {
                n,
                group,
                action,
                structure,
            }
        })
        .collect();
    PostnikovData {
        truncation,
        pi1,
        pi1_structure,
        levels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn library_is_validated_and_bounded() {
        let lib = library_groups(32);
        assert!(lib.iter().all(|g| g.order() <= 32));
        assert!(lib.len() > 35);
        let nil = library_nilpotent_groups(32);
        assert!(nil.iter().all(is_nilpotent));
        // S3 is in the library but not the nilpotent sublist
        assert!(lib.iter().any(|g| g.order() == 6 && !g.is_abelian()));
        assert!(!nil.iter().any(|g| g.order() == 6 && !g.is_abelian()));
    }

    #[test]
    fn abelian_class_counts() {
        assert_eq!(abelian_groups_of_order(1).len(), 1);
        assert_eq!(abelian_groups_of_order(8).len(), 3);
        assert_eq!(abelian_groups_of_order(16).len(), 5);
        assert_eq!(abelian_groups_of_order(36).len(), 4);
        // no duplicates up to 40
        let all = abelian_groups_up_to(40);
        let set: std::collections::BTreeSet<String> =
            all.iter().map(|a| format!("{a:?}")).collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn generators_are_deterministic() {
        let mut a = StdRng::seed_from_u64(7);
        let mut b = StdRng::seed_from_u64(7);
        for _ in 0..5 {
            assert_eq!(
                random_abelian_group(&mut a, 48),
                random_abelian_group(&mut b, 48)
            );
        }
    }

    #[test]
    fn random_structures_validate() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let s = random_abelian_structure(&mut rng, 24);
            s.validate().unwrap();
        }
        let q8 = FiniteGroup::quaternion8();
        for _ in 0..5 {
            let s = random_conjugation_structure(&mut rng, &q8);
            s.validate().unwrap();
        }
    }

    #[test]
    fn random_ses_is_exact() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let (i, q) = random_short_exact(&mut rng, 30);
            assert!(crate::abelian::is_short_exact(&i, &q).unwrap());
        }
    }

    #[test]
    fn random_towers_validate() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..5 {
            let x = random_tower(&mut rng, 3, 24);
            assert!(crate::postnikov::validate(&x).valid);
        }
    }
}

