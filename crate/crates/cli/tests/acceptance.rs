//! Acceptance suite: one test per criterion, each printing a `[criterion N]`
//! line (visible with `--nocapture`). Everything is exact arithmetic; the
//! tolerances are exact equalities and the stated instance counts.

use nilfract_core::abelian::{enumerate_homs, for_each_hom, is_short_exact};
use nilfract_core::actions::{
    alpha_lower_central_series, structure_to_tower, tower_to_structure, GroupAction, GroupTarget,
    NilpotentStructure, TargetHom,
};
use nilfract_core::finite::is_nilpotent;
use nilfract_core::fracture::{
    fracture_colimit_row_check, fracture_square_abelian, mult_square_pullback, BezoutPair,
    FractureFamilies, DEFAULT_SEED,
};
use nilfract_core::gen::{
    abelian_groups_up_to, library_groups, library_nilpotent_groups, random_abelian_group,
    random_abelian_structure, random_conjugation_structure, random_short_exact, random_tower,
};
use nilfract_core::localization::{
    is_local_group, localize_abelian, localize_hom, sequential_colimit_mult, NumSet,
};
use nilfract_core::postnikov::{localize_tower, nilpotency_degree, validate};
use nilfract_core::{AbelianHom, FgAbelianGroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

const ACCEPT_SEED: u64 = 20240406;

fn subsets(primes: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &p in primes {
        let mut next = out.clone();
        for s in &out {
            let mut t = s.clone();
            t.push(p);
            next.push(t);
        }
        out = next;
    }
    out
}

fn round_trip_both_ways(s: &NilpotentStructure) {
    let tower = structure_to_tower(s).expect("structure converts");
    let back = tower_to_structure(&tower).expect("tower converts back");
    assert_eq!(&back, s, "structure -> tower -> structure is not the identity");
    let forward = structure_to_tower(&back).expect("round-tripped structure converts");
    assert_eq!(forward, tower, "tower -> structure -> tower is not the identity");
}

/// Criterion 1: central-series <-> epi-tower equivalence on every library
/// nilpotent group of order <= 32 and on >= 100 seeded random valid
/// structures; both round trips are identities on canonical forms.
#[test]
fn criterion_01_series_tower_equivalence() {
    let mut checked = 0usize;
    for g in library_nilpotent_groups(32) {
        let conj = GroupAction::conjugation(&g);
        let s = alpha_lower_central_series(&conj).expect("nilpotent");
        round_trip_both_ways(&s);
        checked += 1;
    }
    let nilpotents = library_nilpotent_groups(32);
    let mut rng = StdRng::seed_from_u64(ACCEPT_SEED);
    let mut random_checked = 0usize;
    while random_checked < 100 {
        let s = if random_checked.is_multiple_of(2) {
            let g = &nilpotents[rng.gen_range(0..nilpotents.len())];
            random_conjugation_structure(&mut rng, g)
        } else {
            random_abelian_structure(&mut rng, 24)
        };
        round_trip_both_ways(&s);
        random_checked += 1;
    }
    println!(
        "[criterion 1] PASS: round trips on {checked} library groups and {random_checked} random structures"
    );
}

/// Criterion 2: for every finite abelian A with |A| <= 60, every
/// S ⊆ {2,3,5}, and every S-local finite abelian L with |L| <= 30, the
/// precomposition Hom(A_S, L) -> Hom(A, L) is a bijection, by exhaustive
/// hom enumeration on both sides.
#[test]
fn criterion_02_localization_initiality() {
    let a_classes = abelian_groups_up_to(60);
    let l_classes = abelian_groups_up_to(30);
    let mut cells = 0u64;
    let mut homs_enumerated = 0u64;
    for s_primes in subsets(&[2, 3, 5]) {
        let s = NumSet::from_u64(&s_primes).expect("primes");
        let locals: Vec<&FgAbelianGroup> = l_classes
            .iter()
            .filter(|l| is_local_group(&GroupTarget::Abelian((*l).clone()), &s))
            .collect();
        for a in &a_classes {
            let res = localize_abelian(a, &s);
            let a_s = res.localized.as_abelian().expect("abelian");
            let TargetHom::Abelian(unit) = &res.unit else { unreachable!() };
            // the unit is surjective for finite A, so precomposition with it
            // is injective; counting both sides then gives bijectivity
            assert!(unit.is_surjective());
            for l in &locals {
                let mut up = 0u64;
                for_each_hom(a_s, l, |_| up += 1).expect("finite");
                let mut down = 0u64;
                for_each_hom(a, l, |_| down += 1).expect("finite");
                assert_eq!(
                    up, down,
                    "hom counts differ for A={a:?}, S={s_primes:?}, L={l:?}"
                );
                homs_enumerated += up + down;
                if up <= 1024 {
                    // small cells: verify the image set exactly
                    let upstairs = enumerate_homs(a_s, l).expect("finite");
                    let downstairs = enumerate_homs(a, l).expect("finite");
                    let image: BTreeSet<String> = upstairs
                        .iter()
                        .map(|h| format!("{:?}", h.compose(unit).unwrap().matrix()))
                        .collect();
                    let full: BTreeSet<String> = downstairs
                        .iter()
                        .map(|h| format!("{:?}", h.matrix()))
                        .collect();
                    assert_eq!(image, full);
                }
                cells += 1;
            }
        }
    }
    println!(
        "[criterion 2] PASS: initiality bijections over {cells} (A, S, L) cells ({homs_enumerated} homs enumerated)"
    );
}

/// Criterion 3: every localization output is local and double localization
/// has the identity unit, exhaustively over the criterion-2 grid.
#[test]
fn criterion_03_locality_and_idempotence() {
    let a_classes = abelian_groups_up_to(60);
    let mut checked = 0u64;
    for s_primes in subsets(&[2, 3, 5]) {
        let s = NumSet::from_u64(&s_primes).expect("primes");
        for a in &a_classes {
            let once = localize_abelian(a, &s);
            assert!(
                is_local_group(&once.localized, &s),
                "localization output is not local"
            );
            assert!(once.certificate.reverify(&once.localized));
            let a_s = once.localized.as_abelian().expect("abelian");
            let twice = localize_abelian(a_s, &s);
            assert_eq!(&twice.localized, &once.localized);
            let TargetHom::Abelian(unit) = &twice.unit else { unreachable!() };
            assert_eq!(unit, &AbelianHom::identity(a_s), "double unit not identity");
            checked += 1;
        }
    }
    // the same two facts for the finite nilpotent library
    for g in library_nilpotent_groups(32) {
        for s_primes in subsets(&[2, 3]) {
            let s = NumSet::from_u64(&s_primes).expect("primes");
            let once = nilfract_core::localization::localize_finite_nilpotent(&g, &s)
                .expect("nilpotent");
            assert!(is_local_group(&once.localized, &s));
            let GroupTarget::Finite(h) = &once.localized else { unreachable!() };
            let twice = nilfract_core::localization::localize_finite_nilpotent(h, &s)
                .expect("nilpotent");
            let TargetHom::Finite(unit) = &twice.unit else { unreachable!() };
            assert!(unit.is_injective() && unit.is_surjective());
            checked += 1;
        }
    }
    println!("[criterion 3] PASS: locality and idempotence on {checked} localizations");
}

/// Criterion 4: termwise localization preserves short-exactness for >= 200
/// seeded short exact sequences with terms <= 48, at every S ⊆ {2,3,5}.
#[test]
fn criterion_04_exactness_shadow() {
    let mut rng = StdRng::seed_from_u64(ACCEPT_SEED ^ 0x04);
    let splits = subsets(&[2, 3, 5]);
    let mut sequences = 0usize;
    let mut checks = 0usize;
    while sequences < 200 {
        let (i, q) = random_short_exact(&mut rng, 48);
        assert!(is_short_exact(&i, &q).expect("composable"));
        for s_primes in &splits {
            let s = NumSet::from_u64(s_primes).expect("primes");
            let li = localize_hom(&i, &s);
            let lq = localize_hom(&q, &s);
            assert!(
                is_short_exact(&li, &lq).expect("composable"),
                "localization away from {s_primes:?} broke exactness"
            );
            checks += 1;
        }
        sequences += 1;
    }
    println!("[criterion 4] PASS: {sequences} sequences x {} splits = {checks} exactness checks, zero failures", splits.len());
}

/// Criterion 5: for all coprime 1 <= n, m <= 12 and all finite abelian A
/// with |A| <= 100, the multiplication square is a certified pullback and
/// the Bezout matrix product is the exact identity.
#[test]
fn criterion_05_coprime_pullback() {
    let a_classes = abelian_groups_up_to(100);
    let mut combos = 0u64;
    for n in 1..=12i64 {
        for m in 1..=12i64 {
            let (n, m) = (BigInt::from(n), BigInt::from(m));
            if !n.gcd(&m).is_one() {
                continue;
            }
            let pair = BezoutPair::new(&n, &m).expect("coprime");
            assert!(pair.verify(), "bezout matrices are not mutual inverses");
            for a in &a_classes {
                let cert = mult_square_pullback(a, &n, &m)
                    .unwrap_or_else(|e| panic!("mult square failed for {a:?}, ({n}, {m}): {e}"));
                assert!(cert.verify().expect("verifiable"));
                combos += 1;
            }
        }
    }
    println!("[criterion 5] PASS: certified pullbacks for {combos} (A, n, m) combinations");
}

/// Criterion 6: the abelian fracture square passes with a re-verifiable
/// certificate for all finite abelian A with |A| <= 200 and all coprime
/// prime splits R, S ⊆ {2,3,5,7}; additionally the free-rank-1 structural
/// certificate verifies.
#[test]
fn criterion_06_abelian_fracture() {
    let a_classes = abelian_groups_up_to(200);
    let primes = [2u64, 3, 5, 7];
    // all ordered pairs of disjoint subsets; an empty side is the no-op
    // family {1}
    let mut splits = Vec::new();
    for r in subsets(&primes) {
        for s in subsets(&primes) {
            if r.iter().any(|p| s.contains(p)) {
                continue;
            }
            splits.push((r.clone(), s));
        }
    }
    let z = FgAbelianGroup::integers();
    let mut checked = 0u64;
    for (r, s) in &splits {
        let r_entries: Vec<u64> = if r.is_empty() { vec![1] } else { r.clone() };
        let s_entries: Vec<u64> = if s.is_empty() { vec![1] } else { s.clone() };
        let fams = FractureFamilies::from_u64(&r_entries, &s_entries, 4).expect("coprime");
        for a in &a_classes {
            let cert = fracture_square_abelian(a, &fams, DEFAULT_SEED)
                .unwrap_or_else(|e| panic!("fracture failed for {a:?}, R={r:?}, S={s:?}: {e}"));
            assert!(cert.verify().expect("verifiable"));
            checked += 1;
        }
        let cert = fracture_square_abelian(&z, &fams, DEFAULT_SEED).expect("free rank 1");
        assert!(cert.verify().expect("verifiable"));
        checked += 1;
    }
    println!(
        "[criterion 6] PASS: {checked} fracture squares over {} prime splits, zero failures",
        splits.len()
    );
}

/// Criterion 7: sequential colimits along multiplication maps agree with
/// localization on >= 50 seeded instances, and the three-row colimit
/// diagram check passes at depth 4 on >= 20 instances.
#[test]
fn criterion_07_colimit_agreement() {
    let mut rng = StdRng::seed_from_u64(ACCEPT_SEED ^ 0x07);
    for _ in 0..50 {
        let a = random_abelian_group(&mut rng, 60);
        let ks: Vec<BigInt> = (0..rng.gen_range(1..=4))
            .map(|_| BigInt::from(rng.gen_range(1..=10i64)))
            .collect();
        let colimit = sequential_colimit_mult(&a, &ks).expect("valid multipliers");
        let numset = NumSet::new(ks.clone()).expect("positive");
        let direct = localize_abelian(&a, &numset).localized;
        assert_eq!(
            GroupTarget::Abelian(colimit),
            direct,
            "colimit disagrees with localization for {a:?} along {ks:?}"
        );
    }
    let prime_splits = [
        (vec![2u64], vec![3u64]),
        (vec![2], vec![5]),
        (vec![3], vec![5]),
        (vec![2], vec![3, 5]),
        (vec![2, 3], vec![5]),
    ];
    let mut rows = 0usize;
    while rows < 20 {
        let a = random_abelian_group(&mut rng, 30);
        let (r, s) = &prime_splits[rows % prime_splits.len()];
        let fams = FractureFamilies::from_u64(r, s, 4).expect("coprime");
        let report = fracture_colimit_row_check(&a, &fams, 4).expect("in range");
        assert!(report.pass, "colimit rows failed for {a:?}, R={r:?}, S={s:?}");
        rows += 1;
    }
    println!("[criterion 7] PASS: 50 colimit agreements and {rows} depth-4 row checks");
}

/// Criterion 8: for >= 30 seeded valid towers (N <= 4, groups <= 48),
/// localization validates, matches the direct group localizations
/// levelwise, and does not increase the nilpotency degree.
#[test]
fn criterion_08_postnikov_localization() {
    let mut rng = StdRng::seed_from_u64(ACCEPT_SEED ^ 0x08);
    let splits = subsets(&[2, 3, 5]);
    let mut towers = 0usize;
    while towers < 30 {
        let x = random_tower(&mut rng, 4, 48);
        assert!(validate(&x).valid);
        let s_primes = &splits[rng.gen_range(0..splits.len())];
        let s = NumSet::from_u64(s_primes).expect("primes");
        // localize_tower internally errors if any level disagrees with the
        // direct group localization
        let loc = localize_tower(&x, &s)
            .unwrap_or_else(|e| panic!("tower localization failed away from {s_primes:?}: {e}"));
        assert!(validate(&loc).valid);
        assert!(
            nilpotency_degree(&loc).expect("valid") <= nilpotency_degree(&x).expect("valid"),
            "degree increased"
        );
        towers += 1;
    }
    println!("[criterion 8] PASS: {towers} towers localized, validated, degrees non-increasing");
}

/// Criterion 9: the twisted lower central series of the conjugation
/// self-action decides nilpotency exactly as the group-level test, for
/// every library group of order <= 32 (including the negative case S3).
#[test]
fn criterion_09_nilpotency_decision() {
    let library = library_groups(32);
    let mut negatives = 0usize;
    for g in &library {
        let conj = GroupAction::conjugation(g);
        let twisted = alpha_lower_central_series(&conj);
        assert_eq!(
            twisted.is_some(),
            is_nilpotent(g),
            "decision mismatch for group of order {}",
            g.order()
        );
        if twisted.is_none() {
            negatives += 1;
        }
    }
    assert!(negatives >= 2, "library must include non-nilpotent groups");
    println!(
        "[criterion 9] PASS: nilpotency decision agrees on {} groups ({negatives} non-nilpotent)",
        library.len()
    );
}

/// Criterion 10: byte-identical reports for the full fixture suite across
/// two consecutive runs of the CLI.
#[test]
fn criterion_10_cli_determinism() {
    let exe = env!("CARGO_BIN_EXE_nilfract");
    let fixtures = |name: &str| {
        format!("{}/tests/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
    };
    let matrix_path = format!("@{}", fixtures("matrix1.json"));
    let tower_path = fixtures("tower_q8.json");
    let suite: Vec<Vec<&str>> = vec![
        vec!["snf", "--matrix", "[[6]]"],
        vec!["snf", "--matrix", &matrix_path],
        vec!["localize", "--group", "ab:[12]", "--away", "2"],
        vec!["localize", "--group", "cyclic:12", "--away", "2"],
        vec!["localize", "--group", "quaternion:8", "--away", "3"],
        vec![
            "fracture", "--group", "ab:[30]", "--r", "2", "--s", "15", "--depth", "3",
            "--check-colimit",
        ],
        vec!["fracture", "--group", "free-abelian:1", "--r", "2", "--s", "3,5"],
        vec!["fracture", "--tower", &tower_path, "--r", "2", "--s", "3,5"],
        vec!["nilpotency", "--group", "quaternion:8"],
        vec!["nilpotency", "--group", "symmetric:3"],
        vec!["series-convert", "--group", "quaternion:8"],
        vec!["series-convert", "--group", "dihedral:8", "--chain", "[[0],[0,2],[0,1,2,3],[0,1,2,3,4,5,6,7]]"],
        vec!["tower-validate", "--tower", &tower_path],
        vec!["tower-localize", "--tower", &tower_path, "--away", "2"],
        vec!["factorize", "--tower", &tower_path],
    ];
    let mut commands = 0usize;
    for args in &suite {
        let run = || {
            std::process::Command::new(exe)
                .args(args)
                .output()
                .expect("binary runs")
        };
        let first = run();
        let second = run();
        assert!(
            !first.stdout.is_empty(),
            "no output for {:?} (stderr: {})",
            args,
            String::from_utf8_lossy(&first.stderr)
        );
        assert_eq!(
            first.stdout, second.stdout,
            "output differs between runs for {args:?}"
        );
        assert_eq!(first.status, second.status);
        assert!(
            first.status.success(),
            "fixture command failed: {:?} (stderr: {})",
            args,
            String::from_utf8_lossy(&first.stderr)
        );
        commands += 1;
    }
    println!("[criterion 10] PASS: {commands} fixture commands byte-identical across two runs");
}
