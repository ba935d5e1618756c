//! Coprimality certificates, the multiplication-square pullback lemma,
//! fracture families, and fracture-square verification for abelian groups
//! and Postnikov data.

use crate::abelian::{AbelianHom, FgAbelianGroup};
use crate::actions::{GroupTarget, TargetHom};
use crate::arith::{ext_gcd, prime_factors, reduce_mod};
use crate::error::{Error, Result};
use crate::jsonutil::{bigint, bigint_vec};
use crate::localization::{localize_abelian, localize_finite_nilpotent, NumSet};
use crate::matrix::IntMatrix;
use crate::max_abelian_order;
use crate::postnikov::PostnikovData;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Fixed default seed for the sampled (non-exhaustive) checks.
pub const DEFAULT_SEED: u64 = 0x4e49_4c46;

/// Canonical Bezout pair for coprime `n, m >= 1`: `alpha*n + beta*m = 1`
/// with `|alpha|` minimal, ties toward positive `alpha`.
pub fn bezout(n: &BigInt, m: &BigInt) -> Result<(BigInt, BigInt)> {
    if !n.is_positive() || !m.is_positive() {
        return Err(Error::invalid("bezout", "arguments must be >= 1"));
    }
    let (g, s, _) = ext_gcd(n, m);
    if !g.is_one() {
        return Err(Error::NotCoprime(n.clone(), m.clone()));
    }
    // alpha is determined mod m; take the two residues nearest zero
    let base = reduce_mod(&s, m);
    let candidates = [base.clone(), &base - m];
    let alpha = candidates
        .into_iter()
        .min_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)))
        .expect("two candidates");
    let beta = (BigInt::one() - &alpha * n) / m;
    debug_assert!((&alpha * n + &beta * m).is_one());
    Ok((alpha, beta))
}

/// A verified Bezout identity together with the 2x2 mutual-inverse
/// matrices `(n -m; beta alpha)` and `(alpha m; -beta n)`.
#[derive(Clone, Debug, Serialize)]
pub struct BezoutPair {
    #[serde(with = "bigint")]
    pub n: BigInt,
    #[serde(with = "bigint")]
    pub m: BigInt,
    #[serde(with = "bigint")]
    pub alpha: BigInt,
    #[serde(with = "bigint")]
    pub beta: BigInt,
}

impl BezoutPair {
    pub fn new(n: &BigInt, m: &BigInt) -> Result<Self> {
        let (alpha, beta) = bezout(n, m)?;
        Ok(BezoutPair {
            n: n.clone(),
            m: m.clone(),
            alpha,
            beta,
        })
    }

    pub fn forward_matrix(&self) -> IntMatrix {
        IntMatrix::new(
            2,
            2,
            vec![self.n.clone(), -&self.m, self.beta.clone(), self.alpha.clone()],
        )
        .expect("shape")
    }

    pub fn inverse_matrix(&self) -> IntMatrix {
        IntMatrix::new(
            2,
            2,
            vec![self.alpha.clone(), self.m.clone(), -&self.beta, self.n.clone()],
        )
        .expect("shape")
    }

    /// `alpha*n + beta*m = 1` and the two matrices are mutual inverses.
    pub fn verify(&self) -> bool {
        (&self.alpha * &self.n + &self.beta * &self.m).is_one()
            && self
                .forward_matrix()
                .mul(&self.inverse_matrix())
                .expect("shape")
                .is_identity()
            && self
                .inverse_matrix()
                .mul(&self.forward_matrix())
                .expect("shape")
                .is_identity()
    }
}

/// Finite prefixes of the fracture families `R, S : N -> N` (extended
/// cyclically up to a depth cap), with the derived running products
/// `r_n, s_n, t_n = r_n s_n, rho_n, sigma_n`.
#[derive(Clone, Debug, Serialize)]
pub struct FractureFamilies {
    #[serde(with = "bigint_vec")]
    r_entries: Vec<BigInt>,
    #[serde(with = "bigint_vec")]
    s_entries: Vec<BigInt>,
    depth_cap: usize,
    #[serde(skip)]
    r_seq: Vec<BigInt>,
    #[serde(skip)]
    s_seq: Vec<BigInt>,
}

impl FractureFamilies {
    /// Requires every `R` entry coprime to every `S` entry; the offending
    /// pair is reported otherwise.
    pub fn new(r_entries: Vec<BigInt>, s_entries: Vec<BigInt>, depth_cap: usize) -> Result<Self> {
        if r_entries.is_empty() || s_entries.is_empty() {
            return Err(Error::invalid("FractureFamilies", "empty family"));
        }
        if r_entries.iter().chain(&s_entries).any(|e| !e.is_positive()) {
            return Err(Error::ZeroInNumSet);
        }
        for a in &r_entries {
            for b in &s_entries {
                if !a.gcd(b).is_one() {
                    return Err(Error::NotCoprime(a.clone(), b.clone()));
                }
            }
        }
        let r_seq = (0..=depth_cap)
            .map(|n| r_entries[n % r_entries.len()].clone())
            .collect();
        let s_seq = (0..=depth_cap)
            .map(|n| s_entries[n % s_entries.len()].clone())
            .collect();
        Ok(FractureFamilies {
            r_entries,
            s_entries,
            depth_cap,
            r_seq,
            s_seq,
        })
    }

    pub fn from_u64(r: &[u64], s: &[u64], depth_cap: usize) -> Result<Self> {
        Self::new(
            r.iter().map(|&e| BigInt::from(e)).collect(),
            s.iter().map(|&e| BigInt::from(e)).collect(),
            depth_cap,
        )
    }

    pub fn depth_cap(&self) -> usize {
        self.depth_cap
    }

    /// `R_n` of the cyclically extended family.
    pub fn family_r(&self, n: usize) -> &BigInt {
        &self.r_seq[n]
    }

    pub fn family_s(&self, n: usize) -> &BigInt {
        &self.s_seq[n]
    }

    pub fn family_t(&self, n: usize) -> BigInt {
        self.family_r(n) * self.family_s(n)
    }

    /// `r_n = prod_{i<=n} R_i`.
    pub fn running_r(&self, n: usize) -> BigInt {
        self.r_seq[..=n].iter().product()
    }

    pub fn running_s(&self, n: usize) -> BigInt {
        self.s_seq[..=n].iter().product()
    }

    pub fn running_t(&self, n: usize) -> BigInt {
        self.running_r(n) * self.running_s(n)
    }

    /// `rho_n = prod_{i<=n} r_i`.
    pub fn rho(&self, n: usize) -> BigInt {
        (0..=n).map(|i| self.running_r(i)).product()
    }

    pub fn sigma(&self, n: usize) -> BigInt {
        (0..=n).map(|i| self.running_s(i)).product()
    }

    pub fn numset_r(&self) -> NumSet {
        NumSet::new(self.r_entries.clone()).expect("positive entries")
    }

    pub fn numset_s(&self) -> NumSet {
        NumSet::new(self.s_entries.clone()).expect("positive entries")
    }

    pub fn numset_t(&self) -> NumSet {
        let mut entries = self.r_entries.clone();
        entries.extend(self.s_entries.iter().cloned());
        NumSet::new(entries).expect("positive entries")
    }
}

/// A re-verifiable certificate that a square of abelian groups
/// ```text
///   apex --comparison_s--> corner_s
///     |                        |
/// comparison_r             map_s_to_t
///     v                        v
///  corner_r --map_r_to_t--> corner_t
/// ```
/// is a pullback: the torsion part is checked by exhaustive enumeration,
/// the free part by prime-support bookkeeping and Bezout witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct PullbackCertificate {
    pub kind: String,
    pub apex: FgAbelianGroup,
    pub corner_r: FgAbelianGroup,
    pub corner_s: FgAbelianGroup,
    pub corner_t: FgAbelianGroup,
    pub map_r_to_t: AbelianHom,
    pub map_s_to_t: AbelianHom,
    pub comparison_r: AbelianHom,
    pub comparison_s: AbelianHom,
    pub bezout: Vec<BezoutPair>,
    pub torsion_pairs: usize,
    pub sampled_free_checks: usize,
    pub warnings: Vec<String>,
}

impl PullbackCertificate {
    /// Recomputes every claim from the stored data.
    pub fn verify(&self) -> Result<bool> {
        // the square commutes
        let via_r = self.map_r_to_t.compose(&self.comparison_r)?;
        let via_s = self.map_s_to_t.compose(&self.comparison_s)?;
        if via_r != via_s {
            return Ok(false);
        }
        if !self.bezout.iter().all(|b| b.verify()) {
            return Ok(false);
        }
        // torsion part: exhaustive
        let (count, bijective) = torsion_pullback_check(
            &self.apex,
            &self.comparison_r,
            &self.comparison_s,
            &self.map_r_to_t,
            &self.map_s_to_t,
        )?;
        if !bijective || count != self.torsion_pairs {
            return Ok(false);
        }
        // free part: ranks equal and prime supports split correctly
        let r = self.apex.free_rank();
        if self.corner_r.free_rank() != r
            || self.corner_s.free_rank() != r
            || self.corner_t.free_rank() != r
        {
            return Ok(false);
        }
        let base = self.apex.ring().inverted_primes();
        let pr = self.corner_r.ring().inverted_primes();
        let ps = self.corner_s.ring().inverted_primes();
        let pt = self.corner_t.ring().inverted_primes();
        let inter: BTreeSet<_> = pr.intersection(ps).cloned().collect();
        let union: BTreeSet<_> = pr.union(ps).cloned().collect();
        Ok(inter == *base && union == *pt)
    }
}

/// Torsion restriction of a hom between canonical groups.
fn torsion_restriction(h: &AbelianHom) -> AbelianHom {
    let dom = FgAbelianGroup::new(
        h.domain().ring().clone(),
        0,
        h.domain().torsion().to_vec(),
    )
    .expect("torsion part");
    let cod = FgAbelianGroup::new(
        h.codomain().ring().clone(),
        0,
        h.codomain().torsion().to_vec(),
    )
    .expect("torsion part");
    let rows: Vec<usize> =
        (h.codomain().free_rank()..h.codomain().gens()).collect();
    let cols: Vec<usize> = (h.domain().free_rank()..h.domain().gens()).collect();
    let m = h.matrix().submatrix_rows(&rows).submatrix_cols(&cols);
    AbelianHom::new(dom, cod, m).expect("torsion restriction")
}

/// Enumerates the torsion pullback `{(x, y) : f(x) = g(y)}` by a hash join
/// and decides whether the apex torsion maps onto it bijectively.
/// Returns `(pullback size, bijective)`.
fn torsion_pullback_check(
    apex: &FgAbelianGroup,
    comparison_r: &AbelianHom,
    comparison_s: &AbelianHom,
    map_r_to_t: &AbelianHom,
    map_s_to_t: &AbelianHom,
) -> Result<(usize, bool)> {
    let cap = BigInt::from(max_abelian_order());
    let apex_tor = FgAbelianGroup::new(apex.ring().clone(), 0, apex.torsion().to_vec())
        .expect("torsion part");
    if apex_tor.order().expect("finite") > cap {
        let order = apex_tor
            .order()
            .expect("finite")
            .to_string()
            .parse()
            .unwrap_or(usize::MAX);
        return Err(Error::OrderBound {
            order,
            bound: max_abelian_order(),
        });
    }
    let f = torsion_restriction(map_r_to_t);
    let g = torsion_restriction(map_s_to_t);
    let cr = torsion_restriction(comparison_r);
    let cs = torsion_restriction(comparison_s);
    let mut by_value: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    for x in f.domain().elements()? {
        let key = f.apply(&x)?.torsion_coords().to_vec();
        *by_value.entry(key).or_insert(0) += 1;
    }
    let mut pair_count = 0usize;
    for y in g.domain().elements()? {
        let key = g.apply(&y)?.torsion_coords().to_vec();
        if let Some(&n) = by_value.get(&key) {
            pair_count += n;
        }
    }
    let mut seen: BTreeSet<(Vec<BigInt>, Vec<BigInt>)> = BTreeSet::new();
    for a in apex_tor.elements()? {
        let pair = (
            cr.apply(&a)?.torsion_coords().to_vec(),
            cs.apply(&a)?.torsion_coords().to_vec(),
        );
        if !seen.insert(pair) {
            return Ok((pair_count, false)); // not injective
        }
    }
    Ok((pair_count, seen.len() == pair_count))
}

/// Certifies that the square with horizontal `*n` and vertical `*m` on `a`
/// is a pullback, for coprime `n, m`.
pub fn mult_square_pullback(
    a: &FgAbelianGroup,
    n: &BigInt,
    m: &BigInt,
) -> Result<PullbackCertificate> {
    let pair = BezoutPair::new(n, m)?;
    let cert = PullbackCertificate {
        kind: "mult-square".into(),
        apex: a.clone(),
        corner_r: a.clone(),
        corner_s: a.clone(),
        corner_t: a.clone(),
        map_r_to_t: AbelianHom::mul_by(a, n),
        map_s_to_t: AbelianHom::mul_by(a, m),
        comparison_r: AbelianHom::mul_by(a, m),
        comparison_s: AbelianHom::mul_by(a, n),
        bezout: vec![pair],
        torsion_pairs: 0,
        sampled_free_checks: 0,
        warnings: Vec::new(),
    };
    let (count, bijective) = torsion_pullback_check(
        &cert.apex,
        &cert.comparison_r,
        &cert.comparison_s,
        &cert.map_r_to_t,
        &cert.map_s_to_t,
    )?;
    if !bijective {
        return Err(Error::invalid(
            "mult_square_pullback",
            "torsion diagonal is not a bijection onto the pullback",
        ));
    }
    // independent SNF route: the categorical pullback is isomorphic to `a`
    let (p, _, _) = crate::abelian::pullback(&cert.map_r_to_t, &cert.map_s_to_t)?;
    if p != *a {
        return Err(Error::invalid(
            "mult_square_pullback",
            "SNF pullback disagrees with the claimed apex",
        ));
    }
    let cert = PullbackCertificate {
        torsion_pairs: count,
        ..cert
    };
    if !cert.verify()? {
        return Err(Error::invalid("mult_square_pullback", "certificate failed"));
    }
    Ok(cert)
}

/// The abelian fracture square `A -> A_S, A_R -> A_T` as a certified
/// pullback; torsion by brute force, free part by prime support and Bezout
/// witnesses plus seeded sampled element checks.
pub fn fracture_square_abelian(
    a: &FgAbelianGroup,
    fams: &FractureFamilies,
    seed: u64,
) -> Result<PullbackCertificate> {
    let r_set = fams.numset_r();
    let s_set = fams.numset_s();
    let res_r = localize_abelian(a, &r_set);
    let res_s = localize_abelian(a, &s_set);
    let corner_r = res_r.localized.as_abelian().expect("abelian").clone();
    let corner_s = res_s.localized.as_abelian().expect("abelian").clone();
    let further_r = localize_abelian(&corner_r, &s_set);
    let further_s = localize_abelian(&corner_s, &r_set);
    let corner_t = further_r.localized.as_abelian().expect("abelian").clone();
    if further_s.localized.as_abelian().expect("abelian") != &corner_t {
        return Err(Error::invalid(
            "fracture_square_abelian",
            "iterated localizations disagree on the T corner",
        ));
    }
    let TargetHom::Abelian(comparison_r) = res_r.unit else { unreachable!() };
    let TargetHom::Abelian(comparison_s) = res_s.unit else { unreachable!() };
    let TargetHom::Abelian(map_r_to_t) = further_r.unit else { unreachable!() };
    let TargetHom::Abelian(map_s_to_t) = further_s.unit else { unreachable!() };

    let mut bezout_pairs = Vec::new();
    for p in r_set.prime_set() {
        for q in s_set.prime_set() {
            bezout_pairs.push(BezoutPair::new(p, q)?);
        }
    }
    // one witness for representative smooth denominators
    let r_rep: BigInt = r_set.prime_set().iter().product();
    let s_rep: BigInt = s_set.prime_set().iter().product();
    if r_rep > BigInt::one() && s_rep > BigInt::one() {
        bezout_pairs.push(BezoutPair::new(&r_rep, &s_rep)?);
    }

    let mut warnings = Vec::new();
    let mut sampled = 0usize;
    if a.free_rank() > 0 && !r_set.prime_set().is_empty() && !s_set.prime_set().is_empty() {
        // sampled instances of "an R-smooth and S-smooth denominator is 1":
        // a reduced denominator d > 1 supported on primes(R) never lies in
        // the S-smooth corner, witnessed by a Bezout identity
        let mut rng = StdRng::seed_from_u64(seed);
        let r_primes: Vec<BigInt> = r_set.prime_set().iter().cloned().collect();
        for _ in 0..32 {
            let c = BigInt::from(rng.gen_range(-50i64..=50));
            let p = &r_primes[rng.gen_range(0..r_primes.len())];
            let e = rng.gen_range(1..=3u32);
            let den = p.pow(e);
            let reduced = &den / c.gcd(&den);
            let integral = reduced.is_one();
            let s_smooth =
                prime_factors(&reduced).iter().all(|q| s_set.prime_set().contains(q));
            if !integral && s_smooth {
                return Err(Error::invalid(
                    "fracture_square_abelian",
                    "sampled denominator was both R- and S-smooth",
                ));
            }
            sampled += 1;
        }
        warnings.push("free-part element checks are sampled, not exhaustive".to_string());
    }

    let cert = PullbackCertificate {
        kind: "abelian-fracture".into(),
        apex: a.clone(),
        corner_r,
        corner_s,
        corner_t,
        map_r_to_t,
        map_s_to_t,
        comparison_r,
        comparison_s,
        bezout: bezout_pairs,
        torsion_pairs: 0,
        sampled_free_checks: sampled,
        warnings,
    };
    let (count, bijective) = torsion_pullback_check(
        &cert.apex,
        &cert.comparison_r,
        &cert.comparison_s,
        &cert.map_r_to_t,
        &cert.map_s_to_t,
    )?;
    if !bijective {
        return Err(Error::invalid(
            "fracture_square_abelian",
            "torsion comparison is not a bijection onto the pullback",
        ));
    }
    let cert = PullbackCertificate {
        torsion_pairs: count,
        ..cert
    };
    if !cert.verify()? {
        return Err(Error::invalid(
            "fracture_square_abelian",
            "certificate failed to re-verify",
        ));
    }
    Ok(cert)
}

/// One column of the three-row diagram.
#[derive(Clone, Debug, Serialize)]
pub struct ColumnCheck {
    pub n: usize,
    #[serde(with = "bigint")]
    pub rho: BigInt,
    #[serde(with = "bigint")]
    pub sigma: BigInt,
    pub pullback_is_apex: bool,
    pub transition_is_identity: bool,
}

/// Report for the three-row colimit diagram instantiated on a group.
#[derive(Clone, Debug, Serialize)]
pub struct ColimitRowReport {
    pub depth: usize,
    pub squares_commute: bool,
    pub columns: Vec<ColumnCheck>,
    pub row_colimits_match: bool,
    pub pass: bool,
}

/// Instantiates the three-row diagram on `a` up to `depth`: checks that all
/// squares commute, that each column's pullback is `a` with identity
/// transitions, and that the row colimits match `sequential_colimit_mult`.
pub fn fracture_colimit_row_check(
    a: &FgAbelianGroup,
    fams: &FractureFamilies,
    depth: usize,
) -> Result<ColimitRowReport> {
    if depth > fams.depth_cap() {
        return Err(Error::DepthOutOfRange {
            depth,
            max: fams.depth_cap(),
        });
    }
    // (i) commutativity of every square, as exact integer identities
    let mut squares_commute = true;
    for n in 0..depth {
        let top = fams.sigma(n + 1) * fams.running_r(n + 1);
        let mid_t = fams.running_t(n + 1) * fams.sigma(n);
        let bottom = fams.rho(n + 1) * fams.running_s(n + 1);
        let mid_b = fams.running_t(n + 1) * fams.rho(n);
        if top != mid_t || bottom != mid_b {
            squares_commute = false;
        }
    }
    // (ii) column pullbacks and identity transitions
    let mut columns = Vec::new();
    for n in 0..=depth {
        let rho = fams.rho(n);
        let sigma = fams.sigma(n);
        let pullback_is_apex = mult_square_pullback(a, &sigma, &rho).is_ok();
        let transition_is_identity = if n < depth {
            fams.running_r(n + 1) * &rho == fams.rho(n + 1)
                && fams.running_s(n + 1) * &sigma == fams.sigma(n + 1)
        } else {
            true
        };
        columns.push(ColumnCheck {
            n,
            rho,
            sigma,
            pullback_is_apex,
            transition_is_identity,
        });
    }
    // (iii) row colimits at depth agree with the direct localization at
    // the multipliers the truncated row actually contains
    let rows: [Vec<BigInt>; 3] = [
        (1..=depth).map(|i| fams.running_r(i)).collect(),
        (1..=depth).map(|i| fams.running_t(i)).collect(),
        (1..=depth).map(|i| fams.running_s(i)).collect(),
    ];
    let mut row_colimits_match = true;
    for multipliers in rows {
        if multipliers.is_empty() {
            continue;
        }
        let colimit = crate::localization::sequential_colimit_mult(a, &multipliers)?;
        let numset = NumSet::new(multipliers.clone())?;
        let direct = localize_abelian(a, &numset).localized;
        if GroupTarget::Abelian(colimit) != direct {
            row_colimits_match = false;
        }
    }
    let pass = squares_commute
        && row_colimits_match
        && columns
            .iter()
            .all(|c| c.pullback_is_apex && c.transition_is_identity);
    Ok(ColimitRowReport {
        depth,
        squares_commute,
        columns,
        row_colimits_match,
        pass,
    })
}

/// Per-level outcome of a Postnikov fracture check.
#[derive(Clone, Debug, Serialize)]
pub struct LevelFracture {
    pub n: usize,
    pub pass: bool,
    pub certificate: PullbackCertificate,
}

/// Fracture result for the fundamental group, checked by brute force on
/// the Hall projections.
#[derive(Clone, Debug, Serialize)]
pub struct Pi1Fracture {
    pub order: usize,
    pub order_r: usize,
    pub order_s: usize,
    pub order_t: usize,
    pub pullback_bijective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PostnikovFractureReport {
    pub pass: bool,
    pub pi1: Pi1Fracture,
    pub levels: Vec<LevelFracture>,
}

/// Levelwise fracture verification of a Postnikov tower: the nilpotent
/// fundamental group through its Hall projections (brute force), each
/// higher level through `fracture_square_abelian`.
pub fn fracture_postnikov(
    x: &PostnikovData,
    fams: &FractureFamilies,
    seed: u64,
) -> Result<PostnikovFractureReport> {
    let report = crate::postnikov::validate(x);
    if !report.valid {
        return Err(Error::invalid("PostnikovData", report.failures.join("; ")));
    }
    let pi1 = fracture_finite_nilpotent(&x.pi1, fams)?;
    let mut levels = Vec::new();
    let mut pass = pi1.pullback_bijective;
    for level in &x.levels {
        let certificate = fracture_square_abelian(&level.group, fams, seed)?;
        let ok = certificate.verify()?;
        pass &= ok;
        levels.push(LevelFracture {
            n: level.n,
            pass: ok,
            certificate,
        });
    }
    Ok(PostnikovFractureReport { pass, pi1, levels })
}

/// Fracture square for a finite nilpotent group, brute-forced on the Hall
/// projections: the pullback of `G_R -> G_T <- G_S` must be `G` via the
/// diagonal.
pub fn fracture_finite_nilpotent(
    g: &crate::finite::FiniteGroup,
    fams: &FractureFamilies,
) -> Result<Pi1Fracture> {
    let r_set = fams.numset_r();
    let s_set = fams.numset_s();
    let res_r = localize_finite_nilpotent(g, &r_set)?;
    let res_s = localize_finite_nilpotent(g, &s_set)?;
    let GroupTarget::Finite(g_r) = &res_r.localized else { unreachable!() };
    let GroupTarget::Finite(g_s) = &res_s.localized else { unreachable!() };
    let TargetHom::Finite(eta_r) = &res_r.unit else { unreachable!() };
    let TargetHom::Finite(eta_s) = &res_s.unit else { unreachable!() };
    let further_r = localize_finite_nilpotent(g_r, &s_set)?;
    let further_s = localize_finite_nilpotent(g_s, &r_set)?;
    let GroupTarget::Finite(g_t) = &further_r.localized else { unreachable!() };
    if further_s.localized != GroupTarget::Finite(g_t.clone()) {
        return Err(Error::invalid(
            "fracture_postnikov",
            "iterated Hall projections disagree on the T corner",
        ));
    }
    let TargetHom::Finite(u_rt) = &further_r.unit else { unreachable!() };
    let TargetHom::Finite(u_st) = &further_s.unit else { unreachable!() };
    // brute-force pullback of the Hall projections
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for u in 0..g_r.order() {
        for v in 0..g_s.order() {
            if u_rt.apply(u) == u_st.apply(v) {
                pairs.insert((u, v));
            }
        }
    }
    let mut images: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut injective = true;
    for x in 0..g.order() {
        if !images.insert((eta_r.apply(x), eta_s.apply(x))) {
            injective = false;
        }
    }
    let bijective = injective && images == pairs;
    Ok(Pi1Fracture {
        order: g.order(),
        order_r: g_r.order(),
        order_s: g_s.order(),
        order_t: g_t.order(),
        pullback_bijective: bijective,
    })
}
