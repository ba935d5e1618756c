//! Finitely generated abelian groups in invariant-factor normal form,
//! optionally over a localized integer ring, together with homomorphisms,
//! subgroups, kernels, cokernels, pullbacks and exactness.
//!
//! Conventions: generators are ordered free-first then torsion, torsion
//! invariants form an ascending divisibility chain with every entry >= 2.
//! Elements are column vectors, homs act by left matrix multiplication,
//! and two groups are isomorphic iff they are field-equal.

use crate::arith::{mod_inverse, reduce_mod, BigRational};
use crate::error::{Error, Result};
use crate::jsonutil::{bigint_vec, matrix_rows};
use crate::localization::LocalizedRing;
use crate::matrix::{column_hermite_form, nullspace, smith_normal_form, solve, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A group `ring^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | ... | d_k`,
/// every `d_i >= 2` and coprime to the ring's inverted primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbelianGroup {
    ring: LocalizedRing,
    free_rank: usize,
    #[serde(with = "bigint_vec")]
    torsion: Vec<BigInt>,
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            ring: LocalizedRing,
            #[serde(default)]
            free_rank: usize,
            #[serde(with = "bigint_vec", default)]
            torsion: Vec<BigInt>,
        }
        let raw = Raw::deserialize(d)?;
        FgAbelianGroup::new(raw.ring, raw.free_rank, raw.torsion).map_err(serde::de::Error::custom)
    }
}

impl FgAbelianGroup {
    pub fn new(ring: LocalizedRing, free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        for d in &torsion {
            if d < &two {
                return Err(Error::invalid(
                    "FgAbelianGroup",
                    format!("torsion invariant {d} must be >= 2"),
                ));
            }
            for p in ring.inverted_primes() {
                if (d % p).is_zero() {
                    return Err(Error::invalid(
                        "FgAbelianGroup",
                        format!("torsion invariant {d} not coprime to inverted prime {p}"),
                    ));
                }
            }
        }
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::invalid(
                    "FgAbelianGroup",
                    format!("divisibility chain violated: {} does not divide {}", w[0], w[1]),
                ));
            }
        }
        Ok(FgAbelianGroup {
            ring,
            free_rank,
            torsion,
        })
    }

    pub fn zero() -> Self {
        FgAbelianGroup {
            ring: LocalizedRing::integers(),
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn zero_over(ring: LocalizedRing) -> Self {
        FgAbelianGroup {
            ring,
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(ring: LocalizedRing, rank: usize) -> Self {
        FgAbelianGroup {
            ring,
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn integers() -> Self {
        Self::free(LocalizedRing::integers(), 1)
    }

    /// `Z/n` over the plain integers; `n = 1` gives the zero group.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::from_torsion_list(LocalizedRing::integers(), &[BigInt::from(n)])
    }

    /// Canonicalizes an arbitrary list of moduli (each >= 1) into invariant
    /// factors, e.g. `[4, 6]` becomes `[2, 12]`.
    pub fn from_torsion_list(ring: LocalizedRing, moduli: &[BigInt]) -> Result<Self> {
        for m in moduli {
            if !m.is_positive() {
                return Err(Error::invalid(
                    "FgAbelianGroup",
                    format!("modulus {m} must be >= 1"),
                ));
            }
        }
        let pres = present(&ring, moduli.len(), &IntMatrix::diagonal(moduli));
        Ok(pres.group)
    }

    pub fn ring(&self) -> &LocalizedRing {
        &self.ring
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of canonical generators (free then torsion).
    pub fn gens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_zero_group(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    /// `gens() x torsion.len()` matrix whose columns are the torsion
    /// relations `d_i * t_i` in generator coordinates.
    pub fn relation_embedding(&self) -> IntMatrix {
        let n = self.gens();
        let k = self.torsion.len();
        let mut m = IntMatrix::zeros(n, k);
        for (i, d) in self.torsion.iter().enumerate() {
            m.set(self.free_rank + i, i, d.clone());
        }
        m
    }

    /// Builds the canonical element with the given coordinates.
    pub fn element(&self, free: Vec<BigRational>, torsion: Vec<BigInt>) -> Result<AbelianElement> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(Error::Dimension("element coordinate count mismatch".into()));
        }
        for q in &free {
            if !self.ring.is_unit(q.denom()) {
                return Err(Error::invalid(
                    "AbelianElement",
                    format!("denominator {} is not invertible in the ring", q.denom()),
                ));
            }
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion)
            .map(|(x, d)| reduce_mod(x, d))
            .collect();
        Ok(AbelianElement { free, torsion })
    }

    pub fn element_from_ints(&self, coords: &[BigInt]) -> Result<AbelianElement> {
        if coords.len() != self.gens() {
            return Err(Error::Dimension("element coordinate count mismatch".into()));
        }
        let free = coords[..self.free_rank]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        self.element(free, coords[self.free_rank..].to_vec())
    }

    pub fn zero_element(&self) -> AbelianElement {
        AbelianElement {
            free: vec![BigRational::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    pub fn add(&self, a: &AbelianElement, b: &AbelianElement) -> AbelianElement {
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.torsion)
            .map(|((x, y), d)| reduce_mod(&(x + y), d))
            .collect();
        AbelianElement { free, torsion }
    }

    pub fn neg(&self, a: &AbelianElement) -> AbelianElement {
        let free = a.free.iter().map(|x| -x).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&self.torsion)
            .map(|(x, d)| reduce_mod(&(-x), d))
            .collect();
        AbelianElement { free, torsion }
    }

    pub fn scalar_mul(&self, k: &BigInt, a: &AbelianElement) -> AbelianElement {
        let kq = BigRational::from_integer(k.clone());
        let free = a.free.iter().map(|x| x * &kq).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&self.torsion)
            .map(|(x, d)| reduce_mod(&(x * k), d))
            .collect();
        AbelianElement { free, torsion }
    }

    pub fn is_zero_element(&self, a: &AbelianElement) -> bool {
        a.free.iter().all(|x| x.is_zero()) && a.torsion.iter().all(|x| x.is_zero())
    }

    /// Order of an element, `None` when infinite.
    pub fn element_order(&self, a: &AbelianElement) -> Option<BigInt> {
        if a.free.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut ord = BigInt::one();
        for (x, d) in a.torsion.iter().zip(&self.torsion) {
            let o = d / x.gcd(d);
            ord = ord.lcm(&o);
        }
        Some(ord)
    }

    /// All elements, torsion coordinates in mixed-radix order; errors on a
    /// nonzero free rank.
    pub fn elements(&self) -> Result<Vec<AbelianElement>> {
        if self.free_rank > 0 {
            return Err(Error::InfiniteGroup);
        }
        let mut out = Vec::new();
        let k = self.torsion.len();
        let mut cur = vec![BigInt::zero(); k];
        'outer: loop {
            out.push(AbelianElement {
                free: Vec::new(),
                torsion: cur.clone(),
            });
            for i in (0..k).rev() {
                cur[i] += 1;
                if cur[i] < self.torsion[i] {
                    continue 'outer;
                }
                cur[i] = BigInt::zero();
            }
            break;
        }
        Ok(out)
    }

    /// Direct sum with canonical result plus the four structure maps
    /// `(sum, inj1, inj2, pr1, pr2)`.
    pub fn direct_sum(a: &FgAbelianGroup, b: &FgAbelianGroup) -> DirectSum {
        let ring = a.ring.merge(&b.ring);
        let na = a.gens();
        let nb = b.gens();
        let mut rel = IntMatrix::zeros(na + nb, a.torsion.len() + b.torsion.len());
        for (i, d) in a.torsion.iter().enumerate() {
            rel.set(a.free_rank + i, i, d.clone());
        }
        for (i, d) in b.torsion.iter().enumerate() {
            rel.set(na + b.free_rank + i, a.torsion.len() + i, d.clone());
        }
        let pres = present(&ring, na + nb, &rel);
        let sum = pres.group.clone();
        let proj_cols_a: Vec<usize> = (0..na).collect();
        let proj_cols_b: Vec<usize> = (na..na + nb).collect();
        let inj1 = AbelianHom::new(a.clone(), sum.clone(), pres.project.submatrix_cols(&proj_cols_a))
            .expect("direct sum injection");
        let inj2 = AbelianHom::new(b.clone(), sum.clone(), pres.project.submatrix_cols(&proj_cols_b))
            .expect("direct sum injection");
        let pr1 = AbelianHom::new(
            sum.clone(),
            a.clone(),
            pres.section.submatrix_rows(&proj_cols_a),
        )
        .expect("direct sum projection");
        let pr2 = AbelianHom::new(
            sum.clone(),
            b.clone(),
            pres.section.submatrix_rows(&proj_cols_b),
        )
        .expect("direct sum projection");
        DirectSum {
            sum,
            inj1,
            inj2,
            pr1,
            pr2,
        }
    }
}

pub struct DirectSum {
    pub sum: FgAbelianGroup,
    pub inj1: AbelianHom,
    pub inj2: AbelianHom,
    pub pr1: AbelianHom,
    pub pr2: AbelianHom,
}

/// An element in canonical coordinates: rational free coordinates whose
/// denominators are units of the ring, torsion residues in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianElement {
    free: Vec<BigRational>,
    torsion: Vec<BigInt>,
}

impl AbelianElement {
    pub fn free_coords(&self) -> &[BigRational] {
        &self.free
    }

    pub fn torsion_coords(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Clears denominators: returns `(c, v)` with `c` a ring unit and
    /// `v = c * self` an integer coordinate vector.
    pub fn clear_denominators(&self) -> (BigInt, Vec<BigInt>) {
        let mut c = BigInt::one();
        for q in &self.free {
            c = c.lcm(q.denom());
        }
        let mut v: Vec<BigInt> = self
            .free
            .iter()
            .map(|q| (q * BigRational::from_integer(c.clone())).to_integer())
            .collect();
        v.extend(self.torsion.iter().map(|t| t * &c));
        (c, v)
    }
}

/// A homomorphism between canonical groups, stored as the integer matrix of
/// generator images (codomain coordinates in rows). The domain ring must be
/// contained in the codomain ring whenever the domain has a free part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianHom {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    #[serde(with = "matrix_rows")]
    matrix: IntMatrix,
}

impl<'de> Deserialize<'de> for AbelianHom {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            domain: FgAbelianGroup,
            codomain: FgAbelianGroup,
            #[serde(with = "matrix_rows")]
            matrix: IntMatrix,
        }
        let raw = Raw::deserialize(d)?;
        AbelianHom::new(raw.domain, raw.codomain, raw.matrix).map_err(serde::de::Error::custom)
    }
}

impl AbelianHom {
    pub fn new(domain: FgAbelianGroup, codomain: FgAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.gens() || matrix.cols() != domain.gens() {
            return Err(Error::Dimension(format!(
                "hom matrix must be {}x{}, got {}x{}",
                codomain.gens(),
                domain.gens(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if domain.free_rank() > 0 && !codomain.ring().contains_ring(domain.ring()) {
            return Err(Error::invalid(
                "AbelianHom",
                "domain ring not contained in codomain ring",
            ));
        }
        // well-definedness: each torsion generator of order d maps to an
        // element annihilated by d
        for col in 0..domain.gens() {
            let dom_order = domain.generator_order(col);
            let Some(d) = dom_order else { continue };
            for row in 0..codomain.gens() {
                let entry = matrix.at(row, col);
                match codomain.generator_order(row) {
                    None => {
                        if !entry.is_zero() {
                            return Err(Error::invalid(
                                "AbelianHom",
                                format!(
                                    "torsion generator {col} maps into the free part ({entry} at row {row})"
                                ),
                            ));
                        }
                    }
                    Some(e) => {
                        if !((&d * entry) % &e).is_zero() {
                            return Err(Error::invalid(
                                "AbelianHom",
                                format!(
                                    "image of torsion generator {col} (order {d}) is not annihilated: entry {entry} at row {row} (order {e})"
                                ),
                            ));
                        }
                    }
                }
            }
        }
        let matrix = reduce_matrix(&codomain, matrix);
        Ok(AbelianHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(a: &FgAbelianGroup) -> Self {
        AbelianHom::new(a.clone(), a.clone(), IntMatrix::identity(a.gens()))
            .expect("identity hom")
    }

    pub fn zero(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Self {
        AbelianHom::new(
            domain.clone(),
            codomain.clone(),
            IntMatrix::zeros(codomain.gens(), domain.gens()),
        )
        .expect("zero hom")
    }

    /// Multiplication by `k` as a self-map.
    pub fn mul_by(a: &FgAbelianGroup, k: &BigInt) -> Self {
        AbelianHom::new(a.clone(), a.clone(), IntMatrix::identity(a.gens()).scale(k))
            .expect("multiplication hom")
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AbelianHom) -> Result<AbelianHom> {
        if other.codomain != self.domain {
            return Err(Error::NotComposable(
                "inner codomain differs from outer domain".into(),
            ));
        }
        AbelianHom::new(
            other.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&other.matrix)?,
        )
    }

    pub fn add(&self, other: &AbelianHom) -> Result<AbelianHom> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::NotComposable("hom addition shape mismatch".into()));
        }
        AbelianHom::new(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.add(&other.matrix)?,
        )
    }

    pub fn negate(&self) -> AbelianHom {
        AbelianHom::new(self.domain.clone(), self.codomain.clone(), self.matrix.neg())
            .expect("negation preserves well-definedness")
    }

    pub fn apply(&self, x: &AbelianElement) -> Result<AbelianElement> {
        apply_matrix(&self.domain, &self.codomain, &self.matrix, x)
    }

    pub fn kernel_subgroup(&self) -> AbelianSubgroup {
        let combined = self
            .matrix
            .hstack(&self.codomain.relation_embedding())
            .expect("shape");
        let null = nullspace(&combined);
        let na = self.domain.gens();
        let keep: Vec<usize> = (0..na).collect();
        let xpart = null.submatrix_rows(&keep);
        let gens = xpart
            .hstack(&self.domain.relation_embedding())
            .expect("shape");
        AbelianSubgroup::from_generators(self.domain.clone(), &gens)
    }

    pub fn image_subgroup(&self) -> AbelianSubgroup {
        AbelianSubgroup::from_generators(self.codomain.clone(), &self.matrix)
    }

    /// `(k, incl)` with `incl` injective and `self ∘ incl = 0`.
    pub fn kernel(&self) -> (FgAbelianGroup, AbelianHom) {
        self.kernel_subgroup().as_group()
    }

    /// `(q, proj)` with `proj` surjective and `proj ∘ self = 0`.
    pub fn cokernel(&self) -> (FgAbelianGroup, AbelianHom) {
        let (q, proj, _) = self.cokernel_with_section();
        (q, proj)
    }

    /// Cokernel plus an integer section of the projection on generators.
    pub fn cokernel_with_section(&self) -> (FgAbelianGroup, AbelianHom, IntMatrix) {
        let rel = self
            .matrix
            .hstack(&self.codomain.relation_embedding())
            .expect("shape");
        let pres = present(self.codomain.ring(), self.codomain.gens(), &rel);
        let proj = AbelianHom::new(self.codomain.clone(), pres.group.clone(), pres.project)
            .expect("cokernel projection");
        (pres.group, proj, pres.section)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero_group()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_zero_group()
    }
}

/// Applies a generator-image matrix to an element; the matrix must satisfy
/// the `AbelianHom` well-definedness conditions.
pub(crate) fn apply_matrix(
    domain: &FgAbelianGroup,
    codomain: &FgAbelianGroup,
    matrix: &IntMatrix,
    x: &AbelianElement,
) -> Result<AbelianElement> {
    if x.free.len() != domain.free_rank() || x.torsion.len() != domain.torsion().len() {
        return Err(Error::Dimension("element not in hom domain".into()));
    }
    let rf = codomain.free_rank();
    let mut free = vec![BigRational::zero(); rf];
    for (row, item) in free.iter_mut().enumerate() {
        let mut acc = BigRational::zero();
        for (col, q) in x.free.iter().enumerate() {
            acc += BigRational::from_integer(matrix.at(row, col).clone()) * q;
        }
        // torsion domain columns are zero on free rows by validity
        *item = acc;
    }
    let mut torsion = Vec::with_capacity(codomain.torsion().len());
    for (ti, e) in codomain.torsion().iter().enumerate() {
        let row = rf + ti;
        let mut acc = BigInt::zero();
        for (col, q) in x.free.iter().enumerate() {
            // rational with unit denominator: invert it mod e
            let den = reduce_mod(q.denom(), e);
            let inv = mod_inverse(&den, e).expect("unit denominator mod invariant");
            acc += matrix.at(row, col) * q.numer() * &inv;
        }
        for (k, t) in x.torsion.iter().enumerate() {
            acc += matrix.at(row, domain.free_rank() + k) * t;
        }
        torsion.push(reduce_mod(&acc, e));
    }
    Ok(AbelianElement { free, torsion })
}

/// Solves `incl_matrix * x = v` in the codomain of `incl` (i.e. modulo the
/// codomain relations), returning coordinates in the inclusion's domain.
pub(crate) fn express_through(incl: &AbelianHom, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let combined = incl
        .matrix()
        .hstack(&incl.codomain().relation_embedding())
        .expect("shape");
    let sol = solve(&combined, v)?;
    Some(sol[..incl.domain().gens()].to_vec())
}

fn reduce_matrix(codomain: &FgAbelianGroup, mut m: IntMatrix) -> IntMatrix {
    let rf = codomain.free_rank();
    for (ti, e) in codomain.torsion().iter().enumerate() {
        for col in 0..m.cols() {
            let v = reduce_mod(m.at(rf + ti, col), e);
            m.set(rf + ti, col, v);
        }
    }
    m
}

impl FgAbelianGroup {
    /// Order of the generator at canonical index `i`, `None` for a free one.
    fn generator_order(&self, i: usize) -> Option<BigInt> {
        if i < self.free_rank {
            None
        } else {
            Some(self.torsion[i - self.free_rank].clone())
        }
    }
}

/// A subgroup (over the ring: a submodule) of a canonical group, stored as
/// the Hermite basis of the saturated preimage lattice in generator
/// coordinates. Two subgroups are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianSubgroup {
    parent: FgAbelianGroup,
    lattice: IntMatrix,
}

impl AbelianSubgroup {
    /// Subgroup generated by the columns of `gens` (parent coordinates).
    pub fn from_generators(parent: FgAbelianGroup, gens: &IntMatrix) -> Self {
        assert_eq!(gens.rows(), parent.gens(), "generator coordinate mismatch");
        let full = gens
            .hstack(&parent.relation_embedding())
            .expect("shape");
        let saturated = saturate(parent.ring(), &full);
        let lattice = column_hermite_form(&saturated);
        AbelianSubgroup { parent, lattice }
    }

    pub fn from_elements(parent: FgAbelianGroup, elems: &[AbelianElement]) -> Self {
        let cols: Vec<Vec<BigInt>> = elems.iter().map(|e| e.clear_denominators().1).collect();
        let gens = IntMatrix::from_columns(parent.gens(), &cols);
        Self::from_generators(parent, &gens)
    }

    pub fn trivial(parent: FgAbelianGroup) -> Self {
        let gens = IntMatrix::zeros(parent.gens(), 0);
        Self::from_generators(parent, &gens)
    }

    pub fn full(parent: FgAbelianGroup) -> Self {
        let gens = IntMatrix::identity(parent.gens());
        Self::from_generators(parent, &gens)
    }

    pub fn parent(&self) -> &FgAbelianGroup {
        &self.parent
    }

    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn is_trivial(&self) -> bool {
        *self == Self::trivial(self.parent.clone())
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.parent.clone())
    }

    pub fn contains_coords(&self, v: &[BigInt]) -> bool {
        solve(&self.lattice, v).is_some()
    }

    pub fn contains(&self, e: &AbelianElement) -> bool {
        let (_, v) = e.clear_denominators();
        self.contains_coords(&v)
    }

    pub fn is_contained_in(&self, other: &AbelianSubgroup) -> bool {
        self.parent == other.parent
            && (0..self.lattice.cols()).all(|j| other.contains_coords(&self.lattice.column(j)))
    }

    /// Join (subgroup generated by the union).
    pub fn join(&self, other: &AbelianSubgroup) -> AbelianSubgroup {
        assert_eq!(self.parent, other.parent);
        let gens = self.lattice.hstack(&other.lattice).expect("shape");
        Self::from_generators(self.parent.clone(), &gens)
    }

    /// Image under a hom, as a subgroup of the codomain.
    pub fn image_under(&self, h: &AbelianHom) -> Result<AbelianSubgroup> {
        if *h.domain() != self.parent {
            return Err(Error::NotComposable("subgroup not in hom domain".into()));
        }
        let gens = h.matrix().mul(&self.lattice)?;
        Ok(Self::from_generators(h.codomain().clone(), &gens))
    }

    /// The subgroup as an abstract canonical group with its inclusion.
    pub fn as_group(&self) -> (FgAbelianGroup, AbelianHom) {
        let basis = &self.lattice;
        let m = basis.cols();
        let rels = self.parent.relation_embedding();
        let mut rel_coords = IntMatrix::zeros(m, rels.cols());
        for j in 0..rels.cols() {
            let sol = solve(basis, &rels.column(j))
                .expect("relation lattice is contained in every saturated subgroup lattice");
            for (i, v) in sol.into_iter().enumerate() {
                rel_coords.set(i, j, v);
            }
        }
        let pres = present(self.parent.ring(), m, &rel_coords);
        let incl_matrix = basis.mul(&pres.section).expect("shape");
        let incl = AbelianHom::new(pres.group.clone(), self.parent.clone(), incl_matrix)
            .expect("inclusion hom");
        (pres.group, incl)
    }

    /// Quotient of the parent by this subgroup: `(q, proj, section)`.
    pub fn quotient(&self) -> (FgAbelianGroup, AbelianHom, IntMatrix) {
        let pres = present(self.parent.ring(), self.parent.gens(), &self.lattice);
        let proj = AbelianHom::new(self.parent.clone(), pres.group.clone(), pres.project)
            .expect("quotient projection");
        (pres.group, proj, pres.section)
    }

    /// Order of the subgroup, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.as_group().0.order()
    }
}

/// Strips inverted primes from the invariant factors of the lattice spanned
/// by the columns of `m`, i.e. closes it under the ring action.
fn saturate(ring: &LocalizedRing, m: &IntMatrix) -> IntMatrix {
    if ring.is_integers() {
        return m.clone();
    }
    let s = smith_normal_form(m);
    let diag = s.diagonal();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let stripped = ring.coprime_part(d);
        let col: Vec<BigInt> = (0..m.rows())
            .map(|r| s.u_inv.at(r, i) * &stripped)
            .collect();
        cols.push(col);
    }
    IntMatrix::from_columns(m.rows(), &cols)
}

pub(crate) struct Presentation {
    pub group: FgAbelianGroup,
    /// `dim(Q) x n`: canonical coordinates of a generator-coordinate vector
    /// (torsion rows still need reduction, which `AbelianHom::new` does).
    pub project: IntMatrix,
    /// `n x dim(Q)`: integer preimages of the canonical generators.
    pub section: IntMatrix,
}

/// Canonical form of `ring^n / im(relations)` with projection and section.
pub(crate) fn present(ring: &LocalizedRing, n: usize, relations: &IntMatrix) -> Presentation {
    assert_eq!(relations.rows(), n, "relation coordinate mismatch");
    let s = smith_normal_form(relations);
    let diag = s.diagonal();
    let mut free_rows: Vec<usize> = Vec::new();
    let mut torsion_rows: Vec<(usize, BigInt)> = Vec::new();
    for i in 0..n {
        match diag.get(i) {
            None => free_rows.push(i),
            Some(d) if d.is_zero() => free_rows.push(i),
            Some(d) => {
                let stripped = ring.coprime_part(d);
                if !stripped.is_one() {
                    torsion_rows.push((i, stripped));
                }
            }
        }
    }
    let mut keep: Vec<usize> = free_rows.clone();
    keep.extend(torsion_rows.iter().map(|(i, _)| *i));
    let project = s.u.submatrix_rows(&keep);
    let section = s.u_inv.submatrix_cols(&keep);
    let torsion: Vec<BigInt> = torsion_rows.into_iter().map(|(_, d)| d).collect();
    let group = FgAbelianGroup::new(ring.clone(), free_rows.len(), torsion)
        .expect("presentation yields a canonical group");
    Presentation {
        group,
        project,
        section,
    }
}

/// Pullback of `f : A -> C` and `g : B -> C`: the kernel of
/// `f∘pr1 - g∘pr2 : A ⊕ B -> C`, with its two projections.
pub fn pullback(
    f: &AbelianHom,
    g: &AbelianHom,
) -> Result<(FgAbelianGroup, AbelianHom, AbelianHom)> {
    if f.codomain() != g.codomain() {
        return Err(Error::NotComposable("pullback needs equal codomains".into()));
    }
    let ds = FgAbelianGroup::direct_sum(f.domain(), g.domain());
    let diff = f.compose(&ds.pr1)?.add(&g.compose(&ds.pr2)?.negate())?;
    let (p, incl) = diff.kernel();
    let pr1 = ds.pr1.compose(&incl)?;
    let pr2 = ds.pr2.compose(&incl)?;
    Ok((p, pr1, pr2))
}

/// Exactness at every interior node: image = kernel.
pub fn is_exact(seq: &[AbelianHom]) -> Result<bool> {
    for w in seq.windows(2) {
        if w[0].codomain() != w[1].domain() {
            return Err(Error::NotComposable(
                "consecutive maps do not compose".into(),
            ));
        }
    }
    for w in seq.windows(2) {
        if w[0].image_subgroup() != w[1].kernel_subgroup() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Short exactness of `0 -> A -i-> B -q-> C -> 0`.
pub fn is_short_exact(i: &AbelianHom, q: &AbelianHom) -> Result<bool> {
    if i.codomain() != q.domain() {
        return Err(Error::NotComposable(
            "inclusion codomain differs from surjection domain".into(),
        ));
    }
    Ok(i.is_injective()
        && q.is_surjective()
        && i.image_subgroup() == q.kernel_subgroup())
}

/// Per-generator candidate image columns for homs into a finite group:
/// a torsion generator of order `d` may map to anything annihilated by `d`;
/// a free generator over ring `P` may map to anything of `P`-coprime order.
fn hom_image_candidates(a: &FgAbelianGroup, b: &FgAbelianGroup) -> Result<Vec<Vec<Vec<BigInt>>>> {
    if b.free_rank() > 0 {
        return Err(Error::InfiniteGroup);
    }
    let all = b.elements()?;
    let mut per_gen = Vec::with_capacity(a.gens());
    for g in 0..a.gens() {
        let cands: Vec<Vec<BigInt>> = match a.generator_order(g) {
            Some(d) => all
                .iter()
                .filter(|e| {
                    b.is_zero_element(&b.scalar_mul(&d, e))
                })
                .map(|e| e.torsion.clone())
                .collect(),
            None => all
                .iter()
                .filter(|e| {
                    let ord = b.element_order(e).expect("finite group");
                    a.ring().coprime_part(&ord) == ord
                })
                .map(|e| e.torsion.clone())
                .collect(),
        };
        per_gen.push(cands);
    }
    Ok(per_gen)
}

/// Visits the matrix of every hom `a -> b` exactly once (`b` finite).
/// Columns are rewritten only when their odometer digit moves.
pub fn for_each_hom<F: FnMut(&IntMatrix)>(
    a: &FgAbelianGroup,
    b: &FgAbelianGroup,
    mut f: F,
) -> Result<()> {
    let per_gen = hom_image_candidates(a, b)?;
    let n = a.gens();
    let rows = b.gens();
    if per_gen.iter().any(|c| c.is_empty()) {
        return Ok(()); // cannot happen: zero element is always a candidate
    }
    let mut idx = vec![0usize; n];
    let mut m = IntMatrix::zeros(rows, n);
    let write_col = |m: &mut IntMatrix, col: usize, choice: &[BigInt]| {
        for (row, v) in choice.iter().enumerate() {
            m.set(row, col, v.clone());
        }
    };
    for col in 0..n {
        write_col(&mut m, col, &per_gen[col][0]);
    }
    'outer: loop {
        f(&m);
        for i in (0..n).rev() {
            idx[i] += 1;
            if idx[i] < per_gen[i].len() {
                write_col(&mut m, i, &per_gen[i][idx[i]]);
                continue 'outer;
            }
            idx[i] = 0;
            write_col(&mut m, i, &per_gen[i][0]);
        }
        break;
    }
    Ok(())
}

/// Materializes all homs `a -> b` (`b` finite); meant for small hom sets.
pub fn enumerate_homs(a: &FgAbelianGroup, b: &FgAbelianGroup) -> Result<Vec<AbelianHom>> {
    let mut out = Vec::new();
    for_each_hom(a, b, |m| {
        out.push(
            AbelianHom::new(a.clone(), b.clone(), m.clone()).expect("enumerated hom is valid"),
        );
    })?;
    Ok(out)
}

/// Number of homs `a -> b` without materializing them.
pub fn count_homs(a: &FgAbelianGroup, b: &FgAbelianGroup) -> Result<BigInt> {
    let per_gen = hom_image_candidates(a, b)?;
    Ok(per_gen
        .iter()
        .map(|c| BigInt::from(c.len()))
        .product())
}
