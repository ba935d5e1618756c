//! Finite groups as Cayley tables: subgroups, quotients, central series,
//! nilpotency, Sylow decomposition, and exhaustive isomorphism search.

use crate::error::{Error, Result};
use crate::max_group_order;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A finite group on elements `0..n` with full multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    /// row-major: `table[a * order + b] = a * b`
    cayley: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl Serialize for FiniteGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            order: usize,
            cayley: Vec<Vec<usize>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            labels: Option<&'a Vec<String>>,
        }
        let cayley = (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect();
        Raw {
            order: self.order,
            cayley,
            labels: self.labels.as_ref(),
        }
        .serialize(s)
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            cayley: Vec<Vec<usize>>,
            #[serde(default)]
            labels: Option<Vec<String>>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.cayley.len() != raw.order {
            return Err(serde::de::Error::custom("cayley table row count mismatch"));
        }
        FiniteGroup::from_table(raw.cayley, raw.labels).map_err(serde::de::Error::custom)
    }
}

impl FiniteGroup {
    /// Builds and fully validates a group from its multiplication table.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("FiniteGroup", "empty table"));
        }
        let mut cayley = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::invalid("FiniteGroup", "ragged cayley table"));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::invalid(
                        "FiniteGroup",
                        format!("element index {v} out of range"),
                    ));
                }
                cayley.push(v);
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::invalid("FiniteGroup", "label count mismatch"));
            }
        }
        let mul = |a: usize, b: usize| cayley[a * n + b];
        // identity
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::invalid("FiniteGroup", "no identity element"))?;
        // inverses
        let mut inverse = vec![0usize; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or_else(|| {
                    Error::invalid("FiniteGroup", format!("element {x} has no inverse"))
                })?;
        }
        // associativity
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::invalid(
                            "FiniteGroup",
                            format!("associativity fails at ({a}, {b}, {c})"),
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            cayley,
            identity,
            inverse,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        // [a, b] = a^-1 b^-1 a b
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn pow(&self, x: usize, e: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(vec![vec![0]], Some(vec!["e".into()])).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("FiniteGroup", "cyclic group needs n >= 1"));
        }
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteGroup::from_table(table, Some(labels))
    }

    /// Dihedral group of the given order `2m` (so `dihedral(8)` is the
    /// symmetries of the square).
    pub fn dihedral(order: usize) -> Result<Self> {
        if order < 2 || !order.is_multiple_of(2) {
            return Err(Error::invalid(
                "FiniteGroup",
                "dihedral group needs an even order >= 2",
            ));
        }
        let m = order / 2;
        let idx = |a: usize, b: usize| a + m * b;
        let mut table = vec![vec![0usize; order]; order];
        let mut labels = vec![String::new(); order];
        for a1 in 0..m {
            for b1 in 0..2 {
                labels[idx(a1, b1)] = if b1 == 0 {
                    format!("r{a1}")
                } else {
                    format!("r{a1}s")
                };
                for a2 in 0..m {
                    for b2 in 0..2 {
                        let (a3, b3) = if b1 == 0 {
                            ((a1 + a2) % m, b2)
                        } else {
                            ((a1 + m - a2 % m) % m, (1 + b2) % 2)
                        };
                        table[idx(a1, b1)][idx(a2, b2)] = idx(a3, b3);
                    }
                }
            }
        }
        FiniteGroup::from_table(table, Some(labels))
    }

    /// The quaternion group of order 8.
    pub fn quaternion8() -> Self {
        // index = 2*t + s for unit t in {1, i, j, k} and sign s
        let unit_mul = |t1: usize, t2: usize| -> (usize, usize) {
            match (t1, t2) {
                (0, t) => (t, 0),
                (t, 0) => (t, 0),
                (1, 1) => (0, 1),
                (1, 2) => (3, 0),
                (1, 3) => (2, 1),
                (2, 1) => (3, 1),
                (2, 2) => (0, 1),
                (2, 3) => (1, 0),
                (3, 1) => (2, 0),
                (3, 2) => (1, 1),
                (3, 3) => (0, 1),
                _ => unreachable!(),
            }
        };
        let n = 8;
        let mut table = vec![vec![0usize; n]; n];
        for t1 in 0..4 {
            for s1 in 0..2 {
                for t2 in 0..4 {
                    for s2 in 0..2 {
                        let (t3, extra) = unit_mul(t1, t2);
                        let s3 = (s1 + s2 + extra) % 2;
                        table[2 * t1 + s1][2 * t2 + s2] = 2 * t3 + s3;
                    }
                }
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        FiniteGroup::from_table(table, Some(labels)).expect("quaternion table")
    }

    /// Symmetric group on `k <= 4` letters, permutations in lexicographic
    /// one-line order, composition `(p * q)(x) = p(q(x))`.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k == 0 || k > 4 {
            return Err(Error::invalid("FiniteGroup", "symmetric groups up to S4 only"));
        }
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for step in 0..k {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=step {
                    let mut q = p.clone();
                    q.insert(pos, step);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let index: BTreeMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = perms.len();
        let mut table = vec![vec![0usize; n]; n];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let comp: Vec<usize> = (0..k).map(|x| p[q[x]]).collect();
                table[a][b] = index[&comp];
            }
        }
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        FiniteGroup::from_table(table, Some(labels))
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut table = vec![vec![0usize; n]; n];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        let labels = (0..a.order)
            .flat_map(|x| {
                (0..b.order)
                    .map(move |y| (x, y))
            })
            .map(|(x, y)| format!("({},{})", a.label_of(x), b.label_of(y)))
            .collect();
        FiniteGroup::from_table(table, Some(labels)).expect("product table")
    }

    pub fn center(&self) -> Subgroup {
        let elements = (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect();
        Subgroup {
            parent: self.clone(),
            elements,
        }
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Subgroup {
        let mut set = BTreeSet::new();
        set.insert(self.identity);
        let mut frontier: Vec<usize> = seed.to_vec();
        for &s in seed {
            set.insert(s);
        }
        while let Some(x) = frontier.pop() {
            let current: Vec<usize> = set.iter().cloned().collect();
            for y in current {
                for z in [self.mul(x, y), self.mul(y, x), self.inv(x)] {
                    if set.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        Subgroup {
            parent: self.clone(),
            elements: set.into_iter().collect(),
        }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            elements: (0..self.order).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            elements: vec![self.identity],
        }
    }

    pub fn subgroup_from_elements(&self, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        let sub = Subgroup {
            parent: self.clone(),
            elements,
        };
        sub.validate()?;
        Ok(sub)
    }

    /// Conjugacy class size of each element, an isomorphism invariant.
    fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::with_capacity(self.order);
        for x in 0..self.order {
            let class: BTreeSet<usize> = (0..self.order).map(|g| self.conj(g, x)).collect();
            sizes.push(class.len());
        }
        sizes
    }

    /// A small generating set, grown greedily by element index.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = self.trivial_subgroup();
        while closure.elements.len() < self.order {
            let next = (0..self.order)
                .find(|x| !closure.contains(*x))
                .expect("closure is proper");
            gens.push(next);
            closure = self.subgroup_closure(&gens);
        }
        gens
    }
}

/// A subgroup given by its sorted element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn validate(&self) -> Result<()> {
        if !self.contains(self.parent.identity()) {
            return Err(Error::invalid("Subgroup", "identity missing"));
        }
        for &a in &self.elements {
            if a >= self.parent.order() {
                return Err(Error::invalid("Subgroup", "element out of range"));
            }
            if !self.contains(self.parent.inv(a)) {
                return Err(Error::invalid("Subgroup", "not closed under inverse"));
            }
            for &b in &self.elements {
                if !self.contains(self.parent.mul(a, b)) {
                    return Err(Error::invalid("Subgroup", "not closed under product"));
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self) -> bool {
        (0..self.parent.order())
            .all(|g| self.elements.iter().all(|&x| self.contains(self.parent.conj(g, x))))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_central(&self) -> bool {
        let center = self.parent.center();
        self.elements.iter().all(|&x| center.contains(x))
    }

    /// The subgroup as an abstract group (elements reindexed in sorted
    /// order) together with the inclusion hom.
    pub fn as_group(&self) -> (FiniteGroup, FiniteHom) {
        let pos: BTreeMap<usize, usize> = self
            .elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        let m = self.elements.len();
        let mut table = vec![vec![0usize; m]; m];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i][j] = pos[&self.parent.mul(a, b)];
            }
        }
        let labels = self
            .elements
            .iter()
            .map(|&x| self.parent.label_of(x))
            .collect();
        let group = FiniteGroup::from_table(table, Some(labels)).expect("subgroup table");
        let incl = FiniteHom::new(group.clone(), self.parent.clone(), self.elements.clone())
            .expect("inclusion hom");
        (group, incl)
    }

    /// Quotient by a normal subgroup with canonical coset order (sorted by
    /// least member) and the projection hom.
    pub fn quotient(&self) -> Result<(FiniteGroup, FiniteHom)> {
        if !self.is_normal() {
            return Err(Error::NotNormal);
        }
        let g = &self.parent;
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &h in &self.elements {
                coset_of[g.mul(x, h)] = idx;
            }
        }
        let m = reps.len();
        let mut table = vec![vec![0usize; m]; m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i][j] = coset_of[g.mul(a, b)];
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", g.label_of(r))).collect();
        let q = FiniteGroup::from_table(table, Some(labels))?;
        let proj = FiniteHom::new(g.clone(), q.clone(), coset_of)?;
        Ok((q, proj))
    }

    /// Coset representatives in quotient order (least member of each coset).
    pub fn coset_reps(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &h in &self.elements {
                seen[g.mul(x, h)] = true;
            }
        }
        reps
    }
}

/// A homomorphism of finite groups, tabulated on every domain element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteHom {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    images: Vec<usize>,
}

impl FiniteHom {
    pub fn new(domain: FiniteGroup, codomain: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::Dimension("hom image table length mismatch".into()));
        }
        for &y in &images {
            if y >= codomain.order() {
                return Err(Error::invalid("FiniteHom", "image out of range"));
            }
        }
        for a in 0..domain.order() {
            for b in 0..domain.order() {
                if images[domain.mul(a, b)] != codomain.mul(images[a], images[b]) {
                    return Err(Error::invalid(
                        "FiniteHom",
                        format!("not a homomorphism at ({a}, {b})"),
                    ));
                }
            }
        }
        Ok(FiniteHom {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        FiniteHom {
            domain: g.clone(),
            codomain: g.clone(),
            images: (0..g.order()).collect(),
        }
    }

    pub fn to_trivial(g: &FiniteGroup) -> Self {
        FiniteHom {
            domain: g.clone(),
            codomain: FiniteGroup::trivial(),
            images: vec![0; g.order()],
        }
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FiniteHom) -> Result<FiniteHom> {
        if other.codomain != self.domain {
            return Err(Error::NotComposable(
                "inner codomain differs from outer domain".into(),
            ));
        }
        Ok(FiniteHom {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<usize> = self.images.iter().cloned().collect();
        set.len() == self.domain.order()
    }

    pub fn is_surjective(&self) -> bool {
        let set: BTreeSet<usize> = self.images.iter().cloned().collect();
        set.len() == self.codomain.order()
    }

    pub fn kernel_subgroup(&self) -> Subgroup {
        let e = self.codomain.identity();
        let elements = (0..self.domain.order())
            .filter(|&x| self.images[x] == e)
            .collect();
        Subgroup {
            parent: self.domain.clone(),
            elements,
        }
    }

    pub fn image_elements(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.images.iter().cloned().collect();
        set.into_iter().collect()
    }

    pub fn image_subgroup(&self) -> Subgroup {
        Subgroup {
            parent: self.codomain.clone(),
            elements: self.image_elements(),
        }
    }
}

/// Witnessed short exact sequence `I -> G -> H` of finite groups.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub i: FiniteHom,
    pub q: FiniteHom,
}

impl ShortExactSequence {
    pub fn new(i: FiniteHom, q: FiniteHom) -> Result<Self> {
        let s = ShortExactSequence { i, q };
        s.validate()?;
        Ok(s)
    }

    /// Re-verifies the witnesses by enumeration.
    pub fn validate(&self) -> Result<()> {
        if self.i.codomain() != self.q.domain() {
            return Err(Error::NotComposable(
                "inclusion codomain differs from surjection domain".into(),
            ));
        }
        if !self.i.is_injective() {
            return Err(Error::invalid("ShortExactSequence", "first map not injective"));
        }
        if !self.q.is_surjective() {
            return Err(Error::invalid(
                "ShortExactSequence",
                "second map not surjective",
            ));
        }
        if self.i.image_subgroup().elements() != self.q.kernel_subgroup().elements() {
            return Err(Error::invalid(
                "ShortExactSequence",
                "image of inclusion differs from kernel of surjection",
            ));
        }
        Ok(())
    }
}

/// Injective with image closed under conjugation by the codomain.
pub fn is_normal_inclusion(i: &FiniteHom) -> bool {
    i.is_injective() && i.image_subgroup().is_normal()
}

/// Quotient of `g` by a normal subgroup.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, FiniteHom)> {
    if n.parent() != g {
        return Err(Error::NotComposable("subgroup of a different group".into()));
    }
    n.quotient()
}

/// `Γ_0 = G`, `Γ_{i+1} = [G, Γ_i]`, computed until stable; the group is
/// nilpotent iff the last term is trivial.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![g.full_subgroup()];
    loop {
        let current = series.last().expect("nonempty");
        let mut comms = Vec::new();
        for a in 0..g.order() {
            for &x in current.elements() {
                comms.push(g.commutator(a, x));
            }
        }
        let next = g.subgroup_closure(&comms);
        if next.elements() == current.elements() {
            break;
        }
        series.push(next);
    }
    series
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    lower_central_series(g)
        .last()
        .map(|s| s.is_trivial())
        .unwrap_or(false)
}

/// Internal direct product decomposition of a finite nilpotent group into
/// its Sylow subgroups, with the reassembly isomorphism verified.
pub fn sylow_decomposition(g: &FiniteGroup) -> Result<Vec<(u64, Subgroup)>> {
    if !is_nilpotent(g) {
        return Err(Error::NotNilpotent);
    }
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    let order = BigInt::from(g.order());
    let primes = crate::arith::prime_factors(&order);
    let mut out = Vec::new();
    for p in primes {
        let p_u64: u64 = p.to_string().parse().expect("small prime");
        let members: Vec<usize> = (0..g.order())
            .filter(|&x| {
                let mut o = g.element_order(x);
                while o.is_multiple_of(p_u64 as usize) {
                    o /= p_u64 as usize;
                }
                o == 1
            })
            .collect();
        let sylow = g.subgroup_from_elements(members)?;
        out.push((p_u64, sylow));
    }
    // reassembly: multiplication from the product of the Sylow subgroups
    // must be a bijection onto g
    let sizes: usize = out.iter().map(|(_, s)| s.order()).product();
    if sizes != g.order() {
        return Err(Error::invalid(
            "sylow_decomposition",
            "sylow orders do not multiply to the group order",
        ));
    }
    let mut products = vec![g.identity()];
    for (_, s) in &out {
        let mut next = Vec::with_capacity(products.len() * s.order());
        for &x in &products {
            for &y in s.elements() {
                next.push(g.mul(x, y));
            }
        }
        products = next;
    }
    let distinct: BTreeSet<usize> = products.iter().cloned().collect();
    if distinct.len() != g.order() {
        return Err(Error::invalid(
            "sylow_decomposition",
            "multiplication map from the sylow product is not bijective",
        ));
    }
    Ok(out)
}

/// The conjugation action of `domain(q)` on the kernel of `q`: the actor
/// element `g` sends `l` to `g l g^{-1}`. This is always a normal subaction
/// of the conjugation self-action.
pub fn kernel_conjugation_action(q: &FiniteHom) -> crate::actions::GroupAction {
    use crate::actions::{Automorphism, GroupAction, GroupTarget};
    let g = q.domain();
    let ker = q.kernel_subgroup();
    let elems = ker.elements().to_vec();
    let (k_grp, _) = ker.as_group();
    let autos = (0..g.order())
        .map(|a| {
            Automorphism::Perm(
                elems
                    .iter()
                    .map(|&l| {
                        let moved = g.conj(a, l);
                        elems
                            .binary_search(&moved)
                            .expect("kernel is closed under conjugation")
                    })
                    .collect(),
            )
        })
        .collect();
    GroupAction::new(g.clone(), GroupTarget::Finite(k_grp), autos)
        .expect("kernel conjugation action is a valid action")
}

/// A short exact sequence is a central extension iff the kernel
/// conjugation action is trivial, i.e. the kernel lies in the center.
pub fn is_central_extension(s: &ShortExactSequence) -> bool {
    kernel_conjugation_action(&s.q).is_trivial()
}

/// Exhaustive backtracking isomorphism search with order/class pruning.
/// Returns a verified isomorphism or `None`; errors above the order bound.
pub fn are_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Option<FiniteHom>> {
    let bound = max_group_order();
    if g1.order() > bound || g2.order() > bound {
        return Err(Error::OrderBound {
            order: g1.order().max(g2.order()),
            bound,
        });
    }
    if g1.order() != g2.order() {
        return Ok(None);
    }
    let mut orders1: Vec<usize> = (0..g1.order()).map(|x| g1.element_order(x)).collect();
    let mut orders2: Vec<usize> = (0..g2.order()).map(|x| g2.element_order(x)).collect();
    let raw_orders2 = orders2.clone();
    orders1.sort_unstable();
    orders2.sort_unstable();
    if orders1 != orders2 {
        return Ok(None);
    }
    let mut classes1 = g1.class_sizes();
    let classes2_raw = g2.class_sizes();
    let mut classes2 = classes2_raw.clone();
    classes1.sort_unstable();
    classes2.sort_unstable();
    if classes1 != classes2 {
        return Ok(None);
    }

    let gens = g1.generating_set();
    let classes1_raw = g1.class_sizes();
    // generator images extend deterministically by breadth-first closure
    let mut search = IsoSearch {
        g1,
        g2,
        gens: &gens,
        gen_orders: gens.iter().map(|&x| g1.element_order(x)).collect(),
        gen_classes: gens.iter().map(|&x| classes1_raw[x]).collect(),
        orders2: raw_orders2,
        classes2: classes2_raw,
    };
    Ok(search.run())
}

struct IsoSearch<'a> {
    g1: &'a FiniteGroup,
    g2: &'a FiniteGroup,
    gens: &'a [usize],
    gen_orders: Vec<usize>,
    gen_classes: Vec<usize>,
    orders2: Vec<usize>,
    classes2: Vec<usize>,
}

impl IsoSearch<'_> {
    fn run(&mut self) -> Option<FiniteHom> {
        let mut images = Vec::new();
        self.extend(&mut images)
    }

    fn extend(&mut self, images: &mut Vec<usize>) -> Option<FiniteHom> {
        if images.len() == self.gens.len() {
            return self.build(images);
        }
        let i = images.len();
        for cand in 0..self.g2.order() {
            if self.orders2[cand] != self.gen_orders[i] || self.classes2[cand] != self.gen_classes[i]
            {
                continue;
            }
            images.push(cand);
            if self.partial_consistent(images) {
                if let Some(found) = self.extend(images) {
                    return Some(found);
                }
            }
            images.pop();
        }
        None
    }

    /// Builds the partial map on the subgroup generated by the assigned
    /// generators and checks it is a well-defined injective hom.
    fn partial_map(&self, images: &[usize]) -> Option<Vec<Option<usize>>> {
        let mut map: Vec<Option<usize>> = vec![None; self.g1.order()];
        map[self.g1.identity()] = Some(self.g2.identity());
        let mut frontier = vec![self.g1.identity()];
        while let Some(x) = frontier.pop() {
            let fx = map[x].expect("frontier is mapped");
            for (k, &gen) in self.gens.iter().take(images.len()).enumerate() {
                let y = self.g1.mul(x, gen);
                let fy = self.g2.mul(fx, images[k]);
                match map[y] {
                    None => {
                        map[y] = Some(fy);
                        frontier.push(y);
                    }
                    Some(existing) => {
                        if existing != fy {
                            return None;
                        }
                    }
                }
            }
        }
        Some(map)
    }

    fn partial_consistent(&self, images: &[usize]) -> bool {
        let Some(map) = self.partial_map(images) else {
            return false;
        };
        // injectivity and the hom law on the mapped subgroup
        let mapped: Vec<usize> = (0..self.g1.order()).filter(|&x| map[x].is_some()).collect();
        let mut seen = BTreeSet::new();
        for &x in &mapped {
            if !seen.insert(map[x].expect("mapped")) {
                return false;
            }
        }
        for &a in &mapped {
            for &b in &mapped {
                let ab = self.g1.mul(a, b);
                if let Some(fab) = map[ab] {
                    if fab != self.g2.mul(map[a].unwrap(), map[b].unwrap()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn build(&self, images: &[usize]) -> Option<FiniteHom> {
        let map = self.partial_map(images)?;
        let full: Option<Vec<usize>> = map.into_iter().collect();
        let images = full?;
        let distinct: BTreeSet<usize> = images.iter().cloned().collect();
        if distinct.len() != self.g1.order() {
            return None;
        }
        FiniteHom::new(self.g1.clone(), self.g2.clone(), images).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_validate() {
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(12).unwrap(),
            FiniteGroup::dihedral(8).unwrap(),
            FiniteGroup::quaternion8(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(2).unwrap(),
                &FiniteGroup::cyclic(3).unwrap(),
            ),
        ] {
            // from_table re-validates the full axioms
            let table: Vec<Vec<usize>> = (0..g.order())
                .map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect())
                .collect();
            FiniteGroup::from_table(table, None).unwrap();
        }
    }

    #[test]
    fn quaternion_center_and_quotient() {
        let q8 = FiniteGroup::quaternion8();
        let center = q8.center();
        assert_eq!(center.elements(), &[0, 1]); // {1, -1}
        let (v4, proj) = center.quotient().unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
        assert!((0..v4.order()).all(|x| x == v4.identity() || v4.element_order(x) == 2));
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel_subgroup().elements(), center.elements());
        // the quotient is the Klein four group
        let klein = FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2).unwrap(),
            &FiniteGroup::cyclic(2).unwrap(),
        );
        assert!(are_isomorphic(&v4, &klein).unwrap().is_some());
    }

    #[test]
    fn normal_inclusion_examples() {
        let q8 = FiniteGroup::quaternion8();
        let (_, incl) = q8.center().as_group();
        assert!(is_normal_inclusion(&incl));

        // any inclusion into an abelian codomain
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let (_, incl) = z6.subgroup_closure(&[2]).as_group();
        assert!(is_normal_inclusion(&incl));

        // <(1 2)> in S3 is not normal
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let transposition = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let (_, incl) = s3.subgroup_closure(&[transposition]).as_group();
        assert!(!is_normal_inclusion(&incl));
    }

    #[test]
    fn quotient_identity_cases() {
        let g = FiniteGroup::dihedral(8).unwrap();
        let (q, _) = g.trivial_subgroup().quotient().unwrap();
        assert!(are_isomorphic(&q, &g).unwrap().is_some());
        let (q, _) = g.full_subgroup().quotient().unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn lower_central_series_examples() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let s = lower_central_series(&z6);
        assert_eq!(s.len(), 2);
        assert!(s[1].is_trivial());

        let q8 = FiniteGroup::quaternion8();
        let s = lower_central_series(&q8);
        assert_eq!(s.len(), 3);
        assert_eq!(s[1].elements(), &[0, 1]);
        assert!(s[2].is_trivial());

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let s = lower_central_series(&s3);
        assert_eq!(s.last().unwrap().order(), 3); // A3
        assert!(!is_nilpotent(&s3));
        assert!(is_nilpotent(&z6));
        assert!(is_nilpotent(&q8));
    }

    #[test]
    fn lcs_terms_are_central_series() {
        // successive quotients are central in the corresponding quotient
        for g in [
            FiniteGroup::quaternion8(),
            FiniteGroup::dihedral(8).unwrap(),
            FiniteGroup::cyclic(12).unwrap(),
        ] {
            let series = lower_central_series(&g);
            assert!(series.last().unwrap().is_trivial());
            for i in 1..series.len() {
                let (q, proj) = series[i].quotient().unwrap();
                let image: Vec<usize> = series[i - 1]
                    .elements()
                    .iter()
                    .map(|&x| proj.apply(x))
                    .collect();
                let sub = q.subgroup_from_elements(image).unwrap();
                assert!(sub.is_central(), "Γ_{}/Γ_{} not central", i - 1, i);
            }
        }
    }

    #[test]
    fn sylow_examples() {
        let z12 = FiniteGroup::cyclic(12).unwrap();
        let dec = sylow_decomposition(&z12).unwrap();
        let summary: Vec<(u64, usize)> = dec.iter().map(|(p, s)| (*p, s.order())).collect();
        assert_eq!(summary, vec![(2, 4), (3, 3)]);

        let q8 = FiniteGroup::quaternion8();
        let dec = sylow_decomposition(&q8).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].0, 2);
        assert!(dec[0].1.is_full());

        assert!(sylow_decomposition(&FiniteGroup::trivial()).unwrap().is_empty());
        assert!(sylow_decomposition(&FiniteGroup::symmetric(3).unwrap()).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let z2xz3 = FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2).unwrap(),
            &FiniteGroup::cyclic(3).unwrap(),
        );
        let iso = are_isomorphic(&z6, &z2xz3).unwrap().unwrap();
        assert!(iso.is_injective() && iso.is_surjective());

        let q8 = FiniteGroup::quaternion8();
        let d4 = FiniteGroup::dihedral(8).unwrap();
        assert!(are_isomorphic(&q8, &d4).unwrap().is_none());

        let id = are_isomorphic(&d4, &d4).unwrap().unwrap();
        assert!(id.is_injective());
    }

    #[test]
    fn iso_respects_order_bound() {
        std::env::set_var("NILFRACT_MAX_ORDER", "4");
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert!(are_isomorphic(&z6, &z6).is_err());
        std::env::remove_var("NILFRACT_MAX_ORDER");
        assert!(are_isomorphic(&z6, &z6).unwrap().is_some());
    }

    #[test]
    fn short_exact_sequence_witnesses() {
        let q8 = FiniteGroup::quaternion8();
        let (_, incl) = q8.center().as_group();
        let (_, proj) = q8.center().quotient().unwrap();
        let ses = ShortExactSequence::new(incl, proj).unwrap();
        ses.validate().unwrap();
    }

    #[test]
    fn json_roundtrip() {
        let g = FiniteGroup::dihedral(8).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back: FiniteGroup = serde_json::from_str(&text).unwrap();
        assert_eq!(g, back);
        // corrupted tables are rejected
        let bad = r#"{"order": 2, "cayley": [[0, 1], [1, 1]]}"#;
        assert!(serde_json::from_str::<FiniteGroup>(bad).is_err());
    }
}

