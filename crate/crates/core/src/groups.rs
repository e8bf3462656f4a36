//! Finite-group conjugacy machinery: classes, centralizer orders, power maps
//! on classes, Frobenius-stable classes, and the symmetric-group
//! specialization by cycle type.
//!
//! Two models implement the same [`ClassSystem`] interface and are
//! interchangeable everywhere downstream:
//! - [`PermGroup`]: a group materialized from permutation generators by
//!   closure (bounded order), with classes computed by exhaustive
//!   conjugation;
//! - [`SnClasses`]: the symmetric group `S_n` described purely by cycle
//!   types, avoiding the `n!` element enumeration.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::partitions::{enumerate_partitions, Partition};

/// Default cap on the order of an explicitly materialized group.
pub const DEFAULT_GROUP_BOUND: usize = 10_000;

/// Cap on `n` for the cycle-type model of `S_n` (`n!` must fit in `u128`).
pub const MAX_SN: u32 = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the configured bound {bound}")]
    GroupTooLarge { bound: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("symmetric group bound exceeded: n = {0} > {MAX_SN}")]
    SnTooLarge(u32),
    #[error("degree must be positive")]
    ZeroDegree,
}

/// A permutation of `{0, .., n-1}` stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n).collect() }
    }

    /// Validates that `images` is a bijection of `{0, .., n-1}`.
    pub fn new(images: Vec<usize>) -> Result<Perm, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Builds from disjoint-or-not cycles over `{0, .., n-1}`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm, GroupError> {
        let mut p = Perm::identity(n);
        for cycle in cycles {
            let mut q = Perm::identity(n);
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a >= n || b >= n {
                    return Err(GroupError::InvalidPermutation(format!("cycle {cycle:?}")));
                }
                q.images[a] = b;
            }
            Perm::new(q.images.clone())?;
            p = q.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base.clone());
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle lengths sorted decreasingly (fixed points included).
    pub fn cycle_lengths(&self) -> Vec<u32> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .iter()
            .fold(1u64, |acc, &l| num::integer::lcm(acc, l as u64))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// Conjugacy-class data common to both group models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    /// Index of the representative element (explicit model) or of the class
    /// itself (cycle-type model).
    pub repr: usize,
    pub size: u128,
    pub centralizer_order: u128,
    /// Order of the class representative.
    pub repr_order: u64,
}

/// Conjugacy-class view of a finite group: everything the mass computations
/// need, independent of how the group is stored.
pub trait ClassSystem: Send + Sync {
    fn order(&self) -> u128;
    /// The exponent of the group (lcm of element orders); power maps and
    /// Frobenius stability only see `q` modulo this.
    fn exponent(&self) -> u64;
    fn class_count(&self) -> usize;
    fn class(&self, c: usize) -> &ConjClass;
    fn identity_class(&self) -> usize;
    /// The class of `g^k` for `g` in class `c` (well defined).
    fn power_class(&self, c: usize, k: u64) -> usize;
    fn class_label(&self, c: usize) -> String;
    /// Human-readable group description, used in reports.
    fn describe(&self) -> String;
}

/// The subset of classes with `[g] = [g^q]`; depends only on
/// `q mod exponent`. Returned in class-index order.
pub fn frobenius_stable_classes(model: &dyn ClassSystem, q: u64) -> Vec<usize> {
    let k = q % model.exponent();
    (0..model.class_count())
        .filter(|&c| model.power_class(c, k) == c)
        .collect()
}

/// `#{(g, h) : h g h^{-1} = g^q}`, via the class sum
/// `sum_{[g] stable} size([g]) * centralizer([g])`.
pub fn frobenius_pair_count(model: &dyn ClassSystem, q: u64) -> u128 {
    frobenius_stable_classes(model, q)
        .iter()
        .map(|&c| {
            let cl = model.class(c);
            cl.size * cl.centralizer_order
        })
        .sum()
}

/// A finite permutation group materialized by closure from generators.
///
/// Elements are sorted lexicographically after closure, so indices (and the
/// minimal-index class representatives) are canonical regardless of generator
/// order. Index 0 is always the identity.
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    exponent: u64,
    name: String,
}

impl PermGroup {
    pub fn from_generators(
        degree: usize,
        generators: Vec<Perm>,
        bound: usize,
    ) -> Result<PermGroup, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator degree {} differs from group degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(elements[0].clone(), ());
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in &generators {
                let next = g.compose(&current);
                if !seen.contains_key(&next) {
                    if elements.len() >= bound {
                        return Err(GroupError::GroupTooLarge { bound });
                    }
                    seen.insert(next.clone(), ());
                    elements.push(next);
                }
            }
        }
        elements.sort_unstable();
        let index: HashMap<Perm, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        debug_assert!(elements[0].is_identity());

        // Spot-check the group laws: closure under inverse comes with the
        // closure construction only when every generator's inverse is
        // reachable, which holds for finite closures; verify anyway.
        for g in &generators {
            debug_assert!(index.contains_key(&g.inverse()));
        }

        let order = elements.len() as u128;
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        let gens: Vec<Perm> = generators.clone();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let class_idx = classes.len();
            let mut members = vec![start];
            class_of[start] = class_idx;
            let mut frontier = 0;
            while frontier < members.len() {
                let e = elements[members[frontier]].clone();
                frontier += 1;
                for g in &gens {
                    let conj = g.compose(&e).compose(&g.inverse());
                    let idx = index[&conj];
                    if class_of[idx] == usize::MAX {
                        class_of[idx] = class_idx;
                        members.push(idx);
                    }
                }
            }
            let size = members.len() as u128;
            classes.push(ConjClass {
                repr: start,
                size,
                centralizer_order: order / size,
                repr_order: elements[start].order(),
            });
        }
        let exponent = elements
            .iter()
            .fold(1u64, |acc, p| num::integer::lcm(acc, p.order()));
        Ok(PermGroup {
            degree,
            elements,
            index,
            classes,
            class_of,
            exponent,
            name: format!("perm group of degree {degree}"),
        })
    }

    /// The symmetric group `S_n` acting on `n` points.
    pub fn symmetric(n: usize, bound: usize) -> Result<PermGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroDegree);
        }
        let gens = if n == 1 {
            vec![Perm::identity(1)]
        } else {
            let transposition = Perm::from_cycles(n, &[vec![0, 1]])?;
            let cycle = Perm::from_cycles(n, &[(0..n).collect()])?;
            vec![transposition, cycle]
        };
        let mut g = PermGroup::from_generators(n, gens, bound)?;
        g.name = format!("S{n}");
        Ok(g)
    }

    /// The cyclic group of order `l` as the closure of one `l`-cycle.
    pub fn cyclic(l: usize, bound: usize) -> Result<PermGroup, GroupError> {
        if l == 0 {
            return Err(GroupError::ZeroDegree);
        }
        let gen = Perm::from_cycles(l, &[(0..l).collect()])?;
        let mut g = PermGroup::from_generators(l, vec![gen], bound)?;
        g.name = format!("C{l}");
        Ok(g)
    }

    /// The dihedral group of order `2n` acting on `n` points.
    pub fn dihedral(n: usize, bound: usize) -> Result<PermGroup, GroupError> {
        if n < 3 {
            return Err(GroupError::InvalidPermutation("dihedral needs n >= 3".into()));
        }
        let rotation = Perm::from_cycles(n, &[(0..n).collect()])?;
        let reflection = Perm::new((0..n).map(|i| (n - i) % n).collect())?;
        let mut g = PermGroup::from_generators(n, vec![rotation, reflection], bound)?;
        g.name = format!("D{n}");
        Ok(g)
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(a: &PermGroup, b: &PermGroup, bound: usize) -> Result<PermGroup, GroupError> {
        let degree = a.degree + b.degree;
        let mut gens = Vec::new();
        for g in a.generator_like_elements() {
            let mut images: Vec<usize> = g.images.clone();
            images.extend(a.degree..degree);
            gens.push(Perm::new(images)?);
        }
        for g in b.generator_like_elements() {
            let mut images: Vec<usize> = (0..a.degree).collect();
            images.extend(g.images.iter().map(|&i| i + a.degree));
            gens.push(Perm::new(images)?);
        }
        let mut g = PermGroup::from_generators(degree, gens, bound)?;
        g.name = format!("{} x {}", a.name, b.name);
        Ok(g)
    }

    // All elements work as a generating set; cheap and correct for the small
    // groups direct products are used with.
    fn generator_like_elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn element_index(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn class_of_element(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }
}

impl ClassSystem for PermGroup {
    fn order(&self) -> u128 {
        self.elements.len() as u128
    }

    fn exponent(&self) -> u64 {
        self.exponent
    }

    fn class_count(&self) -> usize {
        self.classes.len()
    }

    fn class(&self, c: usize) -> &ConjClass {
        &self.classes[c]
    }

    fn identity_class(&self) -> usize {
        self.class_of[0]
    }

    fn power_class(&self, c: usize, k: u64) -> usize {
        let repr = self.elements[self.classes[c].repr].pow(k);
        self.class_of[self.index[&repr]]
    }

    fn class_label(&self, c: usize) -> String {
        format!("g{}", self.classes[c].repr)
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// `S_n` by cycle type: one class per partition of `n`, with
/// `centralizer = z_lambda = prod_i i^{m_i} m_i!` and `size = n!/z_lambda`.
pub struct SnClasses {
    n: u32,
    types: Vec<Partition>,
    type_index: HashMap<Vec<u32>, usize>,
    classes: Vec<ConjClass>,
    exponent: u64,
}

impl SnClasses {
    pub fn new(n: u32) -> Result<SnClasses, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroDegree);
        }
        if n > MAX_SN {
            return Err(GroupError::SnTooLarge(n));
        }
        let factorial: u128 = (1..=n as u128).product();
        let types = enumerate_partitions(n);
        let mut classes = Vec::with_capacity(types.len());
        let mut type_index = HashMap::new();
        for (i, t) in types.iter().enumerate() {
            let z: u128 = t
                .multiplicities()
                .iter()
                .map(|&(part, mult)| {
                    let mut v: u128 = 1;
                    for _ in 0..mult {
                        v *= part as u128;
                    }
                    (1..=mult as u128).product::<u128>() * v
                })
                .product();
            let repr_order = t
                .parts()
                .iter()
                .fold(1u64, |acc, &p| num::integer::lcm(acc, p as u64));
            classes.push(ConjClass {
                repr: i,
                size: factorial / z,
                centralizer_order: z,
                repr_order,
            });
            type_index.insert(t.parts().to_vec(), i);
        }
        let exponent = (1..=n as u64).fold(1u64, num::integer::lcm);
        Ok(SnClasses { n, types, type_index, classes, exponent })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cycle_type(&self, c: usize) -> &Partition {
        &self.types[c]
    }

    pub fn class_of_type(&self, t: &Partition) -> Option<usize> {
        self.type_index.get(t.parts()).copied()
    }
}

impl ClassSystem for SnClasses {
    fn order(&self) -> u128 {
        (1..=self.n as u128).product()
    }

    fn exponent(&self) -> u64 {
        self.exponent
    }

    fn class_count(&self) -> usize {
        self.classes.len()
    }

    fn class(&self, c: usize) -> &ConjClass {
        &self.classes[c]
    }

    fn identity_class(&self) -> usize {
        // The all-ones partition is last in lexicographic descending order.
        self.classes.len() - 1
    }

    fn power_class(&self, c: usize, k: u64) -> usize {
        // A cycle of length c taken to the k-th power splits into gcd(c, k)
        // cycles of length c/gcd(c, k); k = 0 yields the identity type.
        let mut parts: Vec<u32> = Vec::new();
        for &len in self.types[c].parts() {
            let g = num::integer::gcd(len as u64, k) as u32;
            let g = if k == 0 { len } else { g };
            for _ in 0..g {
                parts.push(len / g);
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        self.type_index[&parts]
    }

    fn class_label(&self, c: usize) -> String {
        self.types[c].to_string()
    }

    fn describe(&self) -> String {
        format!("S{} (cycle types)", self.n)
    }
}

/// One entry per partition of `n`: `(cycle type, class size, centralizer)`.
pub fn sn_classes(n: u32) -> Result<Vec<(Partition, u128, u128)>, GroupError> {
    let model = SnClasses::new(n)?;
    Ok((0..model.class_count())
        .map(|c| {
            let cl = model.class(c);
            (model.cycle_type(c).clone(), cl.size, cl.centralizer_order)
        })
        .collect())
}
