//! Per-class eigenvalue data of tame representations, the counting functions
//! computable from it, conductors from ramification filtrations, and the
//! wild cyclic Jordan-block closed forms.
//!
//! A [`TameRep`] stores, for each conjugacy class with representative of
//! order `l`, the multiset of exponents `a/l` (with `0 <= a < l`) of the
//! eigenvalues of the class representative as powers of a primitive `l`-th
//! root of unity. Every tame counting function in this crate depends only on
//! this data, so no cyclotomic arithmetic is ever needed.

use std::collections::HashMap;
use std::sync::Arc;

use num::traits::{One, Signed, Zero};
use thiserror::Error;

use crate::groups::{ClassSystem, GroupError, Perm, PermGroup, SnClasses};
use crate::qlaurent::{rat_int, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepsError {
    #[error("representations live over different groups")]
    GroupMismatch,
    #[error("the assignment on generators does not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("the given elements do not generate the group")]
    DoesNotGenerate,
    #[error("invalid eigenvalue data: {0}")]
    InvalidEigenData(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn frac_mod1(x: &Rat) -> Rat {
    x - x.floor()
}

fn same_model(a: &Arc<dyn ClassSystem>, b: &Arc<dyn ClassSystem>) -> bool {
    std::ptr::addr_eq(Arc::as_ptr(a), Arc::as_ptr(b))
}

/// Eigenvalue-exponent data of a representation, per conjugacy class.
#[derive(Clone)]
pub struct TameRep {
    model: Arc<dyn ClassSystem>,
    dim: usize,
    /// For each class: a sorted multiset of `dim` reduced fractions in
    /// `[0, 1)` whose denominators divide the representative's order.
    eigen: Vec<Vec<Rat>>,
}

impl TameRep {
    /// Validates and wraps raw per-class exponent multisets.
    pub fn from_eigen(
        model: Arc<dyn ClassSystem>,
        dim: usize,
        mut eigen: Vec<Vec<Rat>>,
    ) -> Result<TameRep, RepsError> {
        if eigen.len() != model.class_count() {
            return Err(RepsError::InvalidEigenData(format!(
                "{} classes but {} exponent multisets",
                model.class_count(),
                eigen.len()
            )));
        }
        for (c, multiset) in eigen.iter_mut().enumerate() {
            if multiset.len() != dim {
                return Err(RepsError::InvalidEigenData(format!(
                    "class {c} has {} exponents, expected {dim}",
                    multiset.len()
                )));
            }
            multiset.sort_unstable();
            let l = model.class(c).repr_order;
            for x in multiset.iter() {
                if x.is_negative() || *x >= Rat::one() {
                    return Err(RepsError::InvalidEigenData(format!(
                        "exponent {x} outside [0, 1) in class {c}"
                    )));
                }
                if l % denom_to_u64(x) != 0 {
                    return Err(RepsError::InvalidEigenData(format!(
                        "exponent {x} has denominator not dividing the class order {l}"
                    )));
                }
            }
        }
        let identity = model.identity_class();
        if eigen[identity].iter().any(|x| !x.is_zero()) {
            return Err(RepsError::InvalidEigenData(
                "identity class must have all exponents zero".into(),
            ));
        }
        let rep = TameRep { model, dim, eigen };
        rep.check_power_stability()?;
        Ok(rep)
    }

    /// Eigen data of a class must be stable under the power maps fixing the
    /// class: replacing each `a/l` by `k a/l mod 1` for `[g^k] = [g]`
    /// permutes the multiset. Exhaustive for small representative orders,
    /// spot-checked beyond that.
    fn check_power_stability(&self) -> Result<(), RepsError> {
        for c in 0..self.model.class_count() {
            let l = self.model.class(c).repr_order;
            let ks: Vec<u64> = if l <= 64 {
                (2..l).collect()
            } else {
                vec![2, 3, 5, 7, l - 1]
            };
            for k in ks {
                if self.model.power_class(c, k) != c {
                    continue;
                }
                let mut powered: Vec<Rat> = self.eigen[c]
                    .iter()
                    .map(|x| frac_mod1(&(x * rat_int(k as i64))))
                    .collect();
                powered.sort_unstable();
                if powered != self.eigen[c] {
                    return Err(RepsError::InvalidEigenData(format!(
                        "class {c} eigen data not stable under the power map k = {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn model(&self) -> &Arc<dyn ClassSystem> {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigen_exponents(&self, class: usize) -> &[Rat] {
        &self.eigen[class]
    }

    /// The permutation representation defined by an action of the group,
    /// given as images of generating elements. The assignment is checked to
    /// extend to a homomorphism and to cover the whole group.
    pub fn permutation_rep(
        group: &Arc<PermGroup>,
        gen_images: &[(Perm, Perm)],
    ) -> Result<TameRep, RepsError> {
        let n = match gen_images.first() {
            Some((_, img)) => img.degree(),
            None => return Err(RepsError::DoesNotGenerate),
        };
        if gen_images.iter().any(|(_, img)| img.degree() != n) {
            return Err(RepsError::InvalidEigenData(
                "action images have inconsistent degrees".into(),
            ));
        }
        let images = homomorphism_graph(group, gen_images)?;
        let model: Arc<dyn ClassSystem> = group.clone();
        let eigen = (0..model.class_count())
            .map(|c| {
                let repr = group.class(c).repr;
                cycle_exponents(&images[&repr])
            })
            .collect();
        TameRep::from_eigen(model, n, eigen)
    }

    /// The tautological action of a permutation group on its points.
    pub fn natural_rep(group: &Arc<PermGroup>) -> Result<TameRep, RepsError> {
        let model: Arc<dyn ClassSystem> = group.clone();
        let eigen = (0..group.class_count())
            .map(|c| cycle_exponents(group.element(group.class(c).repr)))
            .collect();
        TameRep::from_eigen(model, group.degree(), eigen)
    }

    /// The defining representation of `S_n` in the cycle-type model: the
    /// class of type `lambda` contributes `{0/c, .., (c-1)/c}` per part `c`.
    pub fn defining_rep(sn: &Arc<SnClasses>) -> Result<TameRep, RepsError> {
        let model: Arc<dyn ClassSystem> = sn.clone();
        let n = sn.n() as usize;
        let eigen = (0..sn.class_count())
            .map(|c| {
                let mut exps = Vec::with_capacity(n);
                for &len in sn.cycle_type(c).parts() {
                    for a in 0..len {
                        exps.push(Rat::new((a as i64).into(), (len as i64).into()));
                    }
                }
                exps
            })
            .collect();
        TameRep::from_eigen(model, n, eigen)
    }

    /// The regular representation: left translation by a class
    /// representative of order `l` decomposes into `|G|/l` cycles of length
    /// `l`. Restricted to groups of order at most 10^4.
    pub fn regular_rep(model: &Arc<dyn ClassSystem>) -> Result<TameRep, RepsError> {
        let order = model.order();
        if order > 10_000 {
            return Err(RepsError::Domain(format!(
                "regular representation of a group of order {order} is too large"
            )));
        }
        let n = order as usize;
        let eigen = (0..model.class_count())
            .map(|c| {
                let l = model.class(c).repr_order;
                let copies = n / l as usize;
                let mut exps = Vec::with_capacity(n);
                for a in 0..l {
                    let x = Rat::new((a as i64).into(), (l as i64).into());
                    for _ in 0..copies {
                        exps.push(x.clone());
                    }
                }
                exps
            })
            .collect();
        TameRep::from_eigen(model.clone(), n, eigen)
    }

    /// The trivial representation of the given dimension.
    pub fn trivial_rep(model: &Arc<dyn ClassSystem>, dim: usize) -> Result<TameRep, RepsError> {
        let eigen = vec![vec![Rat::zero(); dim]; model.class_count()];
        TameRep::from_eigen(model.clone(), dim, eigen)
    }

    /// A diagonal representation of a cyclic group, specified by the
    /// eigenvalue exponents of a fixed generator.
    pub fn diagonal_rep(group: &Arc<PermGroup>, exps: &[Rat]) -> Result<TameRep, RepsError> {
        let order = group.order() as u64;
        let generator = (0..group.elements().len())
            .find(|&i| group.element(i).order() == order)
            .ok_or_else(|| RepsError::Domain("group is not cyclic".into()))?;
        let exps: Vec<Rat> = exps.iter().map(frac_mod1).collect();
        for x in &exps {
            if order % denom_to_u64(x) != 0 {
                return Err(RepsError::InvalidEigenData(format!(
                    "exponent {x} has denominator not dividing the group order {order}"
                )));
            }
        }
        let mut eigen = vec![Vec::new(); group.class_count()];
        let mut g = Perm::identity(group.degree());
        for k in 0..order {
            let idx = group
                .element_index(&g)
                .expect("powers of a group element stay in the group");
            let class = group.class_of_element(idx);
            if eigen[class].is_empty() {
                eigen[class] = exps
                    .iter()
                    .map(|x| frac_mod1(&(x * rat_int(k as i64))))
                    .collect();
            }
            g = group.element(generator).compose(&g);
        }
        TameRep::from_eigen(group.clone(), exps.len(), eigen)
    }

    /// Multiset union of exponent data; both summands must live over the
    /// same group instance.
    pub fn direct_sum(&self, other: &TameRep) -> Result<TameRep, RepsError> {
        if !same_model(&self.model, &other.model) {
            return Err(RepsError::GroupMismatch);
        }
        let eigen = self
            .eigen
            .iter()
            .zip(&other.eigen)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        TameRep::from_eigen(self.model.clone(), self.dim + other.dim, eigen)
    }

    /// The dual representation: every exponent is negated mod 1.
    pub fn dual(&self) -> TameRep {
        let eigen: Vec<Vec<Rat>> = self
            .eigen
            .iter()
            .map(|multiset| {
                let mut out: Vec<Rat> = multiset.iter().map(|x| frac_mod1(&(-x))).collect();
                out.sort_unstable();
                out
            })
            .collect();
        TameRep { model: self.model.clone(), dim: self.dim, eigen }
    }

    /// `tau . phi` for a homomorphism `phi` from `sub` into the group this
    /// representation lives over, given by images of generating elements of
    /// `sub`.
    pub fn pullback(
        &self,
        sub: &Arc<PermGroup>,
        target: &Arc<PermGroup>,
        gen_images: &[(Perm, Perm)],
    ) -> Result<TameRep, RepsError> {
        let target_model: Arc<dyn ClassSystem> = target.clone();
        if !same_model(&self.model, &target_model) {
            return Err(RepsError::GroupMismatch);
        }
        let images = homomorphism_graph(sub, gen_images)?;
        for img in images.values() {
            if target.element_index(img).is_none() {
                return Err(RepsError::NotAHomomorphism);
            }
        }
        let eigen = (0..sub.class_count())
            .map(|c| {
                let repr = sub.class(c).repr;
                let img_idx = target
                    .element_index(&images[&repr])
                    .expect("images checked above");
                self.eigen[target.class_of_element(img_idx)].clone()
            })
            .collect();
        TameRep::from_eigen(sub.clone(), self.dim, eigen)
    }

    /// The weight of the class: with eigenvalues written as `zeta^{b}` for
    /// `1 <= b <= l`, this is `n - (1/l) sum b`. Zero exponents contribute
    /// `b = l`.
    pub fn age_weight(&self, class: usize) -> Rat {
        let mut sum = Rat::zero();
        for x in &self.eigen[class] {
            sum += if x.is_zero() { Rat::one() } else { x.clone() };
        }
        rat_int(self.dim as i64) - sum
    }

    /// The tuning-module valuation of the class: `(1/l) sum a` over
    /// exponents `a/l` with `0 <= a < l`.
    pub fn v_tame(&self, class: usize) -> Rat {
        let mut sum = Rat::zero();
        for x in &self.eigen[class] {
            sum += x.clone();
        }
        sum
    }

    /// The tame Artin conductor of the class: the codimension of the fixed
    /// space of the inertia generator, i.e. the number of nonzero exponents.
    /// In the tame case this also equals the tame part and the residual tame
    /// part, and the Swan conductor vanishes.
    pub fn artin_tame(&self, class: usize) -> u64 {
        self.eigen[class].iter().filter(|x| !x.is_zero()).count() as u64
    }

    /// True iff every class's exponent multiset is invariant under negation
    /// mod 1 (every non-real eigenvalue is paired with its inverse).
    pub fn is_balanced(&self) -> bool {
        self.eigen.iter().all(|multiset| {
            let mut negated: Vec<Rat> = multiset.iter().map(|x| frac_mod1(&(-x))).collect();
            negated.sort_unstable();
            negated == *multiset
        })
    }

    /// True iff some non-identity class fixes a subspace of codimension at
    /// most one, i.e. has at least `n - 1` zero exponents. Meaningful for
    /// representations that are faithful on the provided classes.
    pub fn has_pseudo_reflection(&self) -> bool {
        let identity = self.model.identity_class();
        (0..self.eigen.len()).any(|c| c != identity && self.artin_tame(c) <= 1)
    }
}

fn denom_to_u64(x: &Rat) -> u64 {
    use num::traits::ToPrimitive;
    x.denom().to_u64().expect("exponent denominator fits u64")
}

/// Eigenvalue exponents of a permutation matrix: each cycle of length `c`
/// contributes `{0/c, 1/c, .., (c-1)/c}`.
fn cycle_exponents(p: &Perm) -> Vec<Rat> {
    let mut exps = Vec::with_capacity(p.degree());
    for len in p.cycle_lengths() {
        for a in 0..len {
            exps.push(Rat::new((a as i64).into(), (len as i64).into()));
        }
    }
    exps
}

/// Extends an assignment on generating elements to the whole group, as a map
/// from element index to image permutation. Fails if the assignment is
/// inconsistent (not a homomorphism) or the elements do not generate.
fn homomorphism_graph(
    group: &PermGroup,
    gen_images: &[(Perm, Perm)],
) -> Result<HashMap<usize, Perm>, RepsError> {
    if gen_images.is_empty() {
        return Err(RepsError::DoesNotGenerate);
    }
    let image_degree = gen_images[0].1.degree();
    for (g, _) in gen_images {
        if group.element_index(g).is_none() {
            return Err(RepsError::Domain(format!(
                "generator {g} is not an element of the group"
            )));
        }
    }
    let mut images: HashMap<usize, Perm> = HashMap::new();
    let id_idx = group
        .element_index(&Perm::identity(group.degree()))
        .expect("identity is in the group");
    images.insert(id_idx, Perm::identity(image_degree));
    let mut frontier = vec![id_idx];
    while let Some(current) = frontier.pop() {
        let current_perm = group.element(current).clone();
        let current_image = images[&current].clone();
        for (g, img) in gen_images {
            let next = g.compose(&current_perm);
            let next_idx = group
                .element_index(&next)
                .expect("groups are closed under multiplication");
            let next_image = img.compose(&current_image);
            match images.get(&next_idx) {
                Some(existing) if *existing != next_image => {
                    return Err(RepsError::NotAHomomorphism);
                }
                Some(_) => {}
                None => {
                    images.insert(next_idx, next_image);
                    frontier.push(next_idx);
                }
            }
        }
    }
    if images.len() != group.order() as usize {
        return Err(RepsError::DoesNotGenerate);
    }
    Ok(images)
}

/// A square matrix with exact entries, over the rationals or a prime field.
#[derive(Debug, Clone)]
pub enum ExactMatrix {
    Rational(Vec<Vec<Rat>>),
    Mod { p: u64, entries: Vec<Vec<u64>> },
}

impl ExactMatrix {
    pub fn dim(&self) -> usize {
        match self {
            ExactMatrix::Rational(rows) => rows.len(),
            ExactMatrix::Mod { entries, .. } => entries.len(),
        }
    }

    fn validate(&self) -> Result<(), RepsError> {
        match self {
            ExactMatrix::Rational(rows) => {
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return Err(RepsError::Domain("matrix is not square".into()));
                }
            }
            ExactMatrix::Mod { p, entries } => {
                if *p < 2 || !is_small_prime(*p) {
                    return Err(RepsError::Domain(format!("{p} is not prime")));
                }
                if entries.iter().any(|r| r.len() != entries.len()) {
                    return Err(RepsError::Domain("matrix is not square".into()));
                }
                if entries.iter().flatten().any(|&e| e >= *p) {
                    return Err(RepsError::Domain("entries must be reduced mod p".into()));
                }
            }
        }
        Ok(())
    }
}

fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `n - dim ker(M - I)`: the codimension of the fixed space, by exact
/// Gaussian elimination over Q or F_p.
pub fn fixed_space_codim(m: &ExactMatrix) -> Result<usize, RepsError> {
    m.validate()?;
    match m {
        ExactMatrix::Rational(rows) => {
            let n = rows.len();
            let mut a: Vec<Vec<Rat>> = rows.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] -= Rat::one();
            }
            Ok(rational_rank(&mut a, n))
        }
        ExactMatrix::Mod { p, entries } => {
            let n = entries.len();
            let mut a = entries.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = (row[i] + p - 1) % p;
            }
            Ok(mod_rank(&mut a, n, *p))
        }
    }
}

fn rational_rank(a: &mut [Vec<Rat>], n: usize) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let pivot = (rank..n).find(|&r| !a[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        a.swap(rank, pivot);
        let inv = a[rank][col].clone().recip();
        for c in col..n {
            a[rank][c] = &a[rank][c] * &inv;
        }
        for r in 0..n {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..n {
                    let sub = &a[rank][c] * &factor;
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_rank(a: &mut [Vec<u64>], n: usize, p: u64) -> usize {
    let inv = |x: u64| mod_pow(x, p - 2, p);
    let mut rank = 0;
    for col in 0..n {
        let pivot = (rank..n).find(|&r| a[r][col] % p != 0);
        let Some(pivot) = pivot else { continue };
        a.swap(rank, pivot);
        let piv_inv = inv(a[rank][col]);
        for c in col..n {
            a[rank][c] = mulmod(a[rank][c], piv_inv, p);
        }
        for r in 0..n {
            if r != rank && a[r][col] % p != 0 {
                let factor = a[r][col];
                for c in col..n {
                    let sub = mulmod(a[rank][c], factor, p);
                    a[r][c] = (a[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Ramification filtration data: pairs `(ram_index_i, codim_i)` for
/// `i = 0, 1, .., j`, trivial beyond `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamFiltration {
    steps: Vec<(u64, u64)>,
}

impl RamFiltration {
    pub fn new(steps: Vec<(u64, u64)>) -> Result<RamFiltration, RepsError> {
        if let Some(&(r0, _)) = steps.first() {
            if r0 != 1 {
                return Err(RepsError::Domain("ram_index_0 must be 1".into()));
            }
        }
        if steps.windows(2).any(|w| w[0].0 > w[1].0) {
            return Err(RepsError::Domain(
                "ramification indices must be nondecreasing".into(),
            ));
        }
        if steps.windows(2).any(|w| w[0].1 < w[1].1) {
            return Err(RepsError::Domain("codimensions must be nonincreasing".into()));
        }
        Ok(RamFiltration { steps })
    }

    pub fn steps(&self) -> &[(u64, u64)] {
        &self.steps
    }
}

/// `(a, s, t)` with `a = sum_i codim_i / ram_index_i`, `s` the same sum over
/// `i >= 1`, and `t = codim_0`; `a = s + t` by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conductors {
    pub artin: Rat,
    pub swan: Rat,
    pub tame: u64,
}

pub fn conductors_from_filtration(f: &RamFiltration) -> Conductors {
    let mut artin = Rat::zero();
    let mut swan = Rat::zero();
    let mut tame = 0u64;
    for (i, &(ram_index, codim)) in f.steps().iter().enumerate() {
        let term = Rat::new((codim as i64).into(), (ram_index as i64).into());
        artin += term.clone();
        if i >= 1 {
            swan += term;
        } else {
            tame = codim;
        }
    }
    Conductors { artin, swan, tame }
}

/// Closed forms for the `Z/p` representation by a single `n x n` unipotent
/// Jordan block over `k((t))`, with ramification break `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanInvariants {
    pub artin: i64,
    pub tame: i64,
    pub weight: i64,
    /// Weight of the doubled representation; equals `2 * weight` by
    /// additivity.
    pub weight_double: i64,
}

impl JordanInvariants {
    pub fn two_tame_minus_artin(&self) -> i64 {
        2 * self.tame - self.artin
    }
}

/// `a = (j+1)(n-1)`, `t = n-1`, `w = -sum_{a=1}^{n-1} floor(j a / p)`, and
/// the doubled weight `2w`. Requires `2 <= n <= p` and `j >= 1`.
pub fn wild_cyclic_jordan(n: u32, p: u64, j: u32) -> Result<JordanInvariants, RepsError> {
    if n < 2 || u64::from(n) > p {
        return Err(RepsError::Domain(format!(
            "need 2 <= n <= p, got n = {n}, p = {p}"
        )));
    }
    if j < 1 {
        return Err(RepsError::Domain("need j >= 1".into()));
    }
    let (n64, j64) = (n as i64, j as i64);
    let weight: i64 = -(1..n64).map(|a| (j64 * a) / (p as i64)).sum::<i64>();
    Ok(JordanInvariants {
        artin: (j64 + 1) * (n64 - 1),
        tame: n64 - 1,
        weight,
        weight_double: 2 * weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_GROUP_BOUND;
    use crate::qlaurent::rat;

    fn s2() -> Arc<PermGroup> {
        Arc::new(PermGroup::symmetric(2, DEFAULT_GROUP_BOUND).unwrap())
    }

    fn s3() -> Arc<PermGroup> {
        Arc::new(PermGroup::symmetric(3, DEFAULT_GROUP_BOUND).unwrap())
    }

    fn c3() -> Arc<PermGroup> {
        Arc::new(PermGroup::cyclic(3, DEFAULT_GROUP_BOUND).unwrap())
    }

    fn class_of_order(rep: &TameRep, order: u64) -> usize {
        (0..rep.model().class_count())
            .find(|&c| rep.model().class(c).repr_order == order)
            .unwrap()
    }

    #[test]
    fn s2_defining_rep() {
        let g = s2();
        let rep = TameRep::natural_rep(&g).unwrap();
        let transposition = class_of_order(&rep, 2);
        assert_eq!(rep.eigen_exponents(transposition), &[rat(0, 1), rat(1, 2)]);
        let id = rep.model().identity_class();
        assert_eq!(rep.eigen_exponents(id), &[rat(0, 1), rat(0, 1)]);
        assert_eq!(rep.age_weight(transposition), rat(1, 2));
        assert_eq!(rep.v_tame(transposition), rat(1, 2));
        assert_eq!(rep.artin_tame(transposition), 1);
        assert_eq!(rep.age_weight(id), rat(0, 1));
        assert_eq!(rep.v_tame(id), rat(0, 1));
        assert_eq!(rep.artin_tame(id), 0);
    }

    #[test]
    fn s3_defining_rep_three_cycle() {
        let g = s3();
        let rep = TameRep::natural_rep(&g).unwrap();
        let three_cycle = class_of_order(&rep, 3);
        assert_eq!(
            rep.eigen_exponents(three_cycle),
            &[rat(0, 1), rat(1, 3), rat(2, 3)]
        );
    }

    #[test]
    fn sn_artin_counts_cycles() {
        let sn = Arc::new(SnClasses::new(6).unwrap());
        let sigma = TameRep::defining_rep(&sn).unwrap();
        for c in 0..sn.class_count() {
            let parts = sn.cycle_type(c).num_parts() as u64;
            assert_eq!(sigma.artin_tame(c), 6 - parts);
        }
    }

    #[test]
    fn regular_rep_c3() {
        let g = c3();
        let model: Arc<dyn ClassSystem> = g.clone();
        let rep = TameRep::regular_rep(&model).unwrap();
        let generator = class_of_order(&rep, 3);
        assert_eq!(
            rep.eigen_exponents(generator),
            &[rat(0, 1), rat(1, 3), rat(2, 3)]
        );
        // regular rep of a cyclic group is its natural rep
        let natural = TameRep::natural_rep(&g).unwrap();
        for c in 0..g.class_count() {
            assert_eq!(rep.eigen_exponents(c), natural.eigen_exponents(c));
        }
    }

    #[test]
    fn diagonal_rep_values() {
        let g = c3();
        let rep = TameRep::diagonal_rep(&g, &[rat(1, 3), rat(1, 3)]).unwrap();
        let generator = class_of_order(&rep, 3);
        let exps = rep.eigen_exponents(generator);
        let doubled = rep.eigen_exponents(rep.model().power_class(generator, 2));
        let mut pair = vec![exps.to_vec(), doubled.to_vec()];
        pair.sort();
        assert_eq!(
            pair,
            vec![vec![rat(1, 3), rat(1, 3)], vec![rat(2, 3), rat(2, 3)]]
        );
        // age and v on the {1/3, 1/3} class
        let c13 = (0..3)
            .find(|&c| rep.eigen_exponents(c) == [rat(1, 3), rat(1, 3)])
            .unwrap();
        assert_eq!(rep.age_weight(c13), rat(4, 3));
        assert_eq!(rep.v_tame(c13), rat(2, 3));
        assert_eq!(rep.artin_tame(c13), 2);
        assert!(!rep.is_balanced());
        assert!(!rep.has_pseudo_reflection());
    }

    #[test]
    fn duplication_and_dual() {
        let g = s2();
        let sigma = TameRep::natural_rep(&g).unwrap();
        let doubled = sigma.direct_sum(&sigma).unwrap();
        let t = class_of_order(&doubled, 2);
        assert_eq!(
            doubled.eigen_exponents(t),
            &[rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2)]
        );
        let rep = TameRep::diagonal_rep(&c3(), &[rat(1, 3)]).unwrap();
        let dd = rep.dual().dual();
        for c in 0..3 {
            assert_eq!(dd.eigen_exponents(c), rep.eigen_exponents(c));
        }
        // tau + dual(tau) is balanced even when tau is not
        assert!(rep.direct_sum(&rep.dual()).unwrap().is_balanced());
        assert!(!rep.is_balanced());
    }

    #[test]
    fn group_mismatch_rejected() {
        let a = TameRep::natural_rep(&s2()).unwrap();
        let b = TameRep::natural_rep(&s2()).unwrap();
        assert!(matches!(a.direct_sum(&b), Err(RepsError::GroupMismatch)));
    }

    #[test]
    fn permutation_reps_are_balanced() {
        for rep in [
            TameRep::natural_rep(&s3()).unwrap(),
            TameRep::natural_rep(&c3()).unwrap(),
            TameRep::defining_rep(&Arc::new(SnClasses::new(5).unwrap())).unwrap(),
        ] {
            assert!(rep.is_balanced());
        }
    }

    #[test]
    fn pseudo_reflection_detection() {
        let sn = Arc::new(SnClasses::new(4).unwrap());
        let sigma = TameRep::defining_rep(&sn).unwrap();
        assert!(sigma.has_pseudo_reflection()); // transpositions fix a hyperplane
        let two_sigma = sigma.direct_sum(&sigma).unwrap();
        assert!(!two_sigma.has_pseudo_reflection());
    }

    #[test]
    fn permutation_rep_hom_check() {
        let g = s2();
        let t = Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        // send the transposition to a 2-cycle in S_4: fine
        let img = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let rep = TameRep::permutation_rep(&g, &[(t.clone(), img)]).unwrap();
        assert_eq!(rep.dim(), 4);
        let c = class_of_order(&rep, 2);
        assert_eq!(rep.artin_tame(c), 1);
        // send it to a 3-cycle: order does not divide, not a homomorphism
        let bad = Perm::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            TameRep::permutation_rep(&g, &[(t, bad)]),
            Err(RepsError::NotAHomomorphism)
        ));
        // generators that do not generate
        let s3 = s3();
        let t3 = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let img3 = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            TameRep::permutation_rep(&s3, &[(t3, img3)]),
            Err(RepsError::DoesNotGenerate)
        ));
    }

    #[test]
    fn pullback_s2_into_s3() {
        let sub = s2();
        let target = s3();
        let sigma3 = TameRep::natural_rep(&target).unwrap();
        let t2 = Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        let t3 = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let restricted = sigma3.pullback(&sub, &target, &[(t2, t3)]).unwrap();
        assert_eq!(restricted.dim(), 3);
        let c = class_of_order(&restricted, 2);
        // (0 1) in S_3 has cycle type (2, 1): exponents {0, 0, 1/2}
        assert_eq!(
            restricted.eigen_exponents(c),
            &[rat(0, 1), rat(0, 1), rat(1, 2)]
        );
        assert_eq!(restricted.artin_tame(c), 1);
    }

    #[test]
    fn fixed_space_codim_examples() {
        let id = ExactMatrix::Rational(vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
        ]);
        assert_eq!(fixed_space_codim(&id).unwrap(), 0);
        let diag = ExactMatrix::Rational(vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(-1, 1)],
        ]);
        assert_eq!(fixed_space_codim(&diag).unwrap(), 1);
        for p in [2u64, 3, 5, 7] {
            for n in 2..=(p as usize).min(5) {
                let mut entries = vec![vec![0u64; n]; n];
                for i in 0..n {
                    entries[i][i] = 1;
                    if i + 1 < n {
                        entries[i][i + 1] = 1;
                    }
                }
                let jordan = ExactMatrix::Mod { p, entries };
                assert_eq!(fixed_space_codim(&jordan).unwrap(), n - 1);
            }
        }
        assert!(fixed_space_codim(&ExactMatrix::Mod {
            p: 4,
            entries: vec![vec![1]],
        })
        .is_err());
    }

    #[test]
    fn conductors_examples() {
        // tame filtration: codim c at i = 0, trivial beyond
        let tame = RamFiltration::new(vec![(1, 3)]).unwrap();
        let c = conductors_from_filtration(&tame);
        assert_eq!(c.artin, rat(3, 1));
        assert_eq!(c.swan, rat(0, 1));
        assert_eq!(c.tame, 3);

        // Z/p Jordan block: G_0 = .. = G_j, codim n-1 throughout
        let (n, j) = (4u64, 3usize);
        let filt = RamFiltration::new(vec![(1, n - 1); j + 1]).unwrap();
        let c = conductors_from_filtration(&filt);
        assert_eq!(c.artin, rat((j as i64 + 1) * (n as i64 - 1), 1));
        assert_eq!(c.tame, n - 1);
        assert_eq!(c.artin.clone() - c.swan.clone(), rat(c.tame as i64, 1));

        let zero = conductors_from_filtration(&RamFiltration::new(vec![]).unwrap());
        assert_eq!((zero.artin, zero.swan, zero.tame), (rat(0, 1), rat(0, 1), 0));

        assert!(RamFiltration::new(vec![(2, 1)]).is_err());
        assert!(RamFiltration::new(vec![(1, 1), (1, 2)]).is_err());
        assert!(RamFiltration::new(vec![(1, 1), (3, 1), (2, 0)]).is_err());
    }

    #[test]
    fn jordan_invariants() {
        let j1 = wild_cyclic_jordan(2, 2, 1).unwrap();
        assert_eq!((j1.artin, j1.tame, j1.weight), (2, 1, 0));
        assert_eq!(j1.two_tame_minus_artin(), 0);
        assert_eq!(j1.weight_double, 0);

        let j2 = wild_cyclic_jordan(2, 3, 4).unwrap();
        assert_eq!(j2.two_tame_minus_artin(), -3);
        assert_eq!(j2.weight_double, -2);

        let j3 = wild_cyclic_jordan(2, 5, 1).unwrap();
        assert_eq!(j3.weight, 0);

        assert!(wild_cyclic_jordan(7, 5, 1).is_err());
        assert!(wild_cyclic_jordan(2, 2, 0).is_err());
    }

    #[test]
    fn tame_identity_weight_artin_v() {
        // w = t - v on a mix of representations
        let g = s3();
        let sigma = TameRep::natural_rep(&g).unwrap();
        let reps = [
            sigma.clone(),
            sigma.direct_sum(&sigma).unwrap(),
            sigma.dual(),
            TameRep::regular_rep(&(g.clone() as Arc<dyn ClassSystem>)).unwrap(),
        ];
        for rep in &reps {
            for c in 0..rep.model().class_count() {
                assert_eq!(
                    rep.age_weight(c),
                    rat(rep.artin_tame(c) as i64, 1) - rep.v_tame(c)
                );
            }
        }
    }
}
