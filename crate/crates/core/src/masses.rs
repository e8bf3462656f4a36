//! Total masses in the tame model and the tame McKay verification harness.
//!
//! The tame quotient of the absolute Galois group of a local field with
//! residue cardinality `q` is generated by two elements `a, b` subject to
//! `b a b^{-1} = a^q`, so continuous homomorphisms to a finite group of
//! order prime to `q` are counted by pairs `(g, h)` with `h g h^{-1} = g^q`.
//! The resulting total mass collapses to a sum over the Frobenius-stable
//! conjugacy classes, one term `q^{sign * c(g)}` per stable class `[g]`.
//!
//! Counting functions are interchangeable strategies behind the
//! [`CountingFunction`] trait, registered by name and selected at runtime
//! (`artin`, `swan`, `tame`, `v`, `weight`).

use num::integer::gcd;
use thiserror::Error;

use crate::groups::frobenius_stable_classes;
use crate::qlaurent::{MassPoly, Rat};
use crate::reps::TameRep;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MassError {
    #[error("not tame: q-class {q_class} shares a factor with the group exponent {exponent}")]
    NotTame { q_class: u64, exponent: u64 },
    #[error("representation has a pseudo-reflection")]
    PseudoReflection,
}

/// Orientation of the exponent: masses use `q^{-c}`, McKay sums `q^{+w}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(&self, value: Rat) -> Rat {
        match self {
            Sign::Plus => value,
            Sign::Minus => -value,
        }
    }
}

/// A per-class counting function on tame representations.
pub trait CountingFunction: Send + Sync {
    fn name(&self) -> &'static str;
    /// The orientation conventionally used with this function.
    fn default_sign(&self) -> Sign;
    fn value(&self, rep: &TameRep, class: usize) -> Rat;
}

/// The Artin conductor `a`.
pub struct ArtinCounting;
/// The Swan conductor `s`; identically zero in the tame model.
pub struct SwanCounting;
/// The tame part `t = a - s`; equals `a` in the tame model.
pub struct TamePartCounting;
/// The tuning-module valuation `v`.
pub struct TuningValuation;
/// The weight `w = t - v`.
pub struct WeightCounting;

impl CountingFunction for ArtinCounting {
    fn name(&self) -> &'static str {
        "artin"
    }
    fn default_sign(&self) -> Sign {
        Sign::Minus
    }
    fn value(&self, rep: &TameRep, class: usize) -> Rat {
        crate::qlaurent::rat_int(rep.artin_tame(class) as i64)
    }
}

impl CountingFunction for SwanCounting {
    fn name(&self) -> &'static str {
        "swan"
    }
    fn default_sign(&self) -> Sign {
        Sign::Minus
    }
    fn value(&self, _rep: &TameRep, _class: usize) -> Rat {
        Rat::default()
    }
}

impl CountingFunction for TamePartCounting {
    fn name(&self) -> &'static str {
        "tame"
    }
    fn default_sign(&self) -> Sign {
        Sign::Minus
    }
    fn value(&self, rep: &TameRep, class: usize) -> Rat {
        crate::qlaurent::rat_int(rep.artin_tame(class) as i64)
    }
}

impl CountingFunction for TuningValuation {
    fn name(&self) -> &'static str {
        "v"
    }
    fn default_sign(&self) -> Sign {
        Sign::Minus
    }
    fn value(&self, rep: &TameRep, class: usize) -> Rat {
        rep.v_tame(class)
    }
}

impl CountingFunction for WeightCounting {
    fn name(&self) -> &'static str {
        "weight"
    }
    fn default_sign(&self) -> Sign {
        Sign::Plus
    }
    fn value(&self, rep: &TameRep, class: usize) -> Rat {
        rep.age_weight(class)
    }
}

/// The registered counting functions, selectable by name.
pub fn counting_functions() -> &'static [&'static dyn CountingFunction] {
    static REGISTRY: [&dyn CountingFunction; 5] = [
        &ArtinCounting,
        &SwanCounting,
        &TamePartCounting,
        &TuningValuation,
        &WeightCounting,
    ];
    &REGISTRY
}

pub fn counting_by_name(name: &str) -> Option<&'static dyn CountingFunction> {
    counting_functions().iter().copied().find(|f| f.name() == name)
}

/// A counting function together with the exponent orientation.
#[derive(Clone, Copy)]
pub struct CountingChoice {
    pub function: &'static dyn CountingFunction,
    pub sign: Sign,
}

impl CountingChoice {
    pub fn new(function: &'static dyn CountingFunction, sign: Sign) -> Self {
        CountingChoice { function, sign }
    }

    pub fn with_default_sign(function: &'static dyn CountingFunction) -> Self {
        CountingChoice { function, sign: function.default_sign() }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        counting_by_name(name).map(Self::with_default_sign)
    }
}

/// One row of the per-class breakdown of a mass computation.
#[derive(Debug, Clone)]
pub struct ClassTerm {
    pub label: String,
    pub repr_order: u64,
    pub size: u128,
    pub stable: bool,
    /// Value of the counting function on the class.
    pub value: Rat,
    /// Exponent contributed to the mass (`sign * value`), for stable classes.
    pub exponent: Option<Rat>,
}

/// The total mass `sum over stable classes of q^{sign * c(g)}` as a
/// polynomial in a formal `q`, valid for every local field whose residue
/// cardinality is congruent to `q_class` mod the group exponent.
///
/// Fails with [`MassError::NotTame`] when `q_class` is not coprime to the
/// group exponent (equivalently, to the group order).
pub fn tame_mass(
    rep: &TameRep,
    choice: &CountingChoice,
    q_class: u64,
) -> Result<MassPoly, MassError> {
    Ok(tame_mass_with_terms(rep, choice, q_class)?.0)
}

/// Like [`tame_mass`], also returning the per-class breakdown in class
/// order.
pub fn tame_mass_with_terms(
    rep: &TameRep,
    choice: &CountingChoice,
    q_class: u64,
) -> Result<(MassPoly, Vec<ClassTerm>), MassError> {
    let model = rep.model();
    let exponent = model.exponent();
    let q = q_class % exponent;
    if gcd(q, exponent) != 1 {
        return Err(MassError::NotTame { q_class, exponent });
    }
    let stable = frobenius_stable_classes(model.as_ref(), q);
    let mut terms = Vec::with_capacity(model.class_count());
    let mut mass_terms = Vec::new();
    for c in 0..model.class_count() {
        let is_stable = stable.contains(&c);
        let value = choice.function.value(rep, c);
        let exponent_term = is_stable.then(|| choice.sign.apply(value.clone()));
        if let Some(e) = &exponent_term {
            mass_terms.push((e.clone(), Rat::from_integer(1.into())));
        }
        terms.push(ClassTerm {
            label: model.class_label(c),
            repr_order: model.class(c).repr_order,
            size: model.class(c).size,
            stable: is_stable,
            value,
            exponent: exponent_term,
        });
    }
    let mass = MassPoly::from_terms(1, mass_terms).with_grading(exponent);
    Ok((mass, terms))
}

/// Outcome of a McKay-style identity check, with per-class contributions.
#[derive(Debug, Clone)]
pub struct MckayReport {
    pub ok: bool,
    pub computed: MassPoly,
    pub expected: MassPoly,
    /// `computed - expected`; zero exactly when the check passes.
    pub diff: MassPoly,
    pub per_class: Vec<ClassTerm>,
}

/// Checks `sum over stable classes of q^{w(g)}` against an expected
/// polynomial. The representation must have no pseudo-reflection.
pub fn mckay_tame_check(
    rep: &TameRep,
    q_class: u64,
    expected: &MassPoly,
) -> Result<MckayReport, MassError> {
    if rep.has_pseudo_reflection() {
        return Err(MassError::PseudoReflection);
    }
    let choice = CountingChoice::with_default_sign(&WeightCounting);
    let (computed, per_class) = tame_mass_with_terms(rep, &choice, q_class)?;
    let diff = computed.add(&expected.scale(&crate::qlaurent::rat_int(-1)));
    Ok(MckayReport {
        ok: computed == *expected,
        computed,
        expected: expected.clone(),
        diff,
        per_class,
    })
}

/// True iff `m1 = invert_q(m2)`, i.e. the two sides are exchanged by
/// `q <-> q^{-1}`.
pub fn duality_check(m1: &MassPoly, m2: &MassPoly) -> bool {
    *m1 == m2.invert_q()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::{ClassSystem, PermGroup, SnClasses, DEFAULT_GROUP_BOUND};
    use crate::partitions::{bhargava_rhs, hilbert_origin_count};
    use crate::qlaurent::{rat, rat_int};

    fn weight() -> CountingChoice {
        CountingChoice::by_name("weight").unwrap()
    }

    fn regular_c3() -> TameRep {
        let g: Arc<dyn ClassSystem> =
            Arc::new(PermGroup::cyclic(3, DEFAULT_GROUP_BOUND).unwrap());
        TameRep::regular_rep(&g).unwrap()
    }

    #[test]
    fn registry_names() {
        let names: Vec<&str> = counting_functions().iter().map(|f| f.name()).collect();
        assert_eq!(names, vec!["artin", "swan", "tame", "v", "weight"]);
        assert!(counting_by_name("weight").is_some());
        assert!(counting_by_name("nope").is_none());
    }

    #[test]
    fn c3_regular_mass() {
        let rep = regular_c3();
        let mass1 = tame_mass(&rep, &weight(), 1).unwrap();
        let expected =
            MassPoly::from_terms(1, [(rat_int(1), rat_int(2)), (rat_int(0), rat_int(1))]);
        assert_eq!(mass1, expected); // 2q + 1
        let mass2 = tame_mass(&rep, &weight(), 2).unwrap();
        assert_eq!(mass2, MassPoly::one());
        // q = 4 is in the class of 1 mod 3
        assert_eq!(tame_mass(&rep, &weight(), 4).unwrap(), expected);
        assert!(matches!(
            tame_mass(&rep, &weight(), 3),
            Err(MassError::NotTame { .. })
        ));
    }

    #[test]
    fn sn_two_sigma_weight_is_hilbert() {
        for n in 1..=6u32 {
            let sn = Arc::new(SnClasses::new(n).unwrap());
            let sigma = TameRep::defining_rep(&sn).unwrap();
            let two_sigma = sigma.direct_sum(&sigma).unwrap();
            let mass = tame_mass(&two_sigma, &weight(), 1).unwrap();
            assert_eq!(mass, hilbert_origin_count(n), "n = {n}");
        }
    }

    #[test]
    fn sn_sigma_artin_is_bhargava() {
        let artin = CountingChoice::by_name("artin").unwrap();
        assert_eq!(artin.sign, Sign::Minus);
        for n in 1..=6u32 {
            let sn = Arc::new(SnClasses::new(n).unwrap());
            let sigma = TameRep::defining_rep(&sn).unwrap();
            let exponent = sn.exponent();
            for q in (1..=exponent.min(30)).filter(|q| gcd(*q, exponent) == 1) {
                let mass = tame_mass(&sigma, &artin, q).unwrap();
                assert_eq!(mass, bhargava_rhs(n), "n = {n}, q = {q}");
            }
        }
    }

    #[test]
    fn mckay_check_reports() {
        let rep = regular_c3();
        let expected =
            MassPoly::from_terms(1, [(rat_int(1), rat_int(2)), (rat_int(0), rat_int(1))]);
        let report = mckay_tame_check(&rep, 1, &expected).unwrap();
        assert!(report.ok);
        assert!(report.diff.is_zero());
        assert_eq!(report.per_class.len(), 3);
        assert!(report.per_class.iter().all(|t| t.stable));

        // negative control: expected = 1 + q fails with a nonzero diff
        let wrong =
            MassPoly::from_terms(1, [(rat_int(1), rat_int(1)), (rat_int(0), rat_int(1))]);
        let report = mckay_tame_check(&rep, 1, &wrong).unwrap();
        assert!(!report.ok);
        assert_eq!(report.diff, MassPoly::term(rat_int(1), rat_int(1)));

        // sigma of S_n has pseudo-reflections
        let sn = Arc::new(SnClasses::new(3).unwrap());
        let sigma = TameRep::defining_rep(&sn).unwrap();
        assert!(matches!(
            mckay_tame_check(&sigma, 1, &expected),
            Err(MassError::PseudoReflection)
        ));
    }

    #[test]
    fn duality_examples() {
        for n in 1..=8 {
            assert!(duality_check(&bhargava_rhs(n), &hilbert_origin_count(n)));
        }
        assert!(duality_check(&MassPoly::one(), &MassPoly::one()));
        let one_plus_q =
            MassPoly::from_terms(1, [(rat_int(1), rat_int(1)), (rat_int(0), rat_int(1))]);
        assert!(!duality_check(&one_plus_q, &one_plus_q));
    }

    /// Pair-sum oracle: `(1/|G|) sum over (g,h) with h g h^{-1} = g^q` of
    /// `q^{sign c(g)}`, by brute force over the element set.
    fn pair_sum_mass(
        group: &Arc<PermGroup>,
        rep: &TameRep,
        choice: &CountingChoice,
        q: u64,
    ) -> MassPoly {
        let mut total = MassPoly::zero();
        for (i, a) in group.elements().iter().enumerate() {
            let aq = a.pow(q);
            for h in group.elements() {
                if h.compose(a).compose(&h.inverse()) == aq {
                    let c = group.class_of_element(i);
                    let e = choice.sign.apply(choice.function.value(rep, c));
                    total = total.add(&MassPoly::q_pow(e));
                }
            }
        }
        total.scale(&rat(1, group.order() as i64))
    }

    #[test]
    fn class_sum_equals_pair_sum() {
        let groups: Vec<Arc<PermGroup>> = vec![
            Arc::new(PermGroup::symmetric(3, DEFAULT_GROUP_BOUND).unwrap()),
            Arc::new(PermGroup::symmetric(4, DEFAULT_GROUP_BOUND).unwrap()),
            Arc::new(PermGroup::cyclic(12, DEFAULT_GROUP_BOUND).unwrap()),
            Arc::new(PermGroup::dihedral(6, DEFAULT_GROUP_BOUND).unwrap()),
        ];
        for group in &groups {
            assert!(group.order() <= 200);
            let sigma = TameRep::natural_rep(group).unwrap();
            let reps = [sigma.clone(), sigma.direct_sum(&sigma).unwrap(), sigma.dual()];
            let exponent = group.exponent();
            for rep in &reps {
                for name in ["artin", "v", "weight"] {
                    let choice = CountingChoice::by_name(name).unwrap();
                    for q in (1..=exponent).filter(|q| gcd(*q, exponent) == 1).take(4) {
                        let class_sum = tame_mass(rep, &choice, q).unwrap();
                        let pair_sum = pair_sum_mass(group, rep, &choice, q);
                        assert_eq!(class_sum, pair_sum, "{} {name} q={q}", group.describe());
                    }
                }
            }
        }
    }

    #[test]
    fn convertibility_s2_in_s3() {
        // Composing with S_2 -> S_3 and restricting masses is consistent:
        // per-class values of the pulled-back rep match the target classes.
        let sub = Arc::new(PermGroup::symmetric(2, DEFAULT_GROUP_BOUND).unwrap());
        let target = Arc::new(PermGroup::symmetric(3, DEFAULT_GROUP_BOUND).unwrap());
        let sigma3 = TameRep::natural_rep(&target).unwrap();
        let t2 = crate::groups::Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        let t3 = crate::groups::Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let pulled = sigma3
            .pullback(&sub, &target, &[(t2.clone(), t3.clone())])
            .unwrap();
        let image_class = target.class_of_element(target.element_index(&t3).unwrap());
        let sub_class = sub.class_of_element(sub.element_index(&t2).unwrap());
        for name in ["artin", "v", "weight"] {
            let f = counting_by_name(name).unwrap();
            assert_eq!(f.value(&pulled, sub_class), f.value(&sigma3, image_class));
            let id_sub = (sub.clone() as Arc<dyn ClassSystem>).identity_class();
            let id_target = (target.clone() as Arc<dyn ClassSystem>).identity_class();
            assert_eq!(f.value(&pulled, id_sub), f.value(&sigma3, id_target));
        }
    }
}
