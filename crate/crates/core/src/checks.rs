//! Runtime verification harnesses: randomized comparison suites for the
//! per-class counting identities, and the Jordan-block conductor sweep.
//!
//! Groups are drawn from cyclic, dihedral, symmetric and product families of
//! order at most 60, representations from sums, duals, diagonal and
//! permutation constructions. Every suite is deterministic for a fixed seed.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::groups::{ClassSystem, PermGroup, DEFAULT_GROUP_BOUND};
use crate::qlaurent::{rat, rat_int, Rat};
use crate::reps::{
    conductors_from_filtration, fixed_space_codim, wild_cyclic_jordan, ExactMatrix, RamFiltration,
    TameRep,
};

/// Outcome of one property suite.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub name: String,
    pub cases: u64,
    pub ok: bool,
    /// Messages for the first few failing cases, when any.
    pub failures: Vec<String>,
}

impl PropertyReport {
    fn run<F>(name: &str, cases: u64, seed: u64, mut case: F) -> PropertyReport
    where
        F: FnMut(&mut StdRng) -> Result<(), String>,
    {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut failures = Vec::new();
        for i in 0..cases {
            if let Err(msg) = case(&mut rng) {
                if failures.len() < 5 {
                    failures.push(format!("case {i}: {msg}"));
                }
            }
        }
        PropertyReport { name: name.into(), cases, ok: failures.is_empty(), failures }
    }
}

fn random_group(rng: &mut StdRng) -> Arc<PermGroup> {
    let group = match rng.gen_range(0..5) {
        0 => PermGroup::cyclic(rng.gen_range(1..=60), DEFAULT_GROUP_BOUND),
        1 => PermGroup::symmetric(rng.gen_range(2..=4), DEFAULT_GROUP_BOUND),
        2 => PermGroup::dihedral(rng.gen_range(3..=30), DEFAULT_GROUP_BOUND),
        3 => {
            let a = PermGroup::cyclic(rng.gen_range(2..=7), DEFAULT_GROUP_BOUND).unwrap();
            let b = PermGroup::cyclic(rng.gen_range(2..=8), DEFAULT_GROUP_BOUND).unwrap();
            PermGroup::direct_product(&a, &b, DEFAULT_GROUP_BOUND)
        }
        _ => {
            let a = PermGroup::symmetric(3, DEFAULT_GROUP_BOUND).unwrap();
            let b = PermGroup::cyclic(rng.gen_range(2..=10), DEFAULT_GROUP_BOUND).unwrap();
            PermGroup::direct_product(&a, &b, DEFAULT_GROUP_BOUND)
        }
    };
    let group = group.expect("families above stay within the bound");
    debug_assert!(group.order() <= 60 || group.describe().contains('x'));
    Arc::new(group)
}

/// A random representation over the group: permutation-based constructions
/// combined by sums and duals, plus diagonal data on cyclic groups.
fn random_rep(rng: &mut StdRng, group: &Arc<PermGroup>, depth: u32) -> TameRep {
    let order = group.order() as u64;
    let is_cyclic = (0..group.elements().len()).any(|i| group.element(i).order() == order);
    if depth > 0 && rng.gen_bool(0.5) {
        let a = random_rep(rng, group, depth - 1);
        return match rng.gen_range(0..3) {
            0 => a.dual(),
            1 => {
                let b = random_rep(rng, group, depth - 1);
                a.direct_sum(&b).expect("same group instance")
            }
            _ => a.direct_sum(&a.dual()).expect("same group instance"),
        };
    }
    match rng.gen_range(0..4) {
        0 if is_cyclic && order <= 60 => {
            let dim = rng.gen_range(1..=3);
            let exps: Vec<Rat> = (0..dim)
                .map(|_| rat(rng.gen_range(0..order as i64), order as i64))
                .collect();
            TameRep::diagonal_rep(group, &exps).expect("denominators divide the order")
        }
        1 if order <= 24 => {
            let model: Arc<dyn ClassSystem> = group.clone();
            TameRep::regular_rep(&model).expect("small group")
        }
        2 => {
            let model: Arc<dyn ClassSystem> = group.clone();
            TameRep::trivial_rep(&model, rng.gen_range(1..=2)).expect("trivial rep")
        }
        _ => TameRep::natural_rep(group).expect("natural rep"),
    }
}

fn random_permutation_rep(rng: &mut StdRng, group: &Arc<PermGroup>) -> TameRep {
    if rng.gen_bool(0.3) && group.order() <= 24 {
        let model: Arc<dyn ClassSystem> = group.clone();
        TameRep::regular_rep(&model).expect("small group")
    } else {
        TameRep::natural_rep(group).expect("natural rep")
    }
}

fn check_per_class<F>(rep: &TameRep, mut check: F) -> Result<(), String>
where
    F: FnMut(usize) -> Result<(), String>,
{
    for c in 0..rep.model().class_count() {
        check(c)?;
    }
    Ok(())
}

/// The randomized comparison suites, `cases` runs each.
pub fn comparison_property_suite(cases: u64, seed: u64) -> Vec<PropertyReport> {
    let mut reports = Vec::new();

    reports.push(PropertyReport::run(
        "weight equals tame part minus v, per class",
        cases,
        seed,
        |rng| {
            let g = random_group(rng);
            let rep = random_rep(rng, &g, 2);
            check_per_class(&rep, |c| {
                let lhs = rep.age_weight(c);
                let rhs = rat_int(rep.artin_tame(c) as i64) - rep.v_tame(c);
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("{}: class {c}: {lhs} != {rhs}", g.describe()))
                }
            })
        },
    ));

    reports.push(PropertyReport::run(
        "balanced rep: w = v = a/2, per class",
        cases,
        seed.wrapping_add(1),
        |rng| {
            let g = random_group(rng);
            let tau = random_rep(rng, &g, 1);
            let rep = tau.direct_sum(&tau.dual()).expect("same group");
            if !rep.is_balanced() {
                return Err(format!("{}: tau + dual(tau) not balanced", g.describe()));
            }
            check_per_class(&rep, |c| {
                let w = rep.age_weight(c);
                let v = rep.v_tame(c);
                let half_a = rat(rep.artin_tame(c) as i64, 2);
                if w == v && v == half_a {
                    Ok(())
                } else {
                    Err(format!("{}: class {c}: w={w} v={v} a/2={half_a}", g.describe()))
                }
            })
        },
    ));

    reports.push(PropertyReport::run(
        "w of tau + dual(tau) equals a of tau, per class",
        cases,
        seed.wrapping_add(2),
        |rng| {
            let g = random_group(rng);
            let tau = random_rep(rng, &g, 1);
            let doubled = tau.direct_sum(&tau.dual()).expect("same group");
            check_per_class(&tau, |c| {
                let lhs = doubled.age_weight(c);
                let rhs = rat_int(tau.artin_tame(c) as i64);
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("{}: class {c}: {lhs} != {rhs}", g.describe()))
                }
            })
        },
    ));

    reports.push(PropertyReport::run(
        "permutation rep: v = a/2 and w of 2 tau = t of tau, per class",
        cases,
        seed.wrapping_add(3),
        |rng| {
            let g = random_group(rng);
            let tau = random_permutation_rep(rng, &g);
            let doubled = tau.direct_sum(&tau).expect("same group");
            check_per_class(&tau, |c| {
                let v = tau.v_tame(c);
                let half_a = rat(tau.artin_tame(c) as i64, 2);
                if v != half_a {
                    return Err(format!("{}: class {c}: v={v} != a/2={half_a}", g.describe()));
                }
                let w2 = doubled.age_weight(c);
                let t = rat_int(tau.artin_tame(c) as i64);
                if w2 != t {
                    return Err(format!("{}: class {c}: w(2tau)={w2} != t={t}", g.describe()));
                }
                Ok(())
            })
        },
    ));

    reports.push(PropertyReport::run(
        "additivity under direct sum; trivial rep counts zero",
        cases,
        seed.wrapping_add(4),
        |rng| {
            let g = random_group(rng);
            let a = random_rep(rng, &g, 1);
            let b = random_rep(rng, &g, 1);
            let sum = a.direct_sum(&b).expect("same group");
            let model: Arc<dyn ClassSystem> = g.clone();
            let trivial = TameRep::trivial_rep(&model, 2).expect("trivial rep");
            check_per_class(&sum, |c| {
                if sum.age_weight(c) != a.age_weight(c) + b.age_weight(c)
                    || sum.v_tame(c) != a.v_tame(c) + b.v_tame(c)
                    || sum.artin_tame(c) != a.artin_tame(c) + b.artin_tame(c)
                {
                    return Err(format!("{}: class {c}: not additive", g.describe()));
                }
                if trivial.age_weight(c) != rat_int(0)
                    || trivial.v_tame(c) != rat_int(0)
                    || trivial.artin_tame(c) != 0
                {
                    return Err(format!("{}: class {c}: trivial rep nonzero", g.describe()));
                }
                Ok(())
            })
        },
    ));

    reports.push(PropertyReport::run(
        "artin conductor is dual invariant, per class",
        cases,
        seed.wrapping_add(5),
        |rng| {
            let g = random_group(rng);
            let tau = random_rep(rng, &g, 2);
            let dual = tau.dual();
            check_per_class(&tau, |c| {
                if tau.artin_tame(c) == dual.artin_tame(c) {
                    Ok(())
                } else {
                    Err(format!("{}: class {c}: a differs on the dual", g.describe()))
                }
            })
        },
    ));

    reports
}

/// The Jordan-block sweep: the ramification-filtration route reproduces the
/// closed forms for all `2 <= n <= p <= 7`, `j <= 10`, and for `n = 2` the
/// doubled weight agrees with `2t - a` over all realizable breaks exactly
/// when `p = 2`.
pub fn jordan_block_suite() -> Vec<PropertyReport> {
    let mut failures = Vec::new();
    let mut cases = 0u64;
    for p in [2u64, 3, 5, 7] {
        for n in 2..=(p.min(7) as u32) {
            // codimension of the fixed space of the unipotent Jordan block
            let mut entries = vec![vec![0u64; n as usize]; n as usize];
            for i in 0..n as usize {
                entries[i][i] = 1;
                if i + 1 < n as usize {
                    entries[i][i + 1] = 1;
                }
            }
            let codim = match fixed_space_codim(&ExactMatrix::Mod { p, entries }) {
                Ok(c) => c as u64,
                Err(e) => {
                    failures.push(format!("p={p} n={n}: {e}"));
                    continue;
                }
            };
            for j in 1..=10u32 {
                cases += 1;
                let filtration = RamFiltration::new(vec![(1, codim); j as usize + 1])
                    .expect("constant filtration is monotone");
                let cond = conductors_from_filtration(&filtration);
                let closed = wild_cyclic_jordan(n, p, j).expect("2 <= n <= p");
                if cond.artin != rat_int(closed.artin)
                    || cond.tame != closed.tame as u64
                    || cond.artin.clone() - cond.swan.clone() != rat_int(cond.tame as i64)
                {
                    failures.push(format!(
                        "p={p} n={n} j={j}: filtration gives ({}, {}, {}), closed form ({}, {})",
                        cond.artin, cond.swan, cond.tame, closed.artin, closed.tame
                    ));
                }
                let expected_w: i64 = -(1..n as i64).map(|a| (j as i64 * a) / p as i64).sum::<i64>();
                if closed.weight != expected_w {
                    failures.push(format!("p={p} n={n} j={j}: weight mismatch"));
                }
            }
        }
    }
    let filtration_report = PropertyReport {
        name: "Jordan block: filtration conductors match the closed forms".into(),
        cases,
        ok: failures.is_empty(),
        failures,
    };

    // Realizable ramification breaks of a degree-p cyclic extension are
    // prime to p; over those, 2t - a = w(2 tau) for all j iff p = 2.
    let mut eq_failures = Vec::new();
    let mut eq_cases = 0u64;
    for p in [2u64, 3, 5, 7] {
        let mut all_equal = true;
        for j in (1..=10u32).filter(|j| u64::from(*j) % p != 0) {
            eq_cases += 1;
            let inv = wild_cyclic_jordan(2, p, j).expect("n = 2 <= p");
            if inv.two_tame_minus_artin() != inv.weight_double {
                all_equal = false;
            }
        }
        if all_equal != (p == 2) {
            eq_failures.push(format!(
                "p={p}: equality of 2t - a and w(2 tau) over realizable breaks \
                 should hold iff p = 2"
            ));
        }
    }
    let equality_report = PropertyReport {
        name: "Jordan block n = 2: 2t - a = w(2 tau) exactly when p = 2".into(),
        cases: eq_cases,
        ok: eq_failures.is_empty(),
        failures: eq_failures,
    };

    vec![filtration_report, equality_report]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_suite_passes() {
        for report in comparison_property_suite(256, 20260809) {
            assert!(report.ok, "{}: {:?}", report.name, report.failures);
            assert!(report.cases >= 200);
        }
    }

    #[test]
    fn jordan_suite_passes() {
        for report in jordan_block_suite() {
            assert!(report.ok, "{}: {:?}", report.name, report.failures);
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = comparison_property_suite(16, 7);
        let b = comparison_property_suite(16, 7);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.ok, y.ok);
            assert_eq!(x.failures, y.failures);
        }
    }
}
