//! Named verification suites behind a common trait, selected with
//! `verify --suite <name>`.

use std::sync::Arc;

use anyhow::Result;
use serde_json::{json, Value};

use galmass::checks::{comparison_property_suite, jordan_block_suite};
use galmass::groups::{ClassSystem, PermGroup, SnClasses, DEFAULT_GROUP_BOUND};
use galmass::masses::{mckay_tame_check, tame_mass, CountingChoice};
use galmass::padic::{
    bhargava_check, per_partition_mass, serre_mass_check, wild_hilb_mass, Catalog,
};
use galmass::partitions::{bhargava_rhs, enumerate_partitions, hilbert_origin_count};
use galmass::qlaurent::MassPoly;
use galmass::reps::TameRep;

pub struct SuiteContext {
    pub slow: bool,
    pub catalog: Catalog,
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "suite": self.suite,
            "ok": self.ok(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "ok": c.ok,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

pub trait VerifySuite: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, ctx: &SuiteContext) -> Result<SuiteReport>;
}

/// The registered suites, selectable by name.
pub fn registry() -> &'static [&'static dyn VerifySuite] {
    static REGISTRY: [&dyn VerifySuite; 3] = [&TameMckaySuite, &WildMassSuite, &ComparisonsSuite];
    &REGISTRY
}

pub fn suite_by_name(name: &str) -> Option<&'static dyn VerifySuite> {
    registry().iter().copied().find(|s| s.name() == name)
}

fn row(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> CheckRow {
    CheckRow { name: name.into(), ok, detail: detail.into() }
}

/// Tame identities: the punctual point-count polynomial as a class sum, the
/// order-3 cyclic example for both residue classes, the weighted-count
/// polynomial from the defining representation, and the q <-> 1/q duality.
struct TameMckaySuite;

impl VerifySuite for TameMckaySuite {
    fn name(&self) -> &'static str {
        "tame-mckay"
    }

    fn run(&self, _ctx: &SuiteContext) -> Result<SuiteReport> {
        let mut checks = Vec::new();
        for n in 1..=8u32 {
            let sn = Arc::new(SnClasses::new(n)?);
            let sigma = TameRep::defining_rep(&sn)?;
            let two_sigma = sigma.direct_sum(&sigma)?;
            let report = mckay_tame_check(&two_sigma, 1, &hilbert_origin_count(n))?;
            checks.push(row(
                format!("S{n} doubled defining rep: weight sum = point count polynomial"),
                report.ok,
                format!("{}", report.computed),
            ));
        }
        let c3: Arc<dyn ClassSystem> = Arc::new(PermGroup::cyclic(3, DEFAULT_GROUP_BOUND)?);
        let regular = TameRep::regular_rep(&c3)?;
        let weight = CountingChoice::by_name("weight").expect("registered");
        let m1 = tame_mass(&regular, &weight, 1)?;
        let expected1 = MassPoly::from_json(&json!({"r": 1, "terms": [[0,1,1,1],[1,1,2,1]]}))?;
        checks.push(row(
            "C3 regular rep, q = 1 mod 3: mass is 2q + 1",
            m1 == expected1,
            format!("{m1}"),
        ));
        let m2 = tame_mass(&regular, &weight, 2)?;
        checks.push(row(
            "C3 regular rep, q = 2 mod 3: mass is 1",
            m2 == MassPoly::one(),
            format!("{m2}"),
        ));
        let artin = CountingChoice::by_name("artin").expect("registered");
        for n in 1..=8u32 {
            let sn = Arc::new(SnClasses::new(n)?);
            let sigma = TameRep::defining_rep(&sn)?;
            let mass = tame_mass(&sigma, &artin, 1)?;
            checks.push(row(
                format!("S{n} defining rep: conductor mass = partition polynomial"),
                mass == bhargava_rhs(n),
                format!("{mass}"),
            ));
        }
        let duality_ok = (1..=20).all(|n| hilbert_origin_count(n).invert_q() == bhargava_rhs(n));
        checks.push(row(
            "q <-> 1/q exchanges the two partition polynomials (n <= 20)",
            duality_ok,
            "",
        ));
        Ok(SuiteReport { suite: self.name(), checks })
    }
}

/// Wild-case identities by direct enumeration over Q_p.
struct WildMassSuite;

impl VerifySuite for WildMassSuite {
    fn name(&self) -> &'static str {
        "wild-mass"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteReport> {
        let mut checks = Vec::new();
        let mut serre_targets = vec![(2u64, 1u32, 2u32), (3, 1, 2), (2, 1, 3), (3, 1, 3), (5, 1, 2), (2, 2, 2)];
        if ctx.slow {
            serre_targets.push((2, 1, 4));
        }
        for (p, f, e) in serre_targets {
            let inv = ctx.catalog.extensions(p, f, e)?;
            let serre = serre_mass_check(&inv);
            checks.push(row(
                format!("totally ramified mass over (p={p}, f={f}), e={e}: {} classes", inv.extensions.len()),
                serre.ok,
                format!("{} = {}", serre.lhs, serre.rhs),
            ));
        }
        let mut etale_targets = vec![(2u64, 2u32), (3, 2), (2, 3), (3, 3)];
        if ctx.slow {
            etale_targets.push((2, 4));
        }
        for (p, n) in etale_targets {
            let b = bhargava_check(&ctx.catalog, p, n)?;
            checks.push(row(
                format!("etale mass (p={p}, n={n})"),
                b.ok,
                format!("{} = {}", b.lhs, b.rhs),
            ));
            let h = wild_hilb_mass(&ctx.catalog, p, n)?;
            checks.push(row(
                format!("wild point-count identity (p={p}, n={n})"),
                h.ok,
                format!("{} = {}", h.lhs, h.rhs),
            ));
            if n <= 3 {
                for pt in enumerate_partitions(n) {
                    let c = per_partition_mass(&ctx.catalog, p, n, &pt)?;
                    checks.push(row(
                        format!("per-partition mass (p={p}, n={n}, partition {pt})"),
                        c.ok,
                        format!("{} = {}", c.lhs, c.rhs),
                    ));
                }
            }
        }
        Ok(SuiteReport { suite: self.name(), checks })
    }
}

/// Randomized per-class comparison identities and the Jordan-block sweep.
struct ComparisonsSuite;

impl VerifySuite for ComparisonsSuite {
    fn name(&self) -> &'static str {
        "comparisons"
    }

    fn run(&self, _ctx: &SuiteContext) -> Result<SuiteReport> {
        let mut checks = Vec::new();
        for report in comparison_property_suite(256, 0x6d61_7373) {
            checks.push(row(
                format!("{} ({} cases)", report.name, report.cases),
                report.ok,
                report.failures.join("; "),
            ));
        }
        for report in jordan_block_suite() {
            checks.push(row(
                format!("{} ({} cases)", report.name, report.cases),
                report.ok,
                report.failures.join("; "),
            ));
        }
        Ok(SuiteReport { suite: self.name(), checks })
    }
}
