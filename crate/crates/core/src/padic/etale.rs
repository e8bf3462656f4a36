//! Etale algebras over `Q_p`: fields assembled as towers (unramified base,
//! totally ramified top), their absolute invariants, multisets of fields,
//! and the exact mass checks against the closed-form polynomials.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::partitions::{bhargava_rhs, hilbert_origin_count, Partition};
use crate::qlaurent::{rat_int, rational_pow, Rat};

use super::enumerate::LocalFieldExt;
use super::ext::panayi_root_count;
use super::wpoly::{poly_disc_valuation, WPoly};
use super::zq::{build_unramified, Zq, ZqCtx};
use super::{Catalog, PadicError};

/// A finite extension of `Q_p`, described as a totally ramified extension of
/// the unramified subfield of degree `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicField {
    pub p: u64,
    /// Inertia degree.
    pub f: u32,
    /// Ramification degree.
    pub e: u32,
    /// Absolute degree `e f`.
    pub degree: u32,
    /// Valuation of the relative discriminant over the unramified base.
    pub d: u32,
    /// `v_p` of the absolute discriminant: `f d` by the tower formula.
    pub disc_exponent: u32,
    /// Automorphisms over `Q_p`.
    pub aut: u32,
    pub label: String,
    pub ext: LocalFieldExt,
}

/// Counts how many powers of the base Frobenius extend to the extension:
/// `Frob^i` extends iff the coefficientwise-twisted defining polynomial has
/// a root in the extension. The absolute automorphism count is the relative
/// one times this.
fn frobenius_extension_count(ext: &LocalFieldExt, prec: u32) -> Result<u32, PadicError> {
    if ext.f == 1 {
        return Ok(1);
    }
    let ctx = ext.ext_ctx(prec)?;
    let base = ctx.base().clone();
    let mut count = 0;
    let mut twisted: WPoly = ext.defining_poly(&base);
    for _ in 0..ext.f {
        if panayi_root_count(&twisted, &ctx)? > 0 {
            count += 1;
        }
        twisted = twisted.iter().map(|c| base.frobenius(c)).collect();
    }
    if count == 0 || ext.f % count != 0 {
        return Err(PadicError::Internal(format!(
            "{count} Frobenius powers extend; expected a divisor of f = {}",
            ext.f
        )));
    }
    Ok(count)
}

/// True iff `b` is isomorphic to `a` as an extension of `Q_p`: some
/// Frobenius twist of `b`'s defining polynomial has a root in `a`.
fn qp_isomorphic(
    a: &LocalFieldExt,
    b: &LocalFieldExt,
    prec: u32,
) -> Result<bool, PadicError> {
    if (a.e, a.d) != (b.e, b.d) {
        return Ok(false);
    }
    let ctx = a.ext_ctx(prec)?;
    let base = ctx.base().clone();
    let mut twisted = b.defining_poly(&base);
    for _ in 0..a.f {
        if panayi_root_count(&twisted, &ctx)? > 0 {
            return Ok(true);
        }
        twisted = twisted.iter().map(|c| base.frobenius(c)).collect();
    }
    Ok(false)
}

impl Catalog {
    /// All isomorphism classes of degree-`m` field extensions of `Q_p`,
    /// ordered by `(f, label)`.
    ///
    /// For `f >= 2`, distinct extensions of the unramified base can become
    /// isomorphic over `Q_p` by a Frobenius twist; one representative per
    /// twist orbit is kept.
    pub fn fields_of_degree(&self, p: u64, m: u32) -> Result<Arc<Vec<PadicField>>, PadicError> {
        if let Some(fields) = self.fields_memo.lock().unwrap().get(&(p, m)) {
            return Ok(fields.clone());
        }
        let mut out = Vec::new();
        for f in (1..=m).filter(|f| m % f == 0) {
            let e = m / f;
            let inv = self.extensions(p, f, e)?;
            let mut kept: Vec<&LocalFieldExt> = Vec::new();
            for ext in &inv.extensions {
                if f >= 2 && e >= 2 {
                    let mut duplicate = false;
                    for prev in &kept {
                        if qp_isomorphic(prev, ext, inv.classified_prec)? {
                            duplicate = true;
                            break;
                        }
                    }
                    if duplicate {
                        continue;
                    }
                }
                kept.push(ext);
            }
            for ext in kept {
                let frob = frobenius_extension_count(ext, inv.classified_prec)?;
                out.push(PadicField {
                    p,
                    f,
                    e,
                    degree: m,
                    d: ext.d,
                    disc_exponent: f * ext.d,
                    aut: ext.aut * frob,
                    label: ext.label.clone(),
                    ext: ext.clone(),
                });
            }
        }
        let fields = Arc::new(out);
        self.fields_memo.lock().unwrap().insert((p, m), fields.clone());
        Ok(fields)
    }
}

/// An isomorphism class of etale `Q_p`-algebras: a multiset of fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaleAlgebra {
    /// Distinct field factors with multiplicities, in inventory order.
    pub factors: Vec<(PadicField, u32)>,
    pub n: u32,
    /// `v_p` of the absolute discriminant: `sum_i f_i d_i`.
    pub disc_exponent: u32,
    /// Tame part `t = n - sum_i f_i` of the conductor of the defining
    /// permutation representation.
    pub tame_part: u32,
    /// `2 t - disc_exponent`: the weight of the doubled permutation
    /// representation.
    pub weight_two_sigma: i64,
    /// Ramification degrees with inertia multiplicities, sorted.
    pub partition: Partition,
    /// `prod_j m_j! aut_j^{m_j}` over distinct factors.
    pub aut: u128,
    pub label: String,
}

fn algebra_from_multiset(n: u32, factors: &[(PadicField, u32)]) -> EtaleAlgebra {
    let mut disc_exponent = 0u32;
    let mut inertia_sum = 0u32;
    let mut parts: Vec<u32> = Vec::new();
    let mut aut: u128 = 1;
    let mut label_parts = Vec::new();
    for (field, mult) in factors {
        disc_exponent += field.disc_exponent * mult;
        inertia_sum += field.f * mult;
        for _ in 0..field.f * mult {
            parts.push(field.e);
        }
        let factorial: u128 = (1..=*mult as u128).product();
        aut *= factorial * (field.aut as u128).pow(*mult);
        label_parts.push(if *mult == 1 {
            field.label.clone()
        } else {
            format!("{}^{}", field.label, mult)
        });
    }
    let partition = Partition::from_unsorted(parts).expect("field degrees are positive");
    debug_assert_eq!(partition.sum(), n as u64);
    debug_assert_eq!(partition.num_parts(), inertia_sum as usize);
    let tame_part = n - inertia_sum;
    EtaleAlgebra {
        factors: factors.to_vec(),
        n,
        disc_exponent,
        tame_part,
        weight_two_sigma: 2 * tame_part as i64 - disc_exponent as i64,
        partition,
        aut,
        label: label_parts.join(" * "),
    }
}

/// All isomorphism classes of etale `Q_p`-algebras of degree `n`, in a
/// deterministic order.
pub fn enumerate_etale_algebras(
    catalog: &Catalog,
    p: u64,
    n: u32,
) -> Result<Vec<EtaleAlgebra>, PadicError> {
    if n == 0 || n > 6 {
        return Err(PadicError::InvalidInput(format!(
            "etale degree {n} outside the supported range 1..=6"
        )));
    }
    let mut fields: Vec<PadicField> = Vec::new();
    for m in 1..=n {
        fields.extend(catalog.fields_of_degree(p, m)?.iter().cloned());
    }
    // multisets of fields with total degree n, by nondecreasing field index
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32)> = Vec::new();
    fn descend(
        fields: &[PadicField],
        start: usize,
        remaining: u32,
        stack: &mut Vec<(usize, u32)>,
        out: &mut Vec<EtaleAlgebra>,
        n: u32,
    ) {
        if remaining == 0 {
            let factors: Vec<(PadicField, u32)> = stack
                .iter()
                .map(|&(i, m)| (fields[i].clone(), m))
                .collect();
            out.push(algebra_from_multiset(n, &factors));
            return;
        }
        for i in start..fields.len() {
            let deg = fields[i].degree;
            if deg > remaining {
                continue;
            }
            let max_mult = remaining / deg;
            for mult in (1..=max_mult).rev() {
                stack.push((i, mult));
                descend(fields, i + 1, remaining - deg * mult, stack, out, n);
                stack.pop();
            }
        }
    }
    descend(&fields, 0, n, &mut stack, &mut out, n);
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}

/// An exact lhs/rhs comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassCheck {
    pub lhs: Rat,
    pub rhs: Rat,
    pub ok: bool,
}

impl MassCheck {
    fn new(lhs: Rat, rhs: Rat) -> MassCheck {
        MassCheck { ok: lhs == rhs, lhs, rhs }
    }
}

/// `sum_E 1/#Aut(E) p^{-v(d_E)}` over degree-`n` etale algebras against the
/// partition-number polynomial evaluated at `p`.
pub fn bhargava_check(catalog: &Catalog, p: u64, n: u32) -> Result<MassCheck, PadicError> {
    let algebras = enumerate_etale_algebras(catalog, p, n)?;
    let mut lhs = Rat::default();
    for a in &algebras {
        lhs += mass_term(p, a.aut, -(a.disc_exponent as i64));
    }
    let rhs = bhargava_rhs(n)
        .eval_at(&rat_int(p as i64))
        .expect("integer evaluation point");
    Ok(MassCheck::new(lhs, rhs))
}

/// The refinement of the mass formula to algebras of a fixed ramification
/// partition: the mass is `p^{-m}` with `m = n - #parts`.
pub fn per_partition_mass(
    catalog: &Catalog,
    p: u64,
    n: u32,
    partition: &Partition,
) -> Result<MassCheck, PadicError> {
    if partition.sum() != n as u64 {
        return Err(PadicError::InvalidInput(format!(
            "partition {partition} does not sum to {n}"
        )));
    }
    let algebras = enumerate_etale_algebras(catalog, p, n)?;
    let mut lhs = Rat::default();
    for a in &algebras {
        if a.partition == *partition {
            lhs += mass_term(p, a.aut, -(a.disc_exponent as i64));
        }
    }
    let m = n as i64 - partition.num_parts() as i64;
    let rhs = rational_pow(&rat_int(p as i64), &rat_int(-m)).expect("integer power");
    Ok(MassCheck::new(lhs, rhs))
}

/// The wild point-count identity: `sum_E 1/#Aut(E) p^{2t - a}` equals the
/// origin-supported point count polynomial evaluated at `p`.
pub fn wild_hilb_mass(catalog: &Catalog, p: u64, n: u32) -> Result<MassCheck, PadicError> {
    let algebras = enumerate_etale_algebras(catalog, p, n)?;
    let mut lhs = Rat::default();
    for a in &algebras {
        lhs += mass_term(p, a.aut, a.weight_two_sigma);
    }
    let rhs = hilbert_origin_count(n)
        .eval_at(&rat_int(p as i64))
        .expect("integer evaluation point");
    Ok(MassCheck::new(lhs, rhs))
}

fn mass_term(p: u64, aut: u128, exponent: i64) -> Rat {
    let weight = Rat::new(1.into(), num::BigInt::from(aut));
    let qpow = rational_pow(&rat_int(p as i64), &rat_int(exponent)).expect("integer power");
    weight * qpow
}

/// `v_p(disc(charpoly(mult by theta)))` for `theta = pi + c omega`, the
/// standard monogenic generator candidates of the tower. A value that
/// matches `f d` witnesses both the tower formula for the absolute
/// discriminant and the monogenicity of that `theta`.
pub fn monogenic_disc_valuation(ext: &LocalFieldExt, prec: u32) -> Result<u32, PadicError> {
    let ctx = ext.ext_ctx(prec)?;
    let base = ctx.base().clone();
    let scalars = build_unramified(ext.p, 1, prec)?;
    let mut best: Option<u32> = None;
    for c in 1..=ext.p.min(4) {
        // theta = pi + c omega
        let mut theta = ctx.pi();
        theta[0] = base.add(&theta[0], &base.scalar_mul(&base.omega(), c));
        let m = ext.e as usize * ext.f as usize;
        // multiplication matrix on the basis omega^j pi^i
        let mut matrix = vec![vec![scalars.zero(); m]; m];
        for i in 0..ext.e as usize {
            for j in 0..ext.f as usize {
                let col = i * ext.f as usize + j;
                let mut basis = ctx.zero();
                let mut omega_pow = base.one();
                for _ in 0..j {
                    omega_pow = base.mul(&omega_pow, &base.omega());
                }
                basis[i] = omega_pow;
                let image = ctx.mul(&theta, &basis);
                for (ii, coeff) in image.iter().enumerate() {
                    for (jj, &scalar) in coeff.iter().enumerate() {
                        matrix[ii * ext.f as usize + jj][col] = scalars.from_u64(scalar);
                    }
                }
            }
        }
        let charpoly = super::wpoly::berkowitz_charpoly(&scalars, &matrix);
        // berkowitz returns leading-first; disc wants little-endian monic
        let g: WPoly = charpoly.into_iter().rev().collect();
        match poly_disc_valuation(&scalars, &g) {
            Ok(v) => best = Some(best.map_or(v, |b: u32| b.min(v))),
            Err(PadicError::Indeterminate) => continue, // theta not a generator
            Err(other) => return Err(other),
        }
    }
    best.ok_or(PadicError::Indeterminate)
}

/// Helper used by tests and reports: the defining polynomial of a field
/// factor over its own unramified base.
pub fn relative_defining_poly(ext: &LocalFieldExt, base: &ZqCtx) -> Vec<Zq> {
    ext.defining_poly(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::wpoly::trace_form_disc_valuation;
    use crate::qlaurent::rat;

    fn catalog() -> Catalog {
        Catalog::in_memory()
    }

    #[test]
    fn fields_of_degree_two() {
        let cat = catalog();
        // Q_2: unramified quadratic + 6 ramified quadratics
        let fields = cat.fields_of_degree(2, 2).unwrap();
        assert_eq!(fields.len(), 7);
        let unram = fields.iter().find(|f| f.e == 1).unwrap();
        assert_eq!(unram.aut, 2);
        assert_eq!(unram.disc_exponent, 0);
        // ramified quadratics are Galois: 2 automorphisms, disc exponent d
        for f in fields.iter().filter(|f| f.e == 2) {
            assert_eq!(f.aut, 2);
            assert_eq!(f.disc_exponent, f.d);
        }
        // Q_5: unramified + 2 tame ramified
        let fields5 = cat.fields_of_degree(5, 2).unwrap();
        assert_eq!(fields5.len(), 3);
    }

    #[test]
    fn degree_one_algebra() {
        let cat = catalog();
        for p in [2u64, 3, 5] {
            let algebras = enumerate_etale_algebras(&cat, p, 1).unwrap();
            assert_eq!(algebras.len(), 1);
            assert_eq!(algebras[0].disc_exponent, 0);
            assert_eq!(algebras[0].aut, 1);
            assert_eq!(algebras[0].partition.parts(), &[1]);
        }
    }

    #[test]
    fn quadratic_algebras_of_q2() {
        let cat = catalog();
        let algebras = enumerate_etale_algebras(&cat, 2, 2).unwrap();
        // split, unramified quadratic, 6 ramified quadratics
        assert_eq!(algebras.len(), 8);
        let split = algebras.iter().find(|a| a.factors.len() == 1 && a.factors[0].1 == 2);
        assert_eq!(split.unwrap().aut, 2);
        let (p11, p2): (Vec<_>, Vec<_>) =
            algebras.iter().partition(|a| a.partition.parts() == [1, 1]);
        assert_eq!(p11.len(), 2); // split and unramified
        assert_eq!(p2.len(), 6); // the ramified quadratic fields
    }

    #[test]
    fn quadratic_algebras_of_q5() {
        let cat = catalog();
        let algebras = enumerate_etale_algebras(&cat, 5, 2).unwrap();
        assert_eq!(algebras.len(), 4);
    }

    #[test]
    fn bhargava_small() {
        let cat = catalog();
        let c22 = bhargava_check(&cat, 2, 2).unwrap();
        assert!(c22.ok, "lhs = {}, rhs = {}", c22.lhs, c22.rhs);
        assert_eq!(c22.lhs, rat(3, 2));
        let c52 = bhargava_check(&cat, 5, 2).unwrap();
        assert!(c52.ok);
        assert_eq!(c52.lhs, rat(6, 5));
        for p in [2u64, 3, 7] {
            let c = bhargava_check(&cat, p, 1).unwrap();
            assert!(c.ok);
            assert_eq!(c.lhs, rat(1, 1));
        }
    }

    #[test]
    fn wild_hilb_small() {
        let cat = catalog();
        let h22 = wild_hilb_mass(&cat, 2, 2).unwrap();
        assert!(h22.ok, "lhs = {}, rhs = {}", h22.lhs, h22.rhs);
        assert_eq!(h22.lhs, rat(3, 1));
        let h52 = wild_hilb_mass(&cat, 5, 2).unwrap();
        assert!(h52.ok);
        assert_eq!(h52.lhs, rat(6, 1));
    }

    #[test]
    fn per_partition_small() {
        let cat = catalog();
        // all-ones partition: unramified algebras, total mass 1
        for (p, n) in [(2u64, 2u32), (5, 2), (2, 3)] {
            let pt = Partition::new(vec![1; n as usize], n).unwrap();
            let check = per_partition_mass(&cat, p, n, &pt).unwrap();
            assert!(check.ok, "p={p} n={n}: {} vs {}", check.lhs, check.rhs);
            assert_eq!(check.lhs, rat(1, 1));
        }
        // the ramified quadratic block of Q_2 has mass 1/2
        let pt2 = Partition::new(vec![2], 2).unwrap();
        let check = per_partition_mass(&cat, 2, 2, &pt2).unwrap();
        assert!(check.ok);
        assert_eq!(check.lhs, rat(1, 2));
        // mismatched partition sum is rejected
        assert!(per_partition_mass(&cat, 2, 3, &pt2).is_err());
    }

    #[test]
    fn tower_formula_on_quadratic_towers() {
        // For quadratic extensions of the unramified quadratic base, some
        // theta = pi + c omega generates the integers; the absolute
        // discriminant valuation then equals f * d.
        let cat = catalog();
        for p in [2u64, 3] {
            let inv = cat.extensions(p, 2, 2).unwrap();
            for ext in &inv.extensions {
                let v = monogenic_disc_valuation(ext, inv.classified_prec).unwrap();
                assert_eq!(v, 2 * ext.d, "p = {p}, ext = {}", ext.label);
            }
        }
    }

    #[test]
    fn relative_disc_dual_route() {
        // the trace-form Gram determinant reproduces every enumerated d
        let cat = catalog();
        for (p, f, e) in [(2u64, 1u32, 2u32), (3, 1, 2), (2, 1, 3), (5, 1, 2)] {
            let inv = cat.extensions(p, f, e).unwrap();
            let base = build_unramified(p, f, inv.classified_prec).unwrap();
            for ext in &inv.extensions {
                let g = ext.defining_poly(&base);
                assert_eq!(
                    trace_form_disc_valuation(&base, &g).unwrap(),
                    ext.d,
                    "ext = {}",
                    ext.label
                );
            }
        }
    }

    #[test]
    fn algebra_counts_frozen() {
        let cat = catalog();
        assert_eq!(enumerate_etale_algebras(&cat, 2, 3).unwrap().len(), 10);
        // determinism of the full assembly
        let a = enumerate_etale_algebras(&cat, 2, 3).unwrap();
        let b = enumerate_etale_algebras(&cat, 2, 3).unwrap();
        assert_eq!(a, b);
    }
}
