//! Complete enumeration of the totally ramified degree-`e` extensions of an
//! unramified p-adic base field, via Eisenstein coefficient tuples.
//!
//! Coefficient tuples `(a_0, .., a_{e-1})` with `a_i = p r_i`, `r_i` ranging
//! over base-ring residues mod `p^{B-1}` (and `r_0` a unit), represent every
//! Eisenstein polynomial at the working depth `B`; `B` starts at
//! `ceil(2 d_max / e) + 2`, beyond the Krasner bound, so congruent tuples
//! generate isomorphic extensions.
//!
//! Tuples are collapsed along the substitutions `g(ux + a) / u^e` (`u` a
//! unit, `v(a) >= 1`), which provably preserve the generated extension: the
//! lexicographically first tuple of each orbit is kept as a seed. Seeds are
//! then bucketed by discriminant valuation and merged by the two-sided
//! root-counting isomorphism test. The arithmetic precision `N` used for
//! discriminants, root counts and automorphism counts is doubled until two
//! consecutive precisions give identical `(d, aut, count)` inventories.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::qlaurent::{rat_int, Rat};

use super::ext::{panayi_root_count, ExtCtx};
use super::wpoly::{poly_disc_valuation, WPoly};
use super::zq::{build_unramified, checked_p_pow, is_prime, Zq, ZqCtx, MAX_F};
use super::PadicError;

/// One isomorphism class of totally ramified extensions of the base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFieldExt {
    pub p: u64,
    pub f: u32,
    pub e: u32,
    /// Valuation of the discriminant over the base.
    pub d: u32,
    /// Number of base-fixing automorphisms: roots of the defining
    /// polynomial in the extension itself.
    pub aut: u32,
    /// Eisenstein coefficients `a_0..a_{e-1}` of the minimal representative,
    /// as base-ring coordinate vectors mod `p^B`.
    pub coeffs: Vec<Vec<u64>>,
    /// The coefficient depth `B`.
    #[serde(rename = "B")]
    pub prec_b: u32,
    pub label: String,
}

impl LocalFieldExt {
    /// True iff the extension is tame (`d = e - 1`).
    pub fn is_tame(&self) -> bool {
        self.d == self.e - 1
    }

    /// The defining polynomial over the given base ring (monic, little
    /// endian). The base precision may exceed `B`; any lift of the stored
    /// representative defines the same extension.
    pub fn defining_poly(&self, base: &ZqCtx) -> WPoly {
        let mut g: WPoly = self.coeffs.iter().map(|c| base.from_coords(c)).collect();
        g.push(base.one());
        g
    }

    /// An arithmetic context for this extension at the given precision.
    pub fn ext_ctx(&self, prec: u32) -> Result<ExtCtx, PadicError> {
        let base = build_unramified(self.p, self.f, prec)?;
        let eis = self.coeffs.iter().map(|c| base.from_coords(c)).collect();
        ExtCtx::new(base, eis)
    }
}

/// The complete inventory for one `(p, f, e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inventory {
    pub p: u64,
    pub f: u32,
    pub e: u32,
    pub prec_b: u32,
    /// Arithmetic precision at which the final classification ran.
    pub classified_prec: u32,
    /// Number of Eisenstein coefficient tuples covered.
    pub tuple_count: u128,
    pub extensions: Vec<LocalFieldExt>,
}

/// Mixed-radix addressing of coefficient tuples.
struct TupleSpace {
    e: usize,
    f: usize,
    p: u64,
    /// digits of each residue coordinate run over `[0, R)`, `R = p^{B-1}`
    radix: u64,
    /// `R^f`: index space of one coefficient
    coeff_space: u64,
    /// `(R^f)^e`
    total: u64,
}

impl TupleSpace {
    fn new(p: u64, f: usize, e: usize, b: u32) -> Result<TupleSpace, PadicError> {
        let radix = checked_p_pow(p, b - 1)?;
        let mut coeff_space: u64 = 1;
        for _ in 0..f {
            coeff_space = coeff_space
                .checked_mul(radix)
                .ok_or(PadicError::PrecisionExhausted)?;
        }
        let mut total: u64 = 1;
        for _ in 0..e {
            total = total
                .checked_mul(coeff_space)
                .ok_or(PadicError::PrecisionExhausted)?;
        }
        if total > 1 << 33 {
            return Err(PadicError::BudgetExceeded { needed: total as u128, budget: 1 << 33 });
        }
        Ok(TupleSpace { e, f, p, radix, coeff_space, total })
    }

    /// Eisenstein candidates: `r_0` a unit, other coefficients free.
    fn candidate_count(&self) -> u128 {
        let nonunits = (self.radix / self.p).pow(self.f as u32) as u128;
        let units = (self.coeff_space as u128) - nonunits;
        units * (self.coeff_space as u128).pow(self.e as u32 - 1)
    }

    fn r0_is_unit(&self, idx: u64) -> bool {
        let mut block = idx % self.coeff_space;
        for _ in 0..self.f {
            if (block % self.radix) % self.p != 0 {
                return true;
            }
            block /= self.radix;
        }
        false
    }

    /// Decodes a tuple index into the Eisenstein coefficients `a_i = p r_i`
    /// in the given ring (any precision at least `B`).
    fn decode_eisenstein(&self, ctx: &ZqCtx, idx: u64) -> Vec<Zq> {
        let mut out = Vec::with_capacity(self.e);
        let mut rest = idx;
        for _ in 0..self.e {
            let mut block = rest % self.coeff_space;
            rest /= self.coeff_space;
            let mut coords = Vec::with_capacity(self.f);
            for _ in 0..self.f {
                coords.push(self.p * (block % self.radix));
                block /= self.radix;
            }
            out.push(ctx.from_coords(&coords));
        }
        out
    }

    /// Encodes Eisenstein coefficients back to a tuple index; the inverse of
    /// [`TupleSpace::decode_eisenstein`] at depth `B`.
    fn encode_eisenstein(&self, coeffs: &[Zq]) -> Result<u64, PadicError> {
        let mut idx: u64 = 0;
        for a in coeffs.iter().rev() {
            let mut block: u64 = 0;
            for &c in a.iter().rev() {
                if c % self.p != 0 {
                    return Err(PadicError::Internal(
                        "substitution produced a non-Eisenstein coefficient".into(),
                    ));
                }
                block = block * self.radix + c / self.p;
            }
            idx = idx * self.coeff_space + block;
        }
        Ok(idx)
    }
}

fn vp_u64(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x > 1 && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Taylor shift `g(x + beta)` of a little-endian polynomial over the base.
fn shift_poly(ctx: &ZqCtx, g: &mut [Zq], beta: &Zq) {
    let d = g.len() - 1;
    for i in 0..d {
        for j in (i..d).rev() {
            let add = ctx.mul(beta, &g[j + 1]);
            g[j] = ctx.add(&g[j], &add);
        }
    }
}

/// Enumerates all isomorphism classes of totally ramified degree-`e`
/// extensions of the unramified degree-`f` base over `Q_p`.
pub fn enumerate_extensions(
    p: u64,
    f: u32,
    e: u32,
    budget: u128,
) -> Result<Inventory, PadicError> {
    if !is_prime(p) {
        return Err(PadicError::InvalidInput(format!("{p} is not prime")));
    }
    if f == 0 || f as usize > MAX_F {
        return Err(PadicError::InvalidInput(format!("f = {f} outside 1..={MAX_F}")));
    }
    if e == 0 {
        return Err(PadicError::InvalidInput("e must be positive".into()));
    }
    let d_max = e - 1 + e * vp_u64(e as u64, p);
    let b = (2 * d_max).div_ceil(e) + 2;
    let space = TupleSpace::new(p, f as usize, e as usize, b)?;
    let candidates = space.candidate_count();
    if candidates > budget {
        return Err(PadicError::BudgetExceeded { needed: candidates, budget });
    }
    let ctx_b = build_unramified(p, f, b)?;
    let seeds = discover_orbits(&ctx_b, &space);

    // Classification ladder: double the arithmetic precision until the
    // (d, aut, class count) inventory stabilizes across two runs.
    let mut prev: Option<Vec<(u32, u32)>> = None;
    let mut prec = 2 * b;
    loop {
        match classify(p, f, e, d_max, &space, &seeds, prec) {
            Ok(classes) => {
                let sig: Vec<(u32, u32)> = classes.iter().map(|c| (c.d, c.aut)).collect();
                if prev.as_ref() == Some(&sig) {
                    return Ok(Inventory {
                        p,
                        f,
                        e,
                        prec_b: b,
                        classified_prec: prec,
                        tuple_count: candidates,
                        extensions: classes,
                    });
                }
                prev = Some(sig);
            }
            Err(PadicError::Indeterminate | PadicError::PrecisionExhausted) => {
                prev = None;
            }
            Err(other) => return Err(other),
        }
        prec = prec
            .checked_mul(2)
            .ok_or(PadicError::PrecisionExhausted)?;
        // fail early if the modulus would overflow
        checked_p_pow(p, prec)?;
    }
}

/// Scans the tuple space in ascending order; every unvisited Eisenstein
/// tuple opens an orbit whose affine substitutions `g(ux + a)/u^e` are
/// marked visited. Returns the orbit seeds (each the lexicographic minimum
/// of its orbit, hence of its isomorphism class for the first orbit
/// reaching it).
fn discover_orbits(ctx: &ZqCtx, space: &TupleSpace) -> Vec<u64> {
    let e = space.e;
    let modulus = ctx.modulus();
    // all units of the base ring mod p^B with the powers of their inverses
    let mut unit_inv_pows: Vec<Vec<Zq>> = Vec::new();
    let mut w_space: u64 = 1;
    for _ in 0..space.f {
        w_space *= modulus;
    }
    for widx in 0..w_space {
        let mut coords = Vec::with_capacity(space.f);
        let mut rest = widx;
        for _ in 0..space.f {
            coords.push(rest % modulus);
            rest /= modulus;
        }
        let u = ctx.from_coords(&coords);
        if !ctx.is_unit(&u) {
            continue;
        }
        let inv = ctx.inv(&u).expect("unit inverse");
        let mut pows = Vec::with_capacity(e);
        let mut acc = inv.clone();
        for _ in 0..e {
            pows.push(acc.clone());
            acc = ctx.mul(&acc, &inv);
        }
        unit_inv_pows.push(pows);
    }

    let words = (space.total as usize).div_ceil(64);
    let mut visited = vec![0u64; words];
    let mut seeds = Vec::new();
    let mut poly_buf: Vec<Zq> = vec![ctx.zero(); e + 1];

    for idx in 0..space.total {
        if visited[(idx / 64) as usize] >> (idx % 64) & 1 == 1 {
            continue;
        }
        if !space.r0_is_unit(idx) {
            continue;
        }
        seeds.push(idx);
        let eis = space.decode_eisenstein(ctx, idx);
        // orbit scan: shifts a = p s, then unit scalings
        for shift_block in 0..space.coeff_space {
            let mut coords = Vec::with_capacity(space.f);
            let mut rest = shift_block;
            for _ in 0..space.f {
                coords.push(space.p * (rest % space.radix));
                rest /= space.radix;
            }
            let a = ctx.from_coords(&coords);
            for (i, c) in eis.iter().enumerate() {
                poly_buf[i] = c.clone();
            }
            poly_buf[e] = ctx.one();
            shift_poly(ctx, &mut poly_buf, &a);
            for pows in &unit_inv_pows {
                // b_k = shifted_k * u^{k-e}; b_e = 1
                let transformed: Vec<Zq> = (0..e)
                    .map(|k| ctx.mul(&poly_buf[k], &pows[e - 1 - k]))
                    .collect();
                let target = space
                    .encode_eisenstein(&transformed)
                    .expect("affine substitutions preserve the Eisenstein shape");
                visited[(target / 64) as usize] |= 1 << (target % 64);
            }
        }
    }
    seeds
}

/// Classifies the orbit seeds at arithmetic precision `prec`: discriminant
/// valuations, then the root-counting isomorphism test within each
/// discriminant bucket, then automorphism counts.
fn classify(
    p: u64,
    f: u32,
    e: u32,
    d_max: u32,
    space: &TupleSpace,
    seeds: &[u64],
    prec: u32,
) -> Result<Vec<LocalFieldExt>, PadicError> {
    let ctx_n = build_unramified(p, f, prec)?;
    let ctx_b = build_unramified(p, f, space.radix_prec())?;

    let discs: Vec<u32> = seeds
        .par_iter()
        .map(|&idx| {
            let mut g = space.decode_eisenstein(&ctx_n, idx);
            g.push(ctx_n.one());
            poly_disc_valuation(&ctx_n, &g)
        })
        .collect::<Result<_, _>>()?;

    for &d in &discs {
        if d < e - 1 || d > d_max {
            return Err(PadicError::Internal(format!(
                "discriminant valuation {d} outside the bounds [{}, {d_max}]",
                e - 1
            )));
        }
    }

    // bucket seeds by d, preserving seed order
    let mut buckets: std::collections::BTreeMap<u32, Vec<u64>> = Default::default();
    for (&idx, &d) in seeds.iter().zip(&discs) {
        buckets.entry(d).or_default().push(idx);
    }

    let bucket_results: Vec<Result<Vec<LocalFieldExt>, PadicError>> = buckets
        .par_iter()
        .map(|(&d, bucket)| classify_bucket(p, f, e, d, space, &ctx_n, &ctx_b, bucket))
        .collect();

    let mut classes = Vec::new();
    for r in bucket_results {
        classes.extend(r?);
    }
    Ok(classes)
}

#[allow(clippy::too_many_arguments)]
fn classify_bucket(
    p: u64,
    f: u32,
    e: u32,
    d: u32,
    space: &TupleSpace,
    ctx_n: &ZqCtx,
    ctx_b: &ZqCtx,
    bucket: &[u64],
) -> Result<Vec<LocalFieldExt>, PadicError> {
    struct Rep {
        idx: u64,
        poly: WPoly,
        ext: ExtCtx,
    }
    let mut reps: Vec<Rep> = Vec::new();
    for &idx in bucket {
        let eis = space.decode_eisenstein(ctx_n, idx);
        let mut poly = eis.clone();
        poly.push(ctx_n.one());
        let ext = ExtCtx::new(ctx_n.clone(), eis)?;
        let mut matched = false;
        for rep in &reps {
            let fwd = panayi_root_count(&poly, &rep.ext)? > 0;
            let bwd = panayi_root_count(&rep.poly, &ext)? > 0;
            if fwd != bwd {
                return Err(PadicError::Internal(
                    "isomorphism test asymmetry between two candidates".into(),
                ));
            }
            if fwd {
                matched = true;
                break;
            }
        }
        if !matched {
            reps.push(Rep { idx, poly, ext });
        }
    }
    let mut out = Vec::with_capacity(reps.len());
    for (k, rep) in reps.iter().enumerate() {
        let aut = panayi_root_count(&rep.poly, &rep.ext)?;
        if aut < 1 || aut > e as u64 || e as u64 % aut != 0 {
            return Err(PadicError::Internal(format!(
                "automorphism count {aut} incompatible with degree {e}"
            )));
        }
        let coeffs: Vec<Vec<u64>> = space
            .decode_eisenstein(ctx_b, rep.idx)
            .iter()
            .map(|z| z.iter().copied().collect())
            .collect();
        out.push(LocalFieldExt {
            p,
            f,
            e,
            d,
            aut: aut as u32,
            coeffs,
            prec_b: space.radix_prec(),
            label: format!("{p}-{f}-{e}-{d}-{k}"),
        });
    }
    Ok(out)
}

impl TupleSpace {
    /// The coefficient depth `B` this space was built at.
    fn radix_prec(&self) -> u32 {
        let mut r = self.radix;
        let mut b = 1;
        while r > 1 {
            r /= self.p;
            b += 1;
        }
        b
    }
}

/// Exact two-sided evaluation of the totally ramified mass identity
/// `sum_L 1/#Aut(L/K) q^{-d(L)} = q^{1-e}` over an inventory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreCheck {
    pub lhs: Rat,
    pub rhs: Rat,
    pub ok: bool,
}

pub fn serre_mass_check(inv: &Inventory) -> SerreCheck {
    let q = rat_int(inv.p as i64);
    let q = crate::qlaurent::rational_pow(&q, &rat_int(inv.f as i64)).expect("integer power");
    let mut lhs = Rat::default();
    for ext in &inv.extensions {
        let weight = Rat::new(1.into(), (ext.aut as i64).into());
        let qpow = crate::qlaurent::rational_pow(&q, &rat_int(-(ext.d as i64)))
            .expect("integer power of a rational");
        lhs += weight * qpow;
    }
    let rhs = crate::qlaurent::rational_pow(&q, &rat_int(1 - inv.e as i64))
        .expect("integer power of a rational");
    SerreCheck { ok: lhs == rhs, lhs, rhs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::DEFAULT_TUPLE_BUDGET;

    fn enumerate(p: u64, f: u32, e: u32) -> Inventory {
        enumerate_extensions(p, f, e, DEFAULT_TUPLE_BUDGET).unwrap()
    }

    #[test]
    fn quadratics_of_q2() {
        let inv = enumerate(2, 1, 2);
        assert_eq!(inv.extensions.len(), 6);
        let d2 = inv.extensions.iter().filter(|x| x.d == 2).count();
        let d3 = inv.extensions.iter().filter(|x| x.d == 3).count();
        assert_eq!((d2, d3), (2, 4));
        assert!(inv.extensions.iter().all(|x| x.aut == 2));
        let serre = serre_mass_check(&inv);
        assert!(serre.ok, "lhs = {}, rhs = {}", serre.lhs, serre.rhs);
        assert_eq!(serre.lhs, crate::qlaurent::rat(1, 2));
    }

    #[test]
    fn quadratics_of_odd_p_are_tame() {
        for p in [3u64, 5, 7] {
            let inv = enumerate(p, 1, 2);
            assert_eq!(inv.extensions.len(), 2, "p = {p}");
            assert!(inv.extensions.iter().all(|x| x.d == 1 && x.aut == 2));
            assert!(serre_mass_check(&inv).ok);
        }
    }

    #[test]
    fn tame_cubics_of_q2() {
        // e = 3 is tame over Q_2: every class has d = e - 1 = 2
        let inv = enumerate(2, 1, 3);
        assert!(inv.extensions.iter().all(|x| x.d == 2 && x.is_tame()));
        // gcd(3, q - 1) = 1: a single class with a single automorphism
        assert_eq!(inv.extensions.len(), 1);
        assert_eq!(inv.extensions[0].aut, 1);
        assert!(serre_mass_check(&inv).ok);
    }

    #[test]
    fn trivial_degree_one() {
        for p in [2u64, 5] {
            let inv = enumerate(p, 1, 1);
            assert_eq!(inv.extensions.len(), 1);
            let ext = &inv.extensions[0];
            assert_eq!((ext.d, ext.aut), (0, 1));
            assert!(serre_mass_check(&inv).ok);
        }
    }

    #[test]
    fn budget_rejection() {
        assert!(matches!(
            enumerate_extensions(2, 1, 4, 1000),
            Err(PadicError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn invalid_inputs() {
        assert!(enumerate_extensions(4, 1, 2, 1000).is_err());
        assert!(enumerate_extensions(2, 0, 2, 1000).is_err());
        assert!(enumerate_extensions(2, 1, 0, 1000).is_err());
    }

    #[test]
    fn labels_are_deterministic() {
        let a = enumerate(2, 1, 2);
        let b = enumerate(2, 1, 2);
        assert_eq!(a, b);
        let labels: Vec<&str> = a.extensions.iter().map(|x| x.label.as_str()).collect();
        assert_eq!(labels[0], "2-1-2-2-0");
        assert_eq!(labels[1], "2-1-2-2-1");
        assert_eq!(labels[2], "2-1-2-3-0");
    }

    #[test]
    fn wild_quadratics_over_unramified_quadratic_base() {
        let inv = enumerate(2, 2, 2);
        // Serre: sum 1/aut q^{-d} = q^{-1} = 1/4 over the degree-4 residue
        // field; this pins completeness of the enumeration
        let serre = serre_mass_check(&inv);
        assert!(serre.ok, "lhs = {}, rhs = {}", serre.lhs, serre.rhs);
        assert_eq!(serre.lhs, crate::qlaurent::rat(1, 4));
        assert!(inv.extensions.iter().all(|x| x.aut == 2));
    }
}
