//! Arithmetic in totally ramified extensions `L = W[x]/(g)` of an
//! unramified base, for Eisenstein `g`, and root counting of base
//! polynomials inside `L`.
//!
//! Elements are vectors of base-ring coefficients of `1, pi, .., pi^{e-1}`.
//! Since the valuations `e v(c_i) + i` are distinct across coordinates, the
//! valuation of an element is exactly their minimum, as long as it is
//! visible at the working precision.
//!
//! Division by powers of `pi` costs base-precision digits. The root counter
//! tracks the remaining precision explicitly and reports
//! `PrecisionExhausted` instead of returning an unreliable count; callers
//! retry at a higher precision.

use super::zq::{Zq, ZqCtx};
use super::wpoly::WPoly;
use super::PadicError;

/// An element of `L`: coefficients of `1, pi, .., pi^{e-1}`.
pub type LElem = Vec<Zq>;

/// A totally ramified extension context at a fixed working precision.
#[derive(Debug, Clone)]
pub struct ExtCtx {
    base: ZqCtx,
    e: usize,
    /// Eisenstein coefficients `a_0..a_{e-1}` of the defining polynomial.
    eis: Vec<Zq>,
    /// `r_i = a_i / p`, exact.
    r: Vec<Zq>,
    /// Inverse of the unit `u = -(r_0 + r_1 pi + ..)` with `pi^e = p u`.
    inv_u: LElem,
}

impl ExtCtx {
    /// Wraps an Eisenstein polynomial `x^e + a_{e-1} x^{e-1} + .. + a_0`
    /// over the base. Requires `v(a_i) >= 1`, `v(a_0) = 1` and base
    /// precision at least 2.
    pub fn new(base: ZqCtx, eis: Vec<Zq>) -> Result<ExtCtx, PadicError> {
        if base.prec() < 2 {
            return Err(PadicError::PrecisionExhausted);
        }
        let e = eis.len();
        if e == 0 {
            return Err(PadicError::InvalidInput("degree must be positive".into()));
        }
        for (i, a) in eis.iter().enumerate() {
            match base.val(a) {
                Some(v) if v >= 1 => {
                    if i == 0 && v != 1 {
                        return Err(PadicError::InvalidInput(
                            "constant term must have valuation exactly 1".into(),
                        ));
                    }
                }
                Some(_) => {
                    return Err(PadicError::InvalidInput(format!(
                        "coefficient a_{i} is a unit; polynomial is not Eisenstein"
                    )));
                }
                None if i == 0 => {
                    return Err(PadicError::InvalidInput(
                        "constant term vanishes at working precision".into(),
                    ));
                }
                None => {}
            }
        }
        let r: Vec<Zq> = eis.iter().map(|a| base.div_exact_p(a, 1)).collect();
        let mut ctx = ExtCtx { base, e, eis, r, inv_u: Vec::new() };
        let u = ctx.unit_u();
        ctx.inv_u = ctx.inv(&u).expect("u is a unit since r_0 is");
        Ok(ctx)
    }

    /// `u = pi^e / p = -(r_0 + r_1 pi + .. + r_{e-1} pi^{e-1})`.
    fn unit_u(&self) -> LElem {
        self.r.iter().map(|c| self.base.neg(c)).collect()
    }

    pub fn base(&self) -> &ZqCtx {
        &self.base
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn eisenstein(&self) -> &[Zq] {
        &self.eis
    }

    /// The same extension at lower precision; data truncates coherently.
    pub fn with_prec(&self, prec: u32) -> Result<ExtCtx, PadicError> {
        if prec < 2 {
            return Err(PadicError::PrecisionExhausted);
        }
        let base = self.base.with_prec(prec)?;
        let eis = self.eis.iter().map(|c| base.truncate(c)).collect();
        ExtCtx::new(base, eis)
    }

    pub fn zero(&self) -> LElem {
        vec![self.base.zero(); self.e]
    }

    pub fn one(&self) -> LElem {
        self.from_base(&self.base.one())
    }

    pub fn from_base(&self, c: &Zq) -> LElem {
        let mut z = self.zero();
        z[0] = c.clone();
        z
    }

    /// The uniformizer as an element (for `e = 1` this is `-a_0 = p u`).
    pub fn pi(&self) -> LElem {
        if self.e == 1 {
            return vec![self.base.neg(&self.eis[0])];
        }
        let mut z = self.zero();
        z[1] = self.base.one();
        z
    }

    pub fn is_zero(&self, x: &LElem) -> bool {
        x.iter().all(|c| self.base.is_zero(c))
    }

    pub fn add(&self, x: &LElem, y: &LElem) -> LElem {
        x.iter().zip(y).map(|(a, b)| self.base.add(a, b)).collect()
    }

    pub fn sub(&self, x: &LElem, y: &LElem) -> LElem {
        x.iter().zip(y).map(|(a, b)| self.base.sub(a, b)).collect()
    }

    pub fn neg(&self, x: &LElem) -> LElem {
        x.iter().map(|a| self.base.neg(a)).collect()
    }

    pub fn mul(&self, x: &LElem, y: &LElem) -> LElem {
        let e = self.e;
        if e == 1 {
            return vec![self.base.mul(&x[0], &y[0])];
        }
        let mut wide = vec![self.base.zero(); 2 * e - 1];
        for (i, a) in x.iter().enumerate() {
            if self.base.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                let prod = self.base.mul(a, b);
                wide[i + j] = self.base.add(&wide[i + j], &prod);
            }
        }
        // reduce via pi^e = -(a_0 + a_1 pi + ..)
        for k in (e..2 * e - 1).rev() {
            let top = wide[k].clone();
            if self.base.is_zero(&top) {
                continue;
            }
            wide[k] = self.base.zero();
            for (i, a) in self.eis.iter().enumerate() {
                let sub = self.base.mul(&top, a);
                wide[k - e + i] = self.base.sub(&wide[k - e + i], &sub);
            }
        }
        wide.truncate(e);
        wide
    }

    pub fn scalar_mul(&self, x: &LElem, c: &Zq) -> LElem {
        x.iter().map(|a| self.base.mul(a, c)).collect()
    }

    /// `min_i (e v(c_i) + i)`, exact whenever some coordinate is nonzero at
    /// working precision. `None` means valuation at least `e * prec`.
    pub fn val(&self, x: &LElem) -> Option<u64> {
        x.iter()
            .enumerate()
            .filter_map(|(i, c)| self.base.val(c).map(|v| self.e as u64 * v as u64 + i as u64))
            .min()
    }

    /// Residue in `F_q`: the constant coordinate mod p.
    pub fn residue(&self, x: &LElem) -> Zq {
        self.base.residue(&x[0])
    }

    /// Inverse of a unit (valuation 0), by Newton from the residue inverse.
    pub fn inv(&self, x: &LElem) -> Option<LElem> {
        if self.val(x) != Some(0) {
            return None;
        }
        let res_inv = self.base.fq_inv(&self.residue(x))?;
        let mut z = self.from_base(&res_inv);
        let two = self.from_base(&self.base.from_u64(2));
        let target = (self.e as u64) * (self.base.prec() as u64);
        let mut gain = 1u64;
        while gain < target {
            let xz = self.mul(x, &z);
            z = self.mul(&z, &self.sub(&two, &xz));
            gain *= 2;
        }
        debug_assert!(self.is_zero(&self.sub(&self.mul(x, &z), &self.one())));
        Some(z)
    }

    /// Exact division by `pi^m` for an element of valuation at least `m`.
    /// Returns the quotient and the number of base-precision digits lost;
    /// the result is valid in a context reduced by that many digits.
    pub fn div_by_pi_pow(&self, x: &LElem, m: u64) -> (LElem, u32) {
        if m == 0 {
            return (x.clone(), 0);
        }
        let e = self.e as u64;
        let q = m.div_ceil(e);
        let s = q * e - m;
        // x / pi^m = x pi^s u^{-q} / p^q
        let mut y = x.clone();
        let pi = self.pi();
        for _ in 0..s {
            y = self.mul(&y, &pi);
        }
        for _ in 0..q {
            y = self.mul(&y, &self.inv_u);
        }
        let y = y
            .iter()
            .map(|c| self.base.div_exact_p(c, q as u32))
            .collect();
        (y, q as u32)
    }
}

/// Counts the roots in `O_L` of a polynomial with base-ring coefficients.
///
/// This walks residue roots and recurses into multiple ones through the
/// substitution `x -> beta + pi x`, normalizing by powers of `pi` as it
/// goes. Insufficient working precision surfaces as `PrecisionExhausted`.
pub fn panayi_root_count(g: &WPoly, ext: &ExtCtx) -> Result<u64, PadicError> {
    let poly: Vec<LElem> = g.iter().map(|c| ext.from_base(c)).collect();
    let step_cap = 64 + 8 * (ext.e() as u64) * (ext.base().prec() as u64) * (g.len() as u64);
    let mut steps = 0u64;
    let mut total = 0u64;
    let mut stack: Vec<(ExtCtx, Vec<LElem>)> = vec![(ext.clone(), poly)];
    while let Some((ctx, mut h)) = stack.pop() {
        steps += 1;
        if steps > step_cap {
            return Err(PadicError::PrecisionExhausted);
        }
        // normalize: divide out the content pi^m
        let m = h.iter().filter_map(|c| ctx.val(c)).min();
        let Some(m) = m else {
            // the polynomial vanishes at working precision
            return Err(PadicError::PrecisionExhausted);
        };
        let ctx = if m > 0 {
            let mut lost = 0;
            let mut reduced = Vec::with_capacity(h.len());
            for c in &h {
                let (y, q) = ctx.div_by_pi_pow(c, m);
                lost = q;
                reduced.push(y);
            }
            let new_prec = ctx.base().prec().saturating_sub(lost);
            if new_prec < 3 {
                return Err(PadicError::PrecisionExhausted);
            }
            let ctx2 = ctx.with_prec(new_prec)?;
            h = reduced
                .iter()
                .map(|c| c.iter().map(|z| ctx2.base().truncate(z)).collect())
                .collect();
            ctx2
        } else {
            ctx
        };
        // residue polynomial over F_q
        let hbar: Vec<Zq> = h.iter().map(|c| ctx.residue(c)).collect();
        let deg = hbar.iter().rposition(|c| !ctx.base().fq_is_zero(c));
        let Some(deg) = deg else {
            return Err(PadicError::PrecisionExhausted);
        };
        if deg == 0 {
            continue; // nonzero constant: no roots on this branch
        }
        // derivative of the residue polynomial
        let hbar_deriv: Vec<Zq> = hbar
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let scalar = ctx.base().from_u64(i as u64);
                ctx.base().fq_mul(c, &ctx.base().residue(&scalar))
            })
            .collect();
        for beta in ctx.base().fq_elements() {
            let value = fq_eval(ctx.base(), &hbar, &beta);
            if !ctx.base().fq_is_zero(&value) {
                continue;
            }
            let deriv = fq_eval(ctx.base(), &hbar_deriv, &beta);
            if !ctx.base().fq_is_zero(&deriv) {
                total += 1; // simple residue root lifts uniquely
                continue;
            }
            // multiple residue root: recurse on h(beta + pi x)
            let beta_lift = ctx.from_base(&ctx.base().from_coords(&beta));
            let mut shifted = h.clone();
            let d = shifted.len() - 1;
            for i in 0..d {
                for j in (i..d).rev() {
                    let add = ctx.mul(&beta_lift, &shifted[j + 1]);
                    shifted[j] = ctx.add(&shifted[j], &add);
                }
            }
            let pi = ctx.pi();
            let mut pi_pow = ctx.one();
            for c in shifted.iter_mut() {
                *c = ctx.mul(c, &pi_pow);
                pi_pow = ctx.mul(&pi_pow, &pi);
            }
            stack.push((ctx.clone(), shifted));
        }
    }
    Ok(total)
}

fn fq_eval(base: &ZqCtx, poly: &[Zq], x: &Zq) -> Zq {
    let mut acc = base.residue(&base.zero());
    for c in poly.iter().rev() {
        acc = base.fq_mul(&acc, x);
        // addition in F_q is coordinatewise mod p
        acc = acc
            .iter()
            .zip(c)
            .map(|(&a, &b)| (a + b) % base.p())
            .collect();
    }
    acc
}
