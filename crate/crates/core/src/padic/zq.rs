//! Truncated arithmetic in unramified extensions of Z_p.
//!
//! A [`ZqCtx`] is the ring `W/(p^N)` with `W = Z_p[x]/(h(x))` for a monic
//! degree-`f` polynomial `h` that is irreducible mod `p`. Elements are
//! coefficient vectors of length `f` with entries in `[0, p^N)`. The residue
//! field is `F_q` with `q = p^f`; an element is a unit iff some coefficient
//! is a p-adic unit, and the valuation of an element is the minimum of the
//! coefficient valuations.
//!
//! Moduli are kept inside `u64` (`p^N <= 2^62`), with `u128` intermediates;
//! requesting more precision than that fails with `PrecisionExhausted`.

use arrayvec::ArrayVec;

use super::PadicError;

/// Maximum supported inertia degree of a base ring.
pub const MAX_F: usize = 8;

/// Largest allowed modulus `p^N`.
const MAX_MODULUS: u64 = 1 << 62;

/// An element of `W/(p^N)`: coefficients of `1, w, .., w^{f-1}`.
pub type Zq = ArrayVec<u64, MAX_F>;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn vp(mut x: u64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

pub fn checked_p_pow(p: u64, n: u32) -> Result<u64, PadicError> {
    let mut m: u64 = 1;
    for _ in 0..n {
        m = m
            .checked_mul(p)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or(PadicError::PrecisionExhausted)?;
    }
    Ok(m)
}

/// The ring `W/(p^N)` with its precomputed reduction data.
#[derive(Debug, Clone)]
pub struct ZqCtx {
    p: u64,
    f: usize,
    prec: u32,
    modulus: u64,
    /// Lower coefficients `c_0..c_{f-1}` of the monic defining polynomial,
    /// lifted with entries in `{0..p-1}`.
    defining: ArrayVec<u64, MAX_F>,
    /// `-c_i mod p^N`, used for degree reduction.
    neg_defining: ArrayVec<u64, MAX_F>,
    /// Image of `w` under the Frobenius lift (None when `f = 1`).
    frob_omega: Option<Zq>,
}

impl ZqCtx {
    /// Builds `W/(p^N)` for the given defining polynomial lower
    /// coefficients (entries in `{0..p-1}`).
    pub fn new(p: u64, defining: &[u64], prec: u32) -> Result<ZqCtx, PadicError> {
        let f = defining.len();
        if f == 0 || f > MAX_F {
            return Err(PadicError::InvalidInput(format!(
                "inertia degree {f} outside 1..={MAX_F}"
            )));
        }
        if prec == 0 {
            return Err(PadicError::InvalidInput("precision must be positive".into()));
        }
        let modulus = checked_p_pow(p, prec)?;
        let mut ctx = ZqCtx {
            p,
            f,
            prec,
            modulus,
            defining: defining.iter().copied().collect(),
            neg_defining: defining
                .iter()
                .map(|&c| (modulus - c % modulus) % modulus)
                .collect(),
            frob_omega: None,
        };
        if f > 1 {
            ctx.frob_omega = Some(ctx.compute_frob_omega());
        }
        Ok(ctx)
    }

    /// The same ring at a different precision.
    pub fn with_prec(&self, prec: u32) -> Result<ZqCtx, PadicError> {
        ZqCtx::new(self.p, &self.defining, prec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn defining(&self) -> &[u64] {
        &self.defining
    }

    /// Residue field cardinality `q = p^f`.
    pub fn residue_cardinality(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    pub fn zero(&self) -> Zq {
        let mut z = Zq::new();
        for _ in 0..self.f {
            z.push(0);
        }
        z
    }

    pub fn one(&self) -> Zq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> Zq {
        let mut z = self.zero();
        z[0] = c % self.modulus;
        z
    }

    pub fn from_i64(&self, c: i64) -> Zq {
        let m = self.modulus as i128;
        let r = ((c as i128 % m) + m) % m;
        self.from_u64(r as u64)
    }

    pub fn from_coords(&self, coords: &[u64]) -> Zq {
        debug_assert_eq!(coords.len(), self.f);
        coords.iter().map(|&c| c % self.modulus).collect()
    }

    /// The ring generator `w` (equals 0 when `f = 1`, where `h = x`).
    pub fn omega(&self) -> Zq {
        if self.f == 1 {
            return self.zero();
        }
        let mut z = self.zero();
        z[1] = 1;
        z
    }

    pub fn is_zero(&self, a: &Zq) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Zq, b: &Zq) -> Zq {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.modulus {
                    s - self.modulus
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn sub(&self, a: &Zq, b: &Zq) -> Zq {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| if x >= y { x - y } else { x + self.modulus - y })
            .collect()
    }

    pub fn neg(&self, a: &Zq) -> Zq {
        a.iter()
            .map(|&x| if x == 0 { 0 } else { self.modulus - x })
            .collect()
    }

    pub fn mul(&self, a: &Zq, b: &Zq) -> Zq {
        let m = self.modulus as u128;
        if self.f == 1 {
            let mut z = Zq::new();
            z.push((a[0] as u128 * b[0] as u128 % m) as u64);
            return z;
        }
        let mut wide = [0u128; 2 * MAX_F];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                wide[i + j] = (wide[i + j] + x as u128 * y as u128) % m;
            }
        }
        // reduce degrees >= f via x^f = -(c_0 + .. + c_{f-1} x^{f-1})
        for k in (self.f..2 * self.f - 1).rev() {
            let top = wide[k];
            if top == 0 {
                continue;
            }
            wide[k] = 0;
            for (i, &nc) in self.neg_defining.iter().enumerate() {
                wide[k - self.f + i] = (wide[k - self.f + i] + top * nc as u128) % m;
            }
        }
        wide[..self.f].iter().map(|&c| c as u64).collect()
    }

    pub fn scalar_mul(&self, a: &Zq, c: u64) -> Zq {
        let m = self.modulus as u128;
        a.iter().map(|&x| (x as u128 * c as u128 % m) as u64).collect()
    }

    pub fn pow(&self, a: &Zq, mut k: u64) -> Zq {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `min_i v_p(a_i)`, or `None` when the element is 0 mod `p^N` (true
    /// valuation at least `N`).
    pub fn val(&self, a: &Zq) -> Option<u32> {
        a.iter().filter_map(|&c| vp(c, self.p)).min()
    }

    pub fn is_unit(&self, a: &Zq) -> bool {
        self.val(a) == Some(0)
    }

    /// Coefficients mod p: the image in the residue field `F_q`.
    pub fn residue(&self, a: &Zq) -> Zq {
        a.iter().map(|&c| c % self.p).collect()
    }

    /// Inverse of a unit by lifting the residue-field inverse.
    pub fn inv(&self, a: &Zq) -> Option<Zq> {
        if !self.is_unit(a) {
            return None;
        }
        let res_inv = self.fq_inv(&self.residue(a))?;
        let mut z = res_inv;
        let two = self.from_u64(2);
        let iters = 32 - (self.prec - 1).leading_zeros() + 1;
        for _ in 0..iters {
            let az = self.mul(a, &z);
            z = self.mul(&z, &self.sub(&two, &az));
        }
        debug_assert!(self.is_zero(&self.sub(&self.mul(a, &z), &self.one())));
        Some(z)
    }

    /// Exact division by `p^k`, valid for results taken mod `p^{N-k}`.
    /// Requires every coefficient divisible by `p^k`.
    pub fn div_exact_p(&self, a: &Zq, k: u32) -> Zq {
        let d = self.p.pow(k);
        a.iter()
            .map(|&c| {
                debug_assert_eq!(c % d, 0, "exact division by p^{k}");
                c / d
            })
            .collect()
    }

    /// Truncates an element of a higher-precision incarnation of this ring.
    pub fn truncate(&self, a: &Zq) -> Zq {
        a.iter().map(|&c| c % self.modulus).collect()
    }

    /// Evaluates a polynomial with coefficients in this ring by Horner.
    pub fn eval_poly(&self, coeffs: &[Zq], x: &Zq) -> Zq {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// The canonical Frobenius lift: fixes `Z_p` scalars and sends `w` to
    /// the root of the defining polynomial congruent to `w^p`.
    pub fn frobenius(&self, a: &Zq) -> Zq {
        let Some(fw) = &self.frob_omega else {
            return a.clone();
        };
        // a = sum a_i w^i with scalar a_i
        let mut acc = self.zero();
        for &c in a.iter().rev() {
            acc = self.mul(&acc, fw);
            acc = self.add(&acc, &self.from_u64(c));
        }
        acc
    }

    fn compute_frob_omega(&self) -> Zq {
        // Newton iteration on h from the residue root w^p.
        let mut r = self.pow(&self.omega(), self.p);
        let iters = 32 - (self.prec - 1).leading_zeros() + 2;
        for _ in 0..iters {
            let hr = self.eval_defining(&r);
            if self.is_zero(&hr) {
                break;
            }
            let hpr = self.eval_defining_derivative(&r);
            let inv = self.inv(&hpr).expect("h' is a unit at a simple residue root");
            r = self.sub(&r, &self.mul(&hr, &inv));
        }
        debug_assert!(self.is_zero(&self.eval_defining(&r)));
        r
    }

    fn eval_defining(&self, x: &Zq) -> Zq {
        // h(x) = x^f + sum c_i x^i
        let mut acc = self.one();
        for i in (0..self.f).rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.from_u64(self.defining[i]));
        }
        acc
    }

    fn eval_defining_derivative(&self, x: &Zq) -> Zq {
        // h'(x) = f x^{f-1} + sum_{i>=1} i c_i x^{i-1}
        let mut acc = self.from_u64(self.f as u64);
        for i in (1..self.f).rev() {
            acc = self.mul(&acc, x);
            let c = mulmod(i as u64 % self.modulus, self.defining[i], self.modulus);
            acc = self.add(&acc, &self.from_u64(c));
        }
        acc
    }

    // ----- residue field F_q = F_p[x]/(h mod p) -----

    pub fn fq_is_zero(&self, a: &Zq) -> bool {
        a.iter().all(|&c| c % self.p == 0)
    }

    pub fn fq_mul(&self, a: &Zq, b: &Zq) -> Zq {
        let hbar: Vec<u64> = self.defining.iter().map(|&c| c % self.p).collect();
        let mut wide = vec![0u64; 2 * self.f];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                wide[i + j] = (wide[i + j] + mulmod(x % self.p, y % self.p, self.p)) % self.p;
            }
        }
        for k in (self.f..2 * self.f - 1).rev() {
            let top = wide[k];
            if top == 0 {
                continue;
            }
            wide[k] = 0;
            for (i, &c) in hbar.iter().enumerate() {
                let sub = mulmod(top, c, self.p);
                wide[k - self.f + i] = (wide[k - self.f + i] + self.p - sub) % self.p;
            }
        }
        wide[..self.f].iter().copied().collect()
    }

    pub fn fq_inv(&self, a: &Zq) -> Option<Zq> {
        if self.fq_is_zero(a) {
            return None;
        }
        if self.f == 1 {
            let mut z = Zq::new();
            z.push(mod_pow(a[0] % self.p, self.p - 2, self.p));
            return Some(z);
        }
        // a^(q-2) in F_q
        let q = self.residue_cardinality();
        let mut acc = self.residue(&self.one());
        let mut base = self.residue(a);
        let mut k = q - 2;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.fq_mul(&acc, &base);
            }
            base = self.fq_mul(&base, &base);
            k >>= 1;
        }
        Some(acc)
    }

    /// All `q` residue-field elements, as coefficient vectors mod `p`.
    pub fn fq_elements(&self) -> Vec<Zq> {
        let q = self.residue_cardinality();
        (0..q)
            .map(|mut idx| {
                let mut z = Zq::new();
                for _ in 0..self.f {
                    z.push(idx % self.p);
                    idx /= self.p;
                }
                z
            })
            .collect()
    }
}

// ----- F_p[x] helpers for the irreducibility test -----

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // remainder of a by monic b
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let sub = mulmod(lead, c, p);
                let idx = i + shift;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        fp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], h: &[u64], p: u64) -> Vec<u64> {
    let mut wide = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            wide[i + j] = (wide[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_rem(&wide, h, p)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        // make y monic for fp_rem
        let lead_inv = mod_pow(y[y.len() - 1], p - 2, p);
        let monic: Vec<u64> = y.iter().map(|&c| mulmod(c, lead_inv, p)).collect();
        let r = fp_rem(&x, &monic, p);
        x = y;
        y = r;
    }
    x
}

/// `x^p mod h` iterated `k` times: `x^{p^k} mod h`.
fn fp_iterated_p_power(h: &[u64], p: u64, k: u32) -> Vec<u64> {
    let mut t = vec![0, 1]; // x
    for _ in 0..k {
        // t <- t^p mod h
        let mut acc = vec![1u64];
        let mut base = t.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, h, p);
            }
            base = fp_mulmod(&base, &base, h, p);
            e >>= 1;
        }
        t = acc;
    }
    t
}

/// Irreducibility of a monic degree-`f` polynomial over `F_p`:
/// `x^{p^f} = x mod h`, and `gcd(x^{p^{f/l}} - x, h) = 1` for primes `l | f`.
pub fn fp_is_irreducible(lower: &[u64], p: u64) -> bool {
    let f = lower.len() as u32;
    let mut h: Vec<u64> = lower.iter().map(|&c| c % p).collect();
    h.push(1);
    if f == 1 {
        return true;
    }
    let xqf = fp_iterated_p_power(&h, p, f);
    let mut diff = xqf;
    while diff.len() < 2 {
        diff.push(0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    {
        let mut d = diff.clone();
        fp_trim(&mut d);
        if !d.is_empty() {
            return false;
        }
    }
    let mut rem = f;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= rem {
        if rem % d == 0 {
            primes.push(d);
            while rem % d == 0 {
                rem /= d;
            }
        }
        d += 1;
    }
    if rem > 1 {
        primes.push(rem);
    }
    for l in primes {
        let mut t = fp_iterated_p_power(&h, p, f / l);
        while t.len() < 2 {
            t.push(0);
        }
        t[1] = (t[1] + p - 1) % p;
        let g = fp_gcd(&t, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The canonical unramified ring of degree `f` over `Z_p` at precision `N`:
/// the defining polynomial is the lexicographically least monic irreducible
/// degree-`f` polynomial over `F_p` (coefficient tuples ordered by
/// `sum c_i p^i`), lifted with coefficients in `{0..p-1}`.
pub fn build_unramified(p: u64, f: u32, prec: u32) -> Result<ZqCtx, PadicError> {
    if !is_prime(p) {
        return Err(PadicError::InvalidInput(format!("{p} is not prime")));
    }
    if f == 0 || f as usize > MAX_F {
        return Err(PadicError::InvalidInput(format!(
            "inertia degree {f} outside 1..={MAX_F}"
        )));
    }
    let count = p.checked_pow(f).ok_or(PadicError::PrecisionExhausted)?;
    for idx in 0..count {
        let mut lower = Vec::with_capacity(f as usize);
        let mut k = idx;
        for _ in 0..f {
            lower.push(k % p);
            k /= p;
        }
        if fp_is_irreducible(&lower, p) {
            return ZqCtx::new(p, &lower, prec);
        }
    }
    unreachable!("irreducible polynomials exist in every degree over F_p")
}

pub fn is_prime(p: u64) -> bool {
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
