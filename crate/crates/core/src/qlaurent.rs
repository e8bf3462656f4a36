//! Exact rational arithmetic and sparse Laurent polynomials in one variable
//! `q` with exponents in `(1/r)Z`.
//!
//! A [`MassPoly`] is the target of every mass computation in this crate: a
//! finite sum of terms `c * q^e` with exact rational coefficients `c` and
//! exact rational exponents `e` whose denominators divide a declared grading
//! denominator `r`. Infinite geometric series are never represented; every
//! mass in scope is a finite sum.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Number, Value};
use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// `n/d` as a [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QlaurentError {
    /// A fractional exponent does not evaluate to a rational number at the
    /// given base.
    #[error("q0 = {base} has no rational {root}-th root")]
    NonRationalPower { base: Rat, root: u64 },
    #[error("evaluation point must be positive, got {0}")]
    NonPositiveBase(Rat),
    #[error("exponent {0} too large for exact evaluation")]
    ExponentOverflow(Rat),
    #[error("malformed MassPoly JSON: {0}")]
    MalformedJson(String),
}

/// Sparse Laurent polynomial in `q` with exponents in `(1/r)Z`.
///
/// Two values are equal iff their term maps are equal as maps of reduced
/// rationals; the grading denominator `r` is bookkeeping (two polynomials
/// that agree termwise are equal even if declared at different refinements).
#[derive(Debug, Clone)]
pub struct MassPoly {
    grading: u64,
    terms: BTreeMap<Rat, Rat>,
}

impl PartialEq for MassPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MassPoly {}

fn lcm64(a: u64, b: u64) -> u64 {
    num::integer::lcm(a, b)
}

impl MassPoly {
    pub fn zero() -> Self {
        MassPoly { grading: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_terms(1, [(Rat::zero(), c)])
    }

    /// The monomial `q^exp`.
    pub fn q_pow(exp: Rat) -> Self {
        Self::term(Rat::one(), exp)
    }

    /// The single term `coeff * q^exp`.
    pub fn term(coeff: Rat, exp: Rat) -> Self {
        Self::from_terms(1, [(exp, coeff)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// duplicates, dropping zero coefficients, and refining the grading
    /// denominator to cover every exponent present.
    pub fn from_terms<I>(grading: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rat, Rat)>,
    {
        assert!(grading >= 1, "grading denominator must be positive");
        let mut map: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut r = grading;
        for e in map.keys() {
            let d = e
                .denom()
                .to_u64()
                .expect("exponent denominator exceeds u64 range");
            r = lcm64(r, d);
        }
        MassPoly { grading: r, terms: map }
    }

    pub fn grading(&self) -> u64 {
        self.grading
    }

    /// Declares a finer grading denominator; the stored `r` becomes
    /// `lcm(r, refinement)`.
    pub fn with_grading(mut self, refinement: u64) -> Self {
        assert!(refinement >= 1);
        self.grading = lcm64(self.grading, refinement);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Rat) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient-wise sum; the result's grading is the lcm of the inputs'.
    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c.clone();
        }
        terms.retain(|_, c| !c.is_zero());
        MassPoly { grading: lcm64(self.grading, other.grading), terms }
    }

    /// Distributive product; exponents add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                let c = c1 * c2;
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MassPoly { grading: lcm64(self.grading, other.grading), terms }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MassPoly { grading: self.grading, terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect();
        MassPoly { grading: self.grading, terms }
    }

    /// The substitution `q -> q^{-1}`: every exponent is negated.
    pub fn invert_q(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (-e.clone(), c.clone())).collect();
        MassPoly { grading: self.grading, terms }
    }

    /// Exact evaluation at a positive rational `q0`.
    ///
    /// Fails with [`QlaurentError::NonRationalPower`] when some fractional
    /// exponent present in the polynomial does not evaluate rationally at
    /// `q0` (e.g. `q^{1/2}` at `q0 = 3`).
    pub fn eval_at(&self, q0: &Rat) -> Result<Rat, QlaurentError> {
        if !q0.is_positive() {
            return Err(QlaurentError::NonPositiveBase(q0.clone()));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * rational_pow(q0, e)?;
        }
        Ok(acc)
    }

    /// JSON form `{"r": r, "terms": [[num, den, coeff_num, coeff_den], ...]}`
    /// with terms sorted by exponent ascending. All four entries per term are
    /// exact integers.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                json!([
                    big_to_number(e.numer()),
                    big_to_number(e.denom()),
                    big_to_number(c.numer()),
                    big_to_number(c.denom()),
                ])
            })
            .collect();
        json!({ "r": self.grading, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, QlaurentError> {
        let obj = v
            .as_object()
            .ok_or_else(|| QlaurentError::MalformedJson("expected object".into()))?;
        let r = obj
            .get("r")
            .and_then(Value::as_u64)
            .ok_or_else(|| QlaurentError::MalformedJson("missing positive integer field 'r'".into()))?;
        if r == 0 {
            return Err(QlaurentError::MalformedJson("'r' must be positive".into()));
        }
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| QlaurentError::MalformedJson("missing array field 'terms'".into()))?;
        let mut pairs = Vec::with_capacity(terms.len());
        for t in terms {
            let entries = t
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| QlaurentError::MalformedJson("each term must be a 4-array".into()))?;
            let nums: Vec<BigInt> = entries
                .iter()
                .map(value_to_big)
                .collect::<Result<_, _>>()?;
            if nums[1] <= BigInt::zero() || nums[3] <= BigInt::zero() {
                return Err(QlaurentError::MalformedJson("denominators must be positive".into()));
            }
            let e = Rat::new(nums[0].clone(), nums[1].clone());
            let c = Rat::new(nums[2].clone(), nums[3].clone());
            pairs.push((e, c));
        }
        Ok(Self::from_terms(r, pairs))
    }
}

impl std::ops::Add for &MassPoly {
    type Output = MassPoly;
    fn add(self, rhs: &MassPoly) -> MassPoly {
        MassPoly::add(self, rhs)
    }
}

impl std::ops::Mul for &MassPoly {
    type Output = MassPoly;
    fn mul(self, rhs: &MassPoly) -> MassPoly {
        MassPoly::mul(self, rhs)
    }
}

impl Serialize for MassPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MassPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        MassPoly::from_json(&v).map_err(D::Error::custom)
    }
}

impl fmt::Display for MassPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Descending exponents read like ordinary polynomials.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || e.is_zero();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if !e.is_zero() {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else if e.is_integer() {
                    write!(f, "q^{}", e.numer())?;
                } else {
                    write!(f, "q^({e})")?;
                }
            }
        }
        Ok(())
    }
}

/// Exact `base^exp` for positive rational `base` and rational `exp`, when the
/// result is rational.
pub fn rational_pow(base: &Rat, exp: &Rat) -> Result<Rat, QlaurentError> {
    if !base.is_positive() {
        return Err(QlaurentError::NonPositiveBase(base.clone()));
    }
    let root = exp
        .denom()
        .to_u64()
        .ok_or_else(|| QlaurentError::ExponentOverflow(exp.clone()))?;
    let rooted = if root == 1 {
        base.clone()
    } else {
        let r32: u32 = root
            .try_into()
            .map_err(|_| QlaurentError::ExponentOverflow(exp.clone()))?;
        let rn = base.numer().nth_root(r32);
        let rd = base.denom().nth_root(r32);
        if num::traits::Pow::pow(&rn, r32) != *base.numer()
            || num::traits::Pow::pow(&rd, r32) != *base.denom()
        {
            return Err(QlaurentError::NonRationalPower { base: base.clone(), root });
        }
        Rat::new(rn, rd)
    };
    let k = exp
        .numer()
        .abs()
        .to_u32()
        .ok_or_else(|| QlaurentError::ExponentOverflow(exp.clone()))?;
    let powed = num::traits::Pow::pow(&rooted, k);
    Ok(if exp.is_negative() { powed.recip() } else { powed })
}

fn big_to_number(i: &BigInt) -> Number {
    // With the arbitrary_precision feature every decimal integer string is a
    // valid Number, so this cannot fail.
    serde_json::from_str(&i.to_string()).expect("integer string is a valid JSON number")
}

fn value_to_big(v: &Value) -> Result<BigInt, QlaurentError> {
    let n = v
        .as_number()
        .ok_or_else(|| QlaurentError::MalformedJson("term entries must be integers".into()))?;
    BigInt::from_str(&n.to_string())
        .map_err(|_| QlaurentError::MalformedJson(format!("not an integer: {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn poly(pairs: &[(i64, i64, i64, i64)]) -> MassPoly {
        // (exp_num, exp_den, coeff_num, coeff_den)
        MassPoly::from_terms(
            1,
            pairs.iter().map(|&(en, ed, cn, cd)| (rat(en, ed), rat(cn, cd))),
        )
    }

    #[test]
    fn add_basic() {
        let one_plus_q = poly(&[(0, 1, 1, 1), (1, 1, 1, 1)]);
        let sum = &one_plus_q + &one_plus_q;
        assert_eq!(sum, poly(&[(0, 1, 2, 1), (1, 1, 2, 1)]));
        // identity case
        assert_eq!(&one_plus_q + &MassPoly::zero(), one_plus_q);
        // half-integer grading
        let h = &MassPoly::q_pow(rat(1, 2)) + &MassPoly::q_pow(rat(-1, 2));
        assert_eq!(h.grading(), 2);
        assert_eq!(h.num_terms(), 2);
    }

    #[test]
    fn mul_basic() {
        let one_plus_q = poly(&[(0, 1, 1, 1), (1, 1, 1, 1)]);
        let sq = &one_plus_q * &one_plus_q;
        assert_eq!(sq, poly(&[(0, 1, 1, 1), (1, 1, 2, 1), (2, 1, 1, 1)]));
        assert_eq!(&one_plus_q * &MassPoly::one(), one_plus_q);
        let root = MassPoly::q_pow(rat(1, 2));
        assert_eq!(&root * &root, MassPoly::q_pow(rat(1, 1)));
    }

    #[test]
    fn eval_examples() {
        let m = poly(&[(1, 1, 2, 1), (0, 1, 1, 1)]); // 2q + 1
        assert_eq!(m.eval_at(&rat_int(4)).unwrap(), rat_int(9));
        // 1 + q^{-1} + q^{-2} at 3 -> 13/9
        let b = poly(&[(0, 1, 1, 1), (-1, 1, 1, 1), (-2, 1, 1, 1)]);
        assert_eq!(b.eval_at(&rat_int(3)).unwrap(), rat(13, 9));
        // q^{1/2} at 3 is irrational
        let r = MassPoly::q_pow(rat(1, 2));
        assert!(matches!(
            r.eval_at(&rat_int(3)),
            Err(QlaurentError::NonRationalPower { .. })
        ));
        // but rational at 9/4
        assert_eq!(r.eval_at(&rat(9, 4)).unwrap(), rat(3, 2));
        assert!(matches!(
            r.eval_at(&rat_int(-2)),
            Err(QlaurentError::NonPositiveBase(_))
        ));
    }

    #[test]
    fn invert_q_basic() {
        let one_plus_q = poly(&[(0, 1, 1, 1), (1, 1, 1, 1)]);
        assert_eq!(one_plus_q.invert_q(), poly(&[(0, 1, 1, 1), (-1, 1, 1, 1)]));
        let x = poly(&[(3, 2, 5, 7), (-1, 1, 2, 1)]);
        assert_eq!(x.invert_q().invert_q(), x);
    }

    fn random_poly(rng: &mut StdRng) -> MassPoly {
        let n = rng.gen_range(0..4);
        MassPoly::from_terms(
            1,
            (0..n).map(|_| {
                (
                    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
                    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
                )
            }),
        )
    }

    #[test]
    fn ring_laws_random() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..300 {
            let a = random_poly(&mut rng);
            let b = random_poly(&mut rng);
            let c = random_poly(&mut rng);
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            // invert_q is a ring homomorphism and an involution
            assert_eq!((&a + &b).invert_q(), &a.invert_q() + &b.invert_q());
            assert_eq!((&a * &b).invert_q(), &a.invert_q() * &b.invert_q());
            assert_eq!(a.invert_q().invert_q(), a);
        }
    }

    #[test]
    fn eval_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..200 {
            let a = random_poly(&mut rng);
            let b = random_poly(&mut rng);
            let q0 = rat(rng.gen_range(1..=9), rng.gen_range(1..=3));
            let lhs = (&a * &b).eval_at(&q0);
            let (ea, eb) = (a.eval_at(&q0), b.eval_at(&q0));
            if let (Ok(va), Ok(vb), Ok(vab)) = (ea, eb, lhs) {
                assert_eq!(vab, va * vb);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let x = poly(&[(3, 2, 5, 7), (-1, 1, -2, 1), (0, 1, 1, 3)]);
        let v = x.to_json();
        let back = MassPoly::from_json(&v).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.grading() % 2, 0);
        // terms sorted ascending by exponent
        let arr = v["terms"].as_array().unwrap();
        assert_eq!(arr.len(), 3);
        assert_eq!(arr[0][0].as_i64().unwrap(), -1);
        assert!(MassPoly::from_json(&json!({"r": 0, "terms": []})).is_err());
        assert!(MassPoly::from_json(&json!({"r": 1})).is_err());
    }

    #[test]
    fn display_readable() {
        let m = poly(&[(1, 1, 2, 1), (0, 1, 1, 1)]);
        assert_eq!(m.to_string(), "2*q + 1");
        let b = poly(&[(0, 1, 1, 1), (-1, 1, 1, 1), (-2, 1, 1, 1)]);
        assert_eq!(b.to_string(), "1 + q^-1 + q^-2");
        assert_eq!(MassPoly::q_pow(rat(1, 2)).to_string(), "q^(1/2)");
        assert_eq!(MassPoly::zero().to_string(), "0");
    }
}
