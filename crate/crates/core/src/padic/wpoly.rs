//! Polynomials over an unramified ring and the division-free linear algebra
//! used on them: Berkowitz characteristic polynomials, Sylvester resultants,
//! and discriminant valuations.
//!
//! Everything here works in `W/(p^N)`, which has zero divisors, so all
//! determinants are computed division-free (Berkowitz). A valuation read off
//! a residue that is `0 mod p^N` is not determined by the available
//! precision and surfaces as `Indeterminate`.

use super::zq::{Zq, ZqCtx};
use super::PadicError;

/// Little-endian polynomial over `W/(p^N)`.
pub type WPoly = Vec<Zq>;

pub fn wpoly_from_i64(ctx: &ZqCtx, coeffs: &[i64]) -> WPoly {
    coeffs.iter().map(|&c| ctx.from_i64(c)).collect()
}

pub fn wpoly_degree(ctx: &ZqCtx, g: &WPoly) -> Option<usize> {
    g.iter().rposition(|c| !ctx.is_zero(c))
}

pub fn wpoly_is_monic(ctx: &ZqCtx, g: &WPoly) -> bool {
    match g.last() {
        Some(c) => *c == ctx.one(),
        None => false,
    }
}

/// Formal derivative.
pub fn wpoly_derivative(ctx: &ZqCtx, g: &WPoly) -> WPoly {
    g.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ctx.scalar_mul(c, i as u64))
        .collect()
}

/// Characteristic polynomial of a square matrix by the Berkowitz algorithm
/// (division-free). Returns coefficients from the leading term down:
/// `out[0] = 1`, so `det A = (-1)^n out[n]`.
pub fn berkowitz_charpoly(ctx: &ZqCtx, a: &[Vec<Zq>]) -> Vec<Zq> {
    let n = a.len();
    if n == 0 {
        return vec![ctx.one()];
    }
    let mut c = vec![ctx.one(), ctx.neg(&a[0][0])];
    for r in 1..n {
        // Toeplitz column: [1, -a[r][r], -(R S), -(R M S), .., -(R M^{r-1} S)]
        let mut col = Vec::with_capacity(r + 2);
        col.push(ctx.one());
        col.push(ctx.neg(&a[r][r]));
        // S starts as the first r entries of column r; iterate S <- M S
        let mut s: Vec<Zq> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            // R . S with R = row r, first r entries
            let mut dot = ctx.zero();
            for i in 0..r {
                dot = ctx.add(&dot, &ctx.mul(&a[r][i], &s[i]));
            }
            col.push(ctx.neg(&dot));
            // S <- M S with M the leading r x r block
            let mut next = Vec::with_capacity(r);
            for i in 0..r {
                let mut acc = ctx.zero();
                for j in 0..r {
                    acc = ctx.add(&acc, &ctx.mul(&a[i][j], &s[j]));
                }
                next.push(acc);
            }
            s = next;
        }
        // c <- T c where T is lower-triangular Toeplitz with first column col
        let mut next = vec![ctx.zero(); r + 2];
        for (i, ci) in c.iter().enumerate() {
            for (j, t) in col.iter().enumerate() {
                if i + j < r + 2 {
                    next[i + j] = ctx.add(&next[i + j], &ctx.mul(t, ci));
                }
            }
        }
        c = next;
    }
    c
}

/// Determinant via the characteristic polynomial.
pub fn berkowitz_det(ctx: &ZqCtx, a: &[Vec<Zq>]) -> Zq {
    let n = a.len();
    let charpoly = berkowitz_charpoly(ctx, a);
    let constant = charpoly[n].clone();
    if n % 2 == 1 {
        ctx.neg(&constant)
    } else {
        constant
    }
}

/// Resultant of two polynomials as the Sylvester determinant.
pub fn resultant(ctx: &ZqCtx, g: &WPoly, h: &WPoly) -> Zq {
    let m = g.len() - 1;
    let n = h.len() - 1;
    if m == 0 || n == 0 {
        // Res(g, c) = c^m, Res(c, h) = c^n
        if n == 0 {
            return ctx.pow(&h[0], m as u64);
        }
        return ctx.pow(&g[0], n as u64);
    }
    let size = m + n;
    let mut s = vec![vec![ctx.zero(); size]; size];
    for row in 0..n {
        for (i, c) in g.iter().enumerate() {
            s[row][row + m - i] = c.clone();
        }
    }
    for row in 0..m {
        for (i, c) in h.iter().enumerate() {
            s[n + row][row + n - i] = c.clone();
        }
    }
    berkowitz_det(ctx, &s)
}

/// `v(disc g)` for monic `g`, via `disc = (-1)^{m(m-1)/2} Res(g, g')`.
///
/// Returns `Indeterminate` when the computed residue is `0 mod p^N`: the
/// precision does not determine the valuation and the caller should retry
/// with a larger `N`.
pub fn poly_disc_valuation(ctx: &ZqCtx, g: &WPoly) -> Result<u32, PadicError> {
    if !wpoly_is_monic(ctx, g) {
        return Err(PadicError::InvalidInput("discriminant needs a monic polynomial".into()));
    }
    let m = g.len() - 1;
    if m <= 1 {
        return Ok(0);
    }
    let res = resultant(ctx, g, &wpoly_derivative(ctx, g));
    ctx.val(&res).ok_or(PadicError::Indeterminate)
}

/// `v(disc g)` by the independent trace-form route: power sums of the roots
/// from Newton's identities, assembled into the Hankel Gram matrix
/// `(s_{i+j})` whose determinant is `disc g`.
pub fn trace_form_disc_valuation(ctx: &ZqCtx, g: &WPoly) -> Result<u32, PadicError> {
    if !wpoly_is_monic(ctx, g) {
        return Err(PadicError::InvalidInput("discriminant needs a monic polynomial".into()));
    }
    let m = g.len() - 1;
    if m <= 1 {
        return Ok(0);
    }
    // Newton: s_k + c_{m-1} s_{k-1} + .. + c_{m-k+1} s_1 + k c_{m-k} = 0 for
    // k <= m; for k > m the sum runs over all coefficients. No division.
    let mut s: Vec<Zq> = Vec::with_capacity(2 * m - 1);
    s.push(ctx.from_u64(m as u64));
    for k in 1..=(2 * m - 2) {
        let mut acc = ctx.zero();
        for i in 1..=k.min(m) {
            // coefficient of x^{m-i}
            let c = &g[m - i];
            if i == k {
                acc = ctx.add(&acc, &ctx.scalar_mul(c, k as u64));
            } else {
                acc = ctx.add(&acc, &ctx.mul(c, &s[k - i]));
            }
        }
        s.push(ctx.neg(&acc));
    }
    let gram: Vec<Vec<Zq>> = (0..m)
        .map(|i| (0..m).map(|j| s[i + j].clone()).collect())
        .collect();
    let det = berkowitz_det(ctx, &gram);
    ctx.val(&det).ok_or(PadicError::Indeterminate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::zq::build_unramified;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Cofactor-expansion determinant, the oracle for Berkowitz.
    fn det_cofactor(ctx: &ZqCtx, a: &[Vec<Zq>]) -> Zq {
        let n = a.len();
        if n == 0 {
            return ctx.one();
        }
        if n == 1 {
            return a[0][0].clone();
        }
        let mut acc = ctx.zero();
        for j in 0..n {
            let minor: Vec<Vec<Zq>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| a[i][c].clone())
                        .collect()
                })
                .collect();
            let term = ctx.mul(&a[0][j], &det_cofactor(ctx, &minor));
            if j % 2 == 0 {
                acc = ctx.add(&acc, &term);
            } else {
                acc = ctx.sub(&acc, &term);
            }
        }
        acc
    }

    #[test]
    fn berkowitz_matches_cofactor() {
        let mut rng = StdRng::seed_from_u64(5);
        for ctx in [
            build_unramified(3, 1, 8).unwrap(),
            build_unramified(2, 2, 6).unwrap(),
        ] {
            for n in 1..=5 {
                for _ in 0..20 {
                    let a: Vec<Vec<Zq>> = (0..n)
                        .map(|_| {
                            (0..n)
                                .map(|_| {
                                    let coords: Vec<u64> = (0..ctx.f())
                                        .map(|_| rng.gen_range(0..ctx.modulus()))
                                        .collect();
                                    ctx.from_coords(&coords)
                                })
                                .collect()
                        })
                        .collect();
                    assert_eq!(berkowitz_det(&ctx, &a), det_cofactor(&ctx, &a));
                }
            }
        }
    }

    #[test]
    fn disc_valuation_examples() {
        // x^2 - p: disc = 4p, valuation 1 for odd p, 3 for p = 2
        for (p, expected) in [(3u64, 1u32), (5, 1), (7, 1), (2, 3)] {
            let ctx = build_unramified(p, 1, 10).unwrap();
            let g = wpoly_from_i64(&ctx, &[-(p as i64), 0, 1]);
            assert_eq!(poly_disc_valuation(&ctx, &g).unwrap(), expected, "p = {p}");
        }
        // x^2 + x + 1 over Z_2: disc = -3, a unit
        let ctx = build_unramified(2, 1, 10).unwrap();
        let g = wpoly_from_i64(&ctx, &[1, 1, 1]);
        assert_eq!(poly_disc_valuation(&ctx, &g).unwrap(), 0);
        // linear polynomials have unit discriminant
        let lin = wpoly_from_i64(&ctx, &[-2, 1]);
        assert_eq!(poly_disc_valuation(&ctx, &lin).unwrap(), 0);
        // non-monic input is rejected
        let bad = wpoly_from_i64(&ctx, &[1, 2]);
        assert!(matches!(
            poly_disc_valuation(&ctx, &bad),
            Err(PadicError::InvalidInput(_))
        ));
    }

    #[test]
    fn disc_indeterminate_at_low_precision() {
        // x^2 - 3 over Z_3 at precision 1: disc = 12 = 0 mod 3
        let ctx = build_unramified(3, 1, 1).unwrap();
        let g = wpoly_from_i64(&ctx, &[-3, 0, 1]);
        assert!(matches!(
            poly_disc_valuation(&ctx, &g),
            Err(PadicError::Indeterminate)
        ));
    }

    #[test]
    fn trace_form_route_agrees() {
        let mut rng = StdRng::seed_from_u64(11);
        for p in [2u64, 3, 5] {
            let ctx = build_unramified(p, 1, 14).unwrap();
            for deg in 2..=5usize {
                for _ in 0..40 {
                    let mut coeffs: Vec<i64> =
                        (0..deg).map(|_| rng.gen_range(-20..20)).collect();
                    coeffs.push(1);
                    let g = wpoly_from_i64(&ctx, &coeffs);
                    let via_resultant = poly_disc_valuation(&ctx, &g);
                    let via_trace = trace_form_disc_valuation(&ctx, &g);
                    match (via_resultant, via_trace) {
                        (Ok(a), Ok(b)) => assert_eq!(a, b, "p={p} coeffs={coeffs:?}"),
                        (Err(PadicError::Indeterminate), Err(PadicError::Indeterminate)) => {}
                        other => panic!("routes disagree: {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn resultant_degenerate_cases() {
        let ctx = build_unramified(5, 1, 8).unwrap();
        // Res(x - 2, x - 3) = 3 - 2 ... = -1 up to convention; valuation 0
        let g = wpoly_from_i64(&ctx, &[-2, 1]);
        let h = wpoly_from_i64(&ctx, &[-3, 1]);
        assert_eq!(ctx.val(&resultant(&ctx, &g, &h)), Some(0));
        // Res with shared root has positive valuation
        let h2 = wpoly_from_i64(&ctx, &[-2, 1]);
        assert!(ctx.is_zero(&resultant(&ctx, &g, &h2)));
    }
}
