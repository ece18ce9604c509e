//! Numeric roots of the characteristic polynomials appearing in the theory.
//!
//! The tridiagonal matrices here have unit off-diagonals, so their principal
//! characteristic polynomials form an orthogonal polynomial sequence with
//! strictly interlacing simple real roots. That gives a bracketing scheme
//! with no search heuristics: the roots of stage `k` separate the roots of
//! stage `k+1`. Brackets are closed by bisection with exact rational sign
//! evaluation, so the returned doubles are correct to the last unit; plain
//! f64 Horner evaluation of these polynomials would lose five or six digits
//! to cancellation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{tridiag_charpoly, IntPoly};

/// Eigenvalues of the tridiagonal matrix with the given diagonal and unit
/// off-diagonals, in increasing order.
pub fn tridiag_eigenvalues(diag: &[i64]) -> Vec<f64> {
    if diag.is_empty() {
        return Vec::new();
    }
    let lo = diag.iter().min().copied().unwrap() as f64 - 2.5;
    let hi = diag.iter().max().copied().unwrap() as f64 + 2.5;
    let mut roots = vec![diag[0] as f64];
    for k in 2..=diag.len() {
        let p = tridiag_charpoly(&diag[..k]);
        let mut brackets = Vec::with_capacity(k);
        let mut prev = lo;
        for &r in &roots {
            brackets.push((prev, r));
            prev = r;
        }
        brackets.push((prev, hi));
        roots = brackets
            .into_iter()
            .map(|(a, b)| refine_root(&p, a, b))
            .collect();
    }
    roots
}

/// The real roots of `p` inside `(lo, hi)`, assuming they are simple and
/// that sampling at `samples` points separates them. Used for spot checks
/// where closed-form roots are unavailable.
pub fn poly_roots_in(p: &IntPoly, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let step = (hi - lo) / samples as f64;
    let mut x0 = lo;
    let mut f0 = p.eval_f64(x0);
    for i in 1..=samples {
        let x1 = lo + step * i as f64;
        let f1 = p.eval_f64(x1);
        if f0 == 0.0 {
            out.push(x0);
        } else if f0 * f1 < 0.0 {
            out.push(refine_root(p, x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 {
        out.push(x0);
    }
    out
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite bracket endpoint")
}

fn sign_at(p: &IntPoly, x: &BigRational) -> i8 {
    let v = p.eval_rational(x);
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

/// Bisection with exact sign evaluation. The callers guarantee a sign
/// change on `[a, b]` (up to roundoff in the endpoints themselves, which the
/// initial widening absorbs).
fn refine_root(p: &IntPoly, a: f64, b: f64) -> f64 {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let scale = lo.abs().max(hi.abs()).max(1.0);
    let (mut rlo, mut rhi) = (rational(lo), rational(hi));
    let mut slo = sign_at(p, &rlo);
    let mut shi = sign_at(p, &rhi);
    if slo == 0 {
        return lo;
    }
    if shi == 0 {
        return hi;
    }
    // endpoints are previous-stage roots known only to f64 accuracy; nudge
    // them outward until the sign change is certain
    let mut widen = 1e-12 * scale;
    while slo == shi {
        lo -= widen;
        hi += widen;
        widen *= 8.0;
        rlo = rational(lo);
        rhi = rational(hi);
        slo = sign_at(p, &rlo);
        shi = sign_at(p, &rhi);
        assert!(
            widen.is_finite() && widen < 1e6,
            "no sign change near bracket"
        );
    }
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..110 {
        if hi - lo <= f64::EPSILON * scale {
            break;
        }
        let mid = (&rlo + &rhi) / &two;
        let smid = sign_at(p, &mid);
        if smid == 0 {
            return mid.to_f64().expect("midpoint in range");
        }
        if smid == slo {
            rlo = mid;
        } else {
            rhi = mid;
        }
        lo = rlo.to_f64().expect("finite");
        hi = rhi.to_f64().expect("finite");
    }
    (0.5 * (lo + hi)).clamp(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::{fib_roots, FibFamily};

    #[test]
    fn eigenvalues_of_q_matrix_match_closed_form_roots() {
        for n in 1..=10usize {
            let diag = vec![3i64; n];
            let got = tridiag_eigenvalues(&diag);
            let mut expect = fib_roots(FibFamily::Q, n);
            expect.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (g, e) in got.iter().zip(&expect) {
                assert!((g - e).abs() < 1e-12, "n={n}: {g} vs {e}");
            }
        }
    }

    #[test]
    fn eigenvalues_of_p_matrix_match_closed_form_roots() {
        for n in 1..=10usize {
            let mut diag = vec![3i64; n];
            diag[0] = 2;
            let got = tridiag_eigenvalues(&diag);
            let mut expect = fib_roots(FibFamily::P, n);
            expect.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (g, e) in got.iter().zip(&expect) {
                assert!((g - e).abs() < 1e-12, "n={n}: {g} vs {e}");
            }
        }
    }

    #[test]
    fn residuals_are_tiny_in_exact_arithmetic() {
        let diag = [5i64, -2, 3, 0, 4, 1, -1];
        let p = tridiag_charpoly(&diag);
        for r in tridiag_eigenvalues(&diag) {
            let exact = p.eval_rational(&rational(r));
            let as_f64 = exact.abs().to_f64().unwrap();
            assert!(as_f64 < 1e-11, "residual {as_f64:.3e} at {r}");
        }
    }

    #[test]
    fn roots_are_sorted_and_simple() {
        let diag = [3i64; 10];
        let roots = tridiag_eigenvalues(&diag);
        for w in roots.windows(2) {
            assert!(w[1] - w[0] > 1e-9);
        }
    }

    #[test]
    fn interval_scan_finds_all_roots() {
        // (x-1)(x-2)(x-5)
        let p = &(&IntPoly::x_minus(1) * &IntPoly::x_minus(2)) * &IntPoly::x_minus(5);
        let roots = poly_roots_in(&p, 0.0, 6.0, 600);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([1.0, 2.0, 5.0]) {
            assert!((r - e).abs() < 1e-12);
        }
    }
}
