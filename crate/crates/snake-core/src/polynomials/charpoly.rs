//! Exact characteristic polynomials of integer matrices by the
//! Faddeev–LeVerrier recursion. All intermediate matrices stay integral, so
//! the divisions by the step index are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::IntPoly;
use crate::weighting::IntMatrix;

/// Monic characteristic polynomial `det(xI - M)` of a square integer matrix.
pub fn charpoly_exact(m: &IntMatrix) -> IntPoly {
    assert_eq!(
        m.rows(),
        m.cols(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = m.rows();
    // coefficients c_k of x^{n-k}; c_0 = 1
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::from(1);
    let mut aux = IntMatrix::identity(n);
    for k in 1..=n {
        let prod = m.mul(&aux);
        let (c, r) = (-prod.trace()).div_rem(&BigInt::from(k));
        debug_assert!(
            r.is_zero(),
            "Faddeev-LeVerrier trace division must be exact"
        );
        aux = prod;
        for i in 0..n {
            let v = aux.get(i, i) + &c;
            aux.set(i, i, v);
        }
        coeffs[k] = c;
    }
    // ascending order: coeff of x^j is coeffs[n - j]
    coeffs.reverse();
    IntPoly::new(coeffs)
}
