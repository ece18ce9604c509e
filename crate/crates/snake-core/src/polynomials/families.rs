//! The polynomial families behind snake-graph spectra: Chebyshev polynomials
//! of both kinds, the Fibonacci product polynomials `P_n` and `Q_n`, the
//! characteristic polynomial of a tridiagonal matrix with unit off-diagonals,
//! and closed forms for horizontal snakes, L-shaped snakes and staircases.

use num_bigint::BigInt;

use super::{IntPoly, PolyError};

/// Tags for the memoized polynomial sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyFamily {
    ChebyshevT,
    ChebyshevU,
    FibP,
    FibQ,
}

/// Selector for the two Fibonacci product families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibFamily {
    P,
    Q,
}

/// Memoized access to one polynomial family.
///
/// Base cases: `T_0 = 1`, `T_1 = y`, `U_0 = 1`, `U_1 = 2y` (with `U_{-1} = 0`
/// honoured by the free function), `P_0 = Q_0 = 1`.
pub struct PolySeqCache {
    family: PolyFamily,
    memo: Vec<IntPoly>,
}

impl PolySeqCache {
    pub fn new(family: PolyFamily) -> Self {
        let memo = match family {
            PolyFamily::ChebyshevT => vec![IntPoly::one(), IntPoly::x()],
            PolyFamily::ChebyshevU => vec![IntPoly::one(), IntPoly::from_i64(&[0, 2])],
            PolyFamily::FibP => vec![IntPoly::one(), IntPoly::x_minus(2)],
            PolyFamily::FibQ => vec![IntPoly::one(), IntPoly::x_minus(3)],
        };
        PolySeqCache { family, memo }
    }

    pub fn family(&self) -> PolyFamily {
        self.family
    }

    pub fn get(&mut self, n: usize) -> IntPoly {
        while self.memo.len() <= n {
            let k = self.memo.len();
            let head = match self.family {
                PolyFamily::ChebyshevT | PolyFamily::ChebyshevU => {
                    &IntPoly::from_i64(&[0, 2]) * &self.memo[k - 1]
                }
                PolyFamily::FibP | PolyFamily::FibQ => &IntPoly::x_minus(3) * &self.memo[k - 1],
            };
            let next = &head - &self.memo[k - 2];
            self.memo.push(next);
        }
        self.memo[n].clone()
    }
}

/// Chebyshev polynomial of the first kind, `T_n(y)`.
pub fn chebyshev_t(n: usize) -> IntPoly {
    PolySeqCache::new(PolyFamily::ChebyshevT).get(n)
}

/// Chebyshev polynomial of the second kind, `U_n(y)`, defined for `n >= -1`
/// with `U_{-1} = 0`.
pub fn chebyshev_u(n: i64) -> Result<IntPoly, PolyError> {
    match n {
        -1 => Ok(IntPoly::zero()),
        n if n >= 0 => Ok(PolySeqCache::new(PolyFamily::ChebyshevU).get(n as usize)),
        _ => Err(PolyError::IndexBelowConvention { index: n }),
    }
}

/// Fibonacci product polynomial `P_n`, the characteristic polynomial of the
/// tridiagonal matrix with diagonal `(2, 3, 3, ...)` and unit off-diagonals.
pub fn fib_poly_p(n: usize) -> IntPoly {
    PolySeqCache::new(PolyFamily::FibP).get(n)
}

/// Fibonacci product polynomial `Q_n`, the characteristic polynomial of the
/// tridiagonal matrix with constant diagonal `3` and unit off-diagonals.
pub fn fib_poly_q(n: usize) -> IntPoly {
    PolySeqCache::new(PolyFamily::FibQ).get(n)
}

/// `Q_n` extended by the convention `Q_{-1} = 0` used in the L-shape
/// formulas.
fn fib_poly_q_ext(n: i64) -> IntPoly {
    if n < 0 {
        IntPoly::zero()
    } else {
        fib_poly_q(n as usize)
    }
}

/// Monic characteristic polynomial of the tridiagonal matrix with the given
/// diagonal and all off-diagonal entries `+1`; the empty diagonal yields `1`.
pub fn tridiag_charpoly(diag: &[i64]) -> IntPoly {
    let mut prev = IntPoly::zero(); // charpoly of M_{-1}
    let mut cur = IntPoly::one(); // charpoly of M_0
    for &e in diag {
        let next = &(&IntPoly::x_minus(e) * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// All principal characteristic polynomials `charpoly(M_0), ..., charpoly(M_n)`
/// of the tridiagonal matrix over `diag`; entry `k` has degree `k`.
pub fn tridiag_principal_charpolys(diag: &[i64]) -> Vec<IntPoly> {
    let mut out = Vec::with_capacity(diag.len() + 1);
    out.push(IntPoly::one());
    let mut prev = IntPoly::zero();
    for &e in diag {
        let cur = out.last().expect("nonempty").clone();
        let next = &(&IntPoly::x_minus(e) * &cur) - &prev;
        prev = cur;
        out.push(next);
    }
    out
}

/// Characteristic polynomial of `BB^T` for the horizontal snake graph `H_n`:
/// `(x-1) Q_r(x)^2` when `n = 2r` and `P_{r+1}(x)^2` when `n = 2r + 1`.
pub fn closed_form_h(n: usize) -> IntPoly {
    assert!(n >= 1, "horizontal snake needs at least one tile");
    let r = n / 2;
    if n % 2 == 0 {
        let q = fib_poly_q(r);
        &IntPoly::x_minus(1) * &(&q * &q)
    } else {
        let p = fib_poly_p(r + 1);
        &p * &p
    }
}

/// Characteristic polynomial of `BB^T` for the L-shaped snake graph with `r`
/// horizontal and `s` vertical tiles (the corner tile counted in both).
///
/// The three parity cases carry explicit product formulas; the fourth case
/// (`r` odd, `s` even) follows from the reflection that exchanges the two
/// legs without changing the graph.
pub fn closed_form_l(r: usize, s: usize) -> IntPoly {
    assert!(r >= 1 && s >= 1, "both legs need at least one tile");
    let p = fib_poly_p;
    let q = fib_poly_q;
    match (r % 2, s % 2) {
        (0, 0) => {
            let (m, n) = (r / 2, s / 2);
            let f1 =
                &q(m + n - 1) - &(&fib_poly_q_ext(m as i64 - 1) * &fib_poly_q_ext(n as i64 - 1));
            let f2 = &(&IntPoly::x_minus(1) * &q(m + n)) + &(&p(m) * &p(n));
            &f1 * &f2
        }
        (1, 1) => {
            let (m, n) = ((r - 1) / 2, (s - 1) / 2);
            let f1 = &(&IntPoly::x_minus(1) * &q(m + n)) - &(&p(m) * &p(n));
            let f2 = &q(m + n + 1) + &(&q(m) * &q(n));
            &f1 * &f2
        }
        (0, 1) => {
            let (m, n) = (r / 2, (s - 1) / 2);
            let f1 = &p(m + n) - &(&fib_poly_q_ext(m as i64 - 1) * &p(n));
            let f2 = &p(m + n + 1) + &(&p(m) * &q(n));
            &f1 * &f2
        }
        _ => closed_form_l(s, r),
    }
}

/// Characteristic polynomial of `BB^T` for the staircase `S_{m,3}`, `m >= 2`.
///
/// Both parity cases substitute `u(x) = (x-3)^2` into the `Q` family.
pub fn closed_form_staircase(m: usize) -> Result<IntPoly, PolyError> {
    if m < 2 {
        return Err(PolyError::StaircaseTooSmall { m });
    }
    let u = {
        let xm3 = IntPoly::x_minus(3);
        &xm3 * &xm3
    };
    let qu = |n: i64| fib_poly_q_ext(n).compose(&u);
    let k = m / 2;
    if m % 2 == 0 {
        let a = &IntPoly::x_minus(2) * &qu(k as i64);
        let b = &a + &(&IntPoly::x() * &qu(k as i64 - 1));
        Ok(&a * &b)
    } else {
        let b = &qu(k as i64 + 1) + &(&IntPoly::x_minus(1) * &qu(k as i64));
        Ok(&b * &b)
    }
}

/// Closed-form roots of the Fibonacci product polynomials:
/// `4 cos^2(pi l / (2n+1)) + 1` for `P_n` and `4 cos^2(pi l / (2n+2)) + 1`
/// for `Q_n`, with `l = 1, ..., n`.
pub fn fib_roots(family: FibFamily, n: usize) -> Vec<f64> {
    let denom = match family {
        FibFamily::P => (2 * n + 1) as f64,
        FibFamily::Q => (2 * n + 2) as f64,
    };
    (1..=n)
        .map(|l| {
            let c = (std::f64::consts::PI * l as f64 / denom).cos();
            4.0 * c * c + 1.0
        })
        .collect()
}

/// Fibonacci number `F_n` with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(n: u64) -> BigInt {
    let mut a = BigInt::from(0);
    let mut b = BigInt::from(1);
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}
