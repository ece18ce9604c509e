//! Continued fractions over the integers and over polynomials: convergents,
//! the positive/negative expansion conversion, even-length normalization,
//! and the characteristic-polynomial-as-numerator construction.
//!
//! A positive continued fraction `[a_1, ..., a_n]` nests with plus signs; a
//! negative one `[[c_1, ..., c_k]]` with minus signs. The same convergent
//! recursion covers both because `[[c_1, ..., c_k]]` equals the positive
//! fraction over the alternating terms `c_1, -c_2, c_3, ...`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{blacken, neighbour_counts, GraphError, PlaneGraph, Side};
use crate::polynomials::IntPoly;

#[derive(Debug, Error)]
pub enum CfError {
    #[error("invalid continued fraction terms: {0}")]
    InvalidTerms(String),
    #[error("operation requires an even number of terms, got {len}")]
    OddLength { len: usize },
    #[error("the fraction [1] has no even-length expansion")]
    NotNormalizable,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Positive (plus signs) or negative (minus signs) expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfKind {
    Positive,
    Negative,
}

/// Ring operations needed by the convergent recursion.
pub trait CfRing:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}
impl<T> CfRing for T where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// A finite continued fraction with terms in a commutative ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFrac<T> {
    kind: CfKind,
    terms: Vec<T>,
}

impl<T: CfRing> CFrac<T> {
    pub fn kind(&self) -> CfKind {
        self.kind
    }

    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl CFrac<BigInt> {
    /// Positive fraction; every term must be at least 1.
    pub fn positive(terms: Vec<BigInt>) -> Result<Self, CfError> {
        if terms.is_empty() {
            return Err(CfError::InvalidTerms("no terms".into()));
        }
        if let Some(t) = terms.iter().find(|t| **t < BigInt::one()) {
            return Err(CfError::InvalidTerms(format!(
                "positive fractions need terms >= 1, found {t}"
            )));
        }
        Ok(CFrac {
            kind: CfKind::Positive,
            terms,
        })
    }

    /// Negative fraction; uniqueness requires every term at least 2.
    pub fn negative(terms: Vec<BigInt>) -> Result<Self, CfError> {
        if terms.is_empty() {
            return Err(CfError::InvalidTerms("no terms".into()));
        }
        if let Some(t) = terms.iter().find(|t| **t < BigInt::from(2)) {
            return Err(CfError::InvalidTerms(format!(
                "negative fractions need terms >= 2, found {t}"
            )));
        }
        Ok(CFrac {
            kind: CfKind::Negative,
            terms,
        })
    }

    pub fn positive_i64(terms: &[i64]) -> Result<Self, CfError> {
        Self::positive(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn negative_i64(terms: &[i64]) -> Result<Self, CfError> {
        Self::negative(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    /// Value as a reduced-by-construction pair `(p, q)` with `q >= 0`.
    pub fn value(&self) -> (BigInt, BigInt) {
        let last = convergents(self)
            .pop()
            .expect("at least the seed convergent");
        if last.q.is_negative() {
            (-last.p, -last.q)
        } else {
            (last.p, last.q)
        }
    }
}

impl CFrac<IntPoly> {
    /// Negative fraction with non-constant polynomial terms.
    pub fn negative_poly(terms: Vec<IntPoly>) -> Result<Self, CfError> {
        if terms.is_empty() {
            return Err(CfError::InvalidTerms("no terms".into()));
        }
        if terms.iter().any(|t| t.degree().unwrap_or(0) == 0) {
            return Err(CfError::InvalidTerms(
                "polynomial terms must be non-constant".into(),
            ));
        }
        Ok(CFrac {
            kind: CfKind::Negative,
            terms,
        })
    }
}

/// One convergent `p_l / q_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent<T> {
    pub p: T,
    pub q: T,
}

/// The convergent sequence from `(p_0, q_0) = (1, 0)` up to the value of the
/// whole fraction, by `p_l = b_l p_{l-1} + p_{l-2}` where `b_l` is the term
/// itself for positive fractions and the alternating-sign term
/// `(-1)^{l+1} c_l` for negative ones.
pub fn convergents<T: CfRing>(cf: &CFrac<T>) -> Vec<Convergent<T>> {
    let mut out = Vec::with_capacity(cf.len() + 1);
    out.push(Convergent {
        p: T::one(),
        q: T::zero(),
    });
    let (mut p_prev, mut q_prev) = (T::zero(), T::one());
    for (i, t) in cf.terms.iter().enumerate() {
        let b = match cf.kind {
            CfKind::Positive => t.clone(),
            CfKind::Negative if i % 2 == 1 => -t.clone(),
            CfKind::Negative => t.clone(),
        };
        let last = out.last().expect("seeded").clone();
        let p = b.clone() * last.p.clone() + p_prev;
        let q = b * last.q.clone() + q_prev;
        p_prev = last.p;
        q_prev = last.q;
        out.push(Convergent { p, q });
    }
    out
}

/// Rewrites a positive fraction to even length, preserving its value: a
/// final term above 1 splits as `a_n -> (a_n - 1, 1)`, a final 1 merges into
/// its predecessor. `[1]` alone has no even-length form.
pub fn normalize_even(cf: &CFrac<BigInt>) -> Result<CFrac<BigInt>, CfError> {
    assert_eq!(
        cf.kind,
        CfKind::Positive,
        "only positive fractions are normalized"
    );
    if cf.len() % 2 == 0 {
        return Ok(cf.clone());
    }
    let mut terms = cf.terms.clone();
    let last = terms.last().expect("nonempty").clone();
    if last > BigInt::one() {
        *terms.last_mut().expect("nonempty") = last - 1;
        terms.push(BigInt::one());
    } else if terms.len() >= 2 {
        terms.pop();
        *terms.last_mut().expect("len >= 1") += 1;
    } else {
        return Err(CfError::NotNormalizable);
    }
    CFrac::positive(terms)
}

/// Converts an even-length positive fraction to the negative expansion of
/// the same value:
/// `(a_1 + 1, 2 repeated (a_2 - 1) times, a_3 + 2, 2 repeated (a_4 - 1)
/// times, ...)`.
pub fn pos_to_neg(cf: &CFrac<BigInt>) -> Result<CFrac<BigInt>, CfError> {
    assert_eq!(
        cf.kind,
        CfKind::Positive,
        "conversion starts from a positive fraction"
    );
    if cf.len() % 2 != 0 {
        return Err(CfError::OddLength { len: cf.len() });
    }
    let mut out: Vec<BigInt> = Vec::new();
    for (i, pair) in cf.terms.chunks(2).enumerate() {
        let bump = if i == 0 { 1 } else { 2 };
        out.push(&pair[0] + BigInt::from(bump));
        let mut reps = pair[1].clone() - BigInt::one();
        while reps > BigInt::zero() {
            out.push(BigInt::from(2));
            reps -= 1;
        }
    }
    CFrac::negative(out)
}

/// Inverts the positive-to-negative conversion: reads a term sequence with
/// entries at least 2 back into the even-length positive fraction with the
/// same value.
pub fn invert_hirzebruch(terms: &[i64]) -> Result<Vec<i64>, CfError> {
    if terms.is_empty() || terms.iter().any(|&c| c < 2) {
        return Err(CfError::InvalidTerms(format!(
            "expected entries >= 2, got {terms:?}"
        )));
    }
    let mut a = vec![terms[0] - 1];
    let mut i = 1;
    loop {
        let mut run = 0i64;
        while i < terms.len() && terms[i] == 2 {
            run += 1;
            i += 1;
        }
        a.push(run + 1);
        if i >= terms.len() {
            break;
        }
        a.push(terms[i] - 2);
        i += 1;
    }
    debug_assert_eq!(a.len() % 2, 0);
    if a.iter().any(|&t| t < 1) {
        return Err(CfError::InvalidTerms(format!(
            "inversion produced a non-positive term from {terms:?}"
        )));
    }
    Ok(a)
}

/// The 4-periodic sign `(1, 1, -1, -1, ...)` relating alternating-sign
/// convergent numerators to tridiagonal characteristic polynomials.
pub fn epsilon(l: usize) -> i64 {
    let sigma = (2 * l as i64 + if l % 2 == 0 { 1 } else { -1 } - 1) / 4;
    if sigma % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The monic characteristic polynomial of the boundary block with diagonal
/// `e`, computed as the sign-corrected numerator of the polynomial
/// continued fraction `[[x - e_1, ..., x - e_k]]`. Equals the tridiagonal
/// recursion exactly; the empty sequence yields 1.
pub fn charpoly_from_boundary(e: &[i64]) -> IntPoly {
    if e.is_empty() {
        return IntPoly::one();
    }
    let terms: Vec<IntPoly> = e.iter().map(|&d| IntPoly::x_minus(d)).collect();
    let cf = CFrac::negative_poly(terms).expect("linear terms are non-constant");
    let numerator = convergents(&cf).pop().expect("nonempty").p;
    let sign = epsilon(e.len());
    if sign < 0 {
        -numerator
    } else {
        numerator
    }
}

/// Raw (uncorrected) numerator of `[[x - e_1, ..., x - e_k]]`, exposed for
/// the sign-pattern checks.
pub fn boundary_numerator(e: &[i64]) -> IntPoly {
    if e.is_empty() {
        return IntPoly::one();
    }
    let terms: Vec<IntPoly> = e.iter().map(|&d| IntPoly::x_minus(d)).collect();
    let cf = CFrac::negative_poly(terms).expect("linear terms are non-constant");
    convergents(&cf).pop().expect("nonempty").p
}

/// `M(G)` from one boundary: the absolute constant term of the boundary
/// characteristic polynomial.
pub fn matchings_from_boundary(e: &[i64]) -> BigInt {
    charpoly_from_boundary(e).eval_i64(0).abs()
}

/// The canonical sign-sequence fraction of a snake graph: the even-length
/// positive continued fraction whose numerator is the matching count,
/// derived by inverting the Hirzebruch conversion on the neighbour counts of
/// the lower boundary of `black(G)`.
pub fn sign_sequence(g: &PlaneGraph) -> Result<CFrac<BigInt>, CfError> {
    sign_sequence_of(g, Side::Lower)
}

/// The boundary-derived sign sequence for either side.
pub fn sign_sequence_of(g: &PlaneGraph, side: Side) -> Result<CFrac<BigInt>, CfError> {
    let black = blacken(g)?;
    let e = neighbour_counts(&black, side)?;
    let a = invert_hirzebruch(&e)?;
    CFrac::positive_i64(&a)
}

impl fmt::Display for CFrac<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        match self.kind {
            CfKind::Positive => write!(f, "[{}]", terms.join(",")),
            CfKind::Negative => write!(f, "[[{}]]", terms.join(",")),
        }
    }
}
