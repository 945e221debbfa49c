//! Exact certification that an integer matrix is integer-like and has no
//! eigenvalue products of modulus one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cancel::{CancelToken, Cancelled};
use crate::poly::Poly;
use crate::{IntMatrix, IntPolynomial, RationalPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperbolicError {
    #[error("matrix is {0}×{1}, not square")]
    NotSquare(usize, usize),
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("exterior square needs at least a 2×2 matrix")]
    TooSmall,
    #[error("hyperbolicity level {0} is not supported (use 1 or 2)")]
    UnsupportedLevel(u8),
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
}

fn check_square(m: &IntMatrix) -> Result<(), HyperbolicError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(HyperbolicError::NotSquare(m.rows(), m.cols()))
    }
}

pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial, HyperbolicError> {
    char_poly_with(m, &CancelToken::never())
}

pub fn char_poly_with(m: &IntMatrix, cancel: &CancelToken) -> Result<IntPolynomial, HyperbolicError> {
    check_square(m)?;
    Ok(m.char_poly_with(cancel)?)
}

pub fn is_integer_like(p: &IntPolynomial) -> Result<bool, HyperbolicError> {
    if !p.is_monic() {
        return Err(HyperbolicError::NotMonic(p.to_string()));
    }
    Ok(p.coeff(0).abs().is_one())
}

pub fn exterior_square_char_poly(m: &IntMatrix) -> Result<IntPolynomial, HyperbolicError> {
    exterior_square_char_poly_with(m, &CancelToken::never())
}

pub fn exterior_square_char_poly_with(m: &IntMatrix, cancel: &CancelToken) -> Result<IntPolynomial, HyperbolicError> {
    check_square(m)?;
    if m.rows() < 2 {
        return Err(HyperbolicError::TooSmall);
    }
    Ok(m.exterior_square().char_poly_with(cancel)?)
}

/// Which stage of the unit-circle test decided the answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitCircleStage {
    RootAtOne,
    RootAtMinusOne,
    /// `gcd(p, reverse p)` is constant.
    NoReciprocalFactor,
    /// Sturm count of `q` on `(−2, 2)` where the reciprocal factor is
    /// `x^d q(x + 1/x)`.
    Sturm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitCircleEvidence {
    pub exists: bool,
    pub stage: UnitCircleStage,
    pub reciprocal_gcd_degree: usize,
    pub sturm_root_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_polynomial: Option<IntPolynomial>,
}

impl UnitCircleEvidence {
    pub fn description(&self) -> String {
        match self.stage {
            UnitCircleStage::RootAtOne => "1 is a root".to_string(),
            UnitCircleStage::RootAtMinusOne => "-1 is a root".to_string(),
            UnitCircleStage::NoReciprocalFactor => "no reciprocal factor".to_string(),
            UnitCircleStage::Sturm => format!(
                "reciprocal factor of degree {}, {} root(s) of {} in (-2, 2)",
                self.reciprocal_gcd_degree,
                self.sturm_root_count,
                self.trace_polynomial.as_ref().map(ToString::to_string).unwrap_or_default()
            ),
        }
    }
}

pub fn unit_circle_root_exists(p: &IntPolynomial) -> Result<UnitCircleEvidence, HyperbolicError> {
    unit_circle_root_exists_with(p, &CancelToken::never())
}

/// Exact decision whether `p` has a root of modulus one.
pub fn unit_circle_root_exists_with(
    p: &IntPolynomial,
    cancel: &CancelToken,
) -> Result<UnitCircleEvidence, HyperbolicError> {
    if p.is_zero() {
        return Err(HyperbolicError::ZeroPolynomial);
    }
    let p = p.strip_zero_roots();
    let early = |stage, exists| UnitCircleEvidence {
        exists,
        stage,
        reciprocal_gcd_degree: 0,
        sturm_root_count: 0,
        trace_polynomial: None,
    };
    if p.eval(&BigInt::one()).is_zero() {
        return Ok(early(UnitCircleStage::RootAtOne, true));
    }
    if p.eval(&-BigInt::one()).is_zero() {
        return Ok(early(UnitCircleStage::RootAtMinusOne, true));
    }
    let g = p.gcd_integer(&p.reverse());
    let deg = g.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(early(UnitCircleStage::NoReciprocalFactor, false));
    }
    cancel.check()?;
    // With ±1 excluded the roots of g pair off as z, 1/z, so g is palindromic
    // of even degree.
    debug_assert!(deg.is_multiple_of(2) && g.reverse() == g);
    let q = trace_polynomial(&g);
    let count = sturm_count(&q.to_rational(), -2, 2, cancel)?;
    Ok(UnitCircleEvidence {
        exists: count > 0,
        stage: UnitCircleStage::Sturm,
        reciprocal_gcd_degree: deg,
        sturm_root_count: count,
        trace_polynomial: Some(q),
    })
}

/// For palindromic `g` of degree `2d`, the `q` with `g(x) = x^d q(x + 1/x)`.
pub fn trace_polynomial(g: &IntPolynomial) -> IntPolynomial {
    let d = g.degree().unwrap_or(0) / 2;
    // D_k(y) with D_k(x + 1/x) = x^k + x^{-k}
    let y = Poly::x();
    let mut dickson: Vec<IntPolynomial> = vec![Poly::constant(BigInt::from(2)), y.clone()];
    for k in 2..=d {
        let next = y.clone() * dickson[k - 1].clone() - dickson[k - 2].clone();
        dickson.push(next);
    }
    let mut q = Poly::constant(g.coeff(d));
    for (k, dk) in dickson.iter().enumerate().take(d + 1).skip(1) {
        q = q + dk.scale(&g.coeff(d + k));
    }
    q
}

/// Number of distinct real roots of `p` in `(a, b]` by a Sturm chain.
pub fn sturm_count(p: &RationalPolynomial, a: i64, b: i64, cancel: &CancelToken) -> Result<usize, Cancelled> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        cancel.check()?;
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    let variations = |x: i64| {
        let x = BigRational::from_integer(BigInt::from(x));
        let signs: Vec<bool> = chain
            .iter()
            .map(|q| q.eval(&x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    Ok(variations(a).saturating_sub(variations(b)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageReport {
    /// `1` for eigenvalues, `2` for pair products.
    pub level: u8,
    pub char_poly: IntPolynomial,
    pub evidence: UnitCircleEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperbolicityCertificate {
    pub level: u8,
    pub valid: bool,
    pub integer_like: bool,
    pub char_poly: IntPolynomial,
    pub reciprocal_gcd_degree: usize,
    pub sturm_root_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compound_char_poly: Option<IntPolynomial>,
    pub stages: Vec<StageReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub fn is_c_hyperbolic(m: &IntMatrix, c: u8) -> Result<HyperbolicityCertificate, HyperbolicError> {
    is_c_hyperbolic_with(m, c, &CancelToken::never())
}

/// Level 1 checks the eigenvalues, level 2 also the products `μ_i μ_j`,
/// `i < j`, via the exterior square. Stops at the first failing stage.
pub fn is_c_hyperbolic_with(
    m: &IntMatrix,
    c: u8,
    cancel: &CancelToken,
) -> Result<HyperbolicityCertificate, HyperbolicError> {
    if !(1..=2).contains(&c) {
        return Err(HyperbolicError::UnsupportedLevel(c));
    }
    let p = char_poly_with(m, cancel)?;
    let ev = unit_circle_root_exists_with(&p, cancel)?;
    let mut cert = HyperbolicityCertificate {
        level: c,
        valid: !ev.exists,
        integer_like: is_integer_like(&p)?,
        char_poly: p.clone(),
        reciprocal_gcd_degree: ev.reciprocal_gcd_degree,
        sturm_root_count: ev.sturm_root_count,
        compound_char_poly: None,
        reason: ev.exists.then(|| format!("eigenvalue on unit circle: {}", ev.description())),
        stages: vec![StageReport { level: 1, char_poly: p, evidence: ev }],
    };
    if cert.valid && c == 2 && m.rows() >= 2 {
        let q = exterior_square_char_poly_with(m, cancel)?;
        let ev = unit_circle_root_exists_with(&q, cancel)?;
        cert.valid = !ev.exists;
        cert.reciprocal_gcd_degree = cert.reciprocal_gcd_degree.max(ev.reciprocal_gcd_degree);
        cert.sturm_root_count += ev.sturm_root_count;
        cert.compound_char_poly = Some(q.clone());
        if ev.exists {
            cert.reason = Some(format!("pair product on unit circle: {}", ev.description()));
        }
        cert.stages.push(StageReport { level: 2, char_poly: q, evidence: ev });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn cat() -> IntMatrix {
        IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]])
    }

    fn cubic() -> IntMatrix {
        IntMatrix::companion(&p("x^3 - x^2 - 2x + 1"))
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(char_poly(&cat()).unwrap(), p("x^2 - 3x + 1"));
        assert_eq!(char_poly(&IntMatrix::identity(4)).unwrap(), p("x - 1").pow(4));
        assert_eq!(char_poly(&cubic()).unwrap(), p("x^3 - x^2 - 2x + 1"));
        assert!(matches!(char_poly(&IntMatrix::zeros(2, 3)), Err(HyperbolicError::NotSquare(2, 3))));
    }

    #[test]
    fn integer_likeness() {
        assert!(is_integer_like(&p("x^2 - 3x + 1")).unwrap());
        assert!(!is_integer_like(&p("x^2 - 2")).unwrap());
        assert!(is_integer_like(&p("x^3 - x^2 - 2x + 1")).unwrap());
        assert!(is_integer_like(&p("2x^2 + 1")).is_err());
    }

    #[test]
    fn unit_circle_examples() {
        let e = unit_circle_root_exists(&p("x^2 + x + 1")).unwrap();
        assert!(e.exists);
        assert_eq!(e.trace_polynomial, Some(p("x + 1")));
        assert!(!unit_circle_root_exists(&p("x^2 - 3x + 1")).unwrap().exists);
        let e = unit_circle_root_exists(&p("x^2 - 1")).unwrap();
        assert!(e.exists && e.stage == UnitCircleStage::RootAtOne);
        assert!(unit_circle_root_exists(&p("x^4 + x^3 + x^2 + x + 1")).unwrap().exists);
        assert!(!unit_circle_root_exists(&p("x^3 - x^2 - 2x + 1")).unwrap().exists);
        assert!(unit_circle_root_exists(&p("x^3 + x^2")).unwrap().exists);
        assert!(!unit_circle_root_exists(&p("x^2 - 2")).unwrap().exists);
        assert_eq!(unit_circle_root_exists(&IntPolynomial::zero()), Err(HyperbolicError::ZeroPolynomial));
        // Salem-type: x^4 - x^3 - x^2 - x + 1 has two roots on the circle
        let e = unit_circle_root_exists(&p("x^4 - x^3 - x^2 - x + 1")).unwrap();
        assert!(e.exists && e.sturm_root_count == 1);
    }

    #[test]
    fn trace_polynomial_of_cyclotomics() {
        // Φ5 = x^2 q(x + 1/x), q = y^2 + y - 1
        assert_eq!(trace_polynomial(&p("x^4 + x^3 + x^2 + x + 1")), p("x^2 + x - 1"));
        assert_eq!(trace_polynomial(&p("x^2 + 1")), p("x"));
    }

    #[test]
    fn exterior_squares() {
        assert_eq!(exterior_square_char_poly(&cubic()).unwrap(), p("x^3 + 2x^2 - x - 1"));
        assert_eq!(exterior_square_char_poly(&cat()).unwrap(), p("x - 1"));
        assert_eq!(exterior_square_char_poly(&IntMatrix::identity(3)).unwrap(), p("x - 1").pow(3));
        assert_eq!(exterior_square_char_poly(&IntMatrix::identity(1)), Err(HyperbolicError::TooSmall));
    }

    #[test]
    fn c_hyperbolic_levels() {
        let c1 = is_c_hyperbolic(&cat(), 1).unwrap();
        assert!(c1.valid && c1.integer_like);
        let c2 = is_c_hyperbolic(&cat(), 2).unwrap();
        assert!(!c2.valid);
        assert!(c2.reason.unwrap().starts_with("pair product on unit circle"));
        let cubic2 = is_c_hyperbolic(&cubic(), 2).unwrap();
        assert!(cubic2.valid);
        assert_eq!(cubic2.stages.len(), 2);
        assert_eq!(cubic2.compound_char_poly, Some(p("x^3 + 2x^2 - x - 1")));
        assert_eq!(is_c_hyperbolic(&cat(), 3), Err(HyperbolicError::UnsupportedLevel(3)));
        // 1×1 skips the compound stage
        let one = is_c_hyperbolic(&IntMatrix::from_i64_rows(&[&[2]]), 2).unwrap();
        assert!(one.valid && !one.integer_like && one.stages.len() == 1);
    }

    #[test]
    fn cancellation_is_honoured() {
        let t = CancelToken::new();
        t.cancel();
        assert!(matches!(is_c_hyperbolic_with(&cubic(), 2, &t), Err(HyperbolicError::Cancelled(_))));
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(-4i64..=4, n * n)
                .prop_map(move |v| IntMatrix::from_vec(n, n, v.into_iter().map(BigInt::from).collect()))
        })
    }

    proptest! {
        #[test]
        fn reverse_and_gcd_symmetry(m in arb_matrix()) {
            let q = char_poly(&m).unwrap().strip_zero_roots();
            let rr = q.reverse().reverse();
            prop_assert!(rr == q || rr == -q.clone());
            let g1 = q.gcd_integer(&q.reverse());
            let g2 = q.reverse().gcd_integer(&q);
            prop_assert!(g1 == g2 || g1 == -g2);
        }

        #[test]
        fn unimodular_iff_integer_like(m in arb_matrix()) {
            let d = m.determinant();
            prop_assert_eq!(d.abs().is_one(), is_integer_like(&char_poly(&m).unwrap()).unwrap());
        }
    }
}
