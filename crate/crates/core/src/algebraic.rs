//! Algebraic numbers as an exact polynomial plus a numeric isolating disc,
//! and numeric polynomial roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::IntPolynomial;

/// Roots of a polynomial with real coefficients by the Aberth iteration.
/// Coefficients are ascending; the leading one must be nonzero.
pub fn aberth_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let a: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound
    let radius = 1.0 + a[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, t)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut converged = true;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 1e-15 * (1.0 + z[i].norm()) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap().then(x.im.partial_cmp(&y.im).unwrap()));
    z
}

/// Yun's square-free factorisation: `p = c · Π a_i^i`, returned as
/// `(a_i, i)` with nonconstant primitive `a_i`.
pub fn squarefree_factors(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.to_rational();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let mut c = df.div_rem(&a0).0;
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let d = c - b.derivative();
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((Poly::from_rational(&a).primitive_part(), i));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        i += 1;
    }
    out
}

/// A root of an integer polynomial, located by an approximation and a disc
/// radius small enough to separate it from the other roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraicNumber {
    pub poly: IntPolynomial,
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl AlgebraicNumber {
    pub fn approx(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.approx().norm()
    }

    /// The root of the square-free `poly` nearest to `z`.
    pub fn locate(poly: &IntPolynomial, z: Complex64) -> Self {
        let sf = poly.squarefree_part().primitive_part();
        let roots = aberth_roots(&sf.to_f64_coeffs());
        let (k, _) = roots
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (**a - z).norm().partial_cmp(&(**b - z).norm()).unwrap())
            .expect("nonconstant polynomial");
        Self::from_roots(sf, &roots, k)
    }

    fn from_roots(poly: IntPolynomial, roots: &[Complex64], k: usize) -> Self {
        let sep = roots
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, r)| (*r - roots[k]).norm())
            .fold(f64::INFINITY, f64::min);
        let radius = if sep.is_finite() { sep / 2.0 } else { 1.0 };
        AlgebraicNumber { poly, re: roots[k].re, im: roots[k].im, radius }
    }

    /// Product `self · other`, with polynomial from the resultant
    /// `Res_y(p(y), y^m q(x / y))`.
    pub fn mul(&self, other: &Self) -> Self {
        let r = product_polynomial(&self.poly, &other.poly);
        Self::locate(&r, self.approx() * other.approx())
    }
}

/// All roots with multiplicity, grouped by square-free factor.
pub fn spectrum(p: &IntPolynomial) -> Vec<AlgebraicNumber> {
    let mut out = Vec::new();
    for (f, mult) in squarefree_factors(p) {
        let roots = aberth_roots(&f.to_f64_coeffs());
        for k in 0..roots.len() {
            let a = AlgebraicNumber::from_roots(f.clone(), &roots, k);
            out.extend(std::iter::repeat_n(a, mult));
        }
    }
    out
}

/// Polynomial vanishing at all products `αβ` with `p(α) = 0`, `q(β) = 0`.
pub fn product_polynomial(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    let m = p.degree().expect("nonzero p");
    let n = q.degree().expect("nonzero q");
    // coefficients in y (ascending) with entries in Z[x]
    let a: Vec<Poly<BigInt>> = p.coeffs().iter().map(|c| Poly::constant(c.clone())).collect();
    let b: Vec<Poly<BigInt>> = (0..=n).map(|j| Poly::monomial(q.coeff(n - j), n - j)).collect();
    let res = resultant(&a, &b, m, n);
    let res = res.primitive_part();
    if res.is_zero() {
        return Poly::x();
    }
    res
}

/// Sylvester resultant of polynomials with ascending coefficient lists `a`
/// (formal degree `m`) and `b` (formal degree `n`) over `Z[x]`.
fn resultant(a: &[Poly<BigInt>], b: &[Poly<BigInt>], m: usize, n: usize) -> Poly<BigInt> {
    let size = m + n;
    let mut s = Matrix::<Poly<BigInt>>::zeros(size, size);
    for r in 0..n {
        for k in 0..=m {
            s[(r, r + k)] = a[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            s[(n + r, r + k)] = b[n - k].clone();
        }
    }
    s.determinant()
}
