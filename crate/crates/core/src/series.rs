//! Truncated formal power series over ℚ without constant term, used for
//! exponential generating functions of operads and the Koszulity test.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::term::Multidegree;
use crate::tideal::{quotient_dim, Strategy, VarietyPresentation};

/// `c_1 x + … + c_N x^N`, stored as `coeffs[n - 1] = c_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order],
        }
    }

    /// The series `x` to the given order.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = BigRational::one();
        }
        s
    }

    /// `Σ (-1)^n d_n x^n / n!`.
    pub fn from_dims(dims: &[u64]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Invalid("no dimensions given".into()));
        }
        let coeffs = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let n = i + 1;
                let sign = if n % 2 == 0 { 1 } else { -1 };
                BigRational::new(BigInt::from(d) * sign, factorial(n))
            })
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `x^n` (zero for `n = 0`).
    pub fn coeff(&self, n: usize) -> BigRational {
        if n == 0 {
            return BigRational::zero();
        }
        self.coeffs.get(n - 1).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Invalid(format!(
                "series known to order {} but order {order} requested",
                self.order()
            )));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (1..=n).map(|k| self.coeff(k) - other.coeff(k)).collect(),
        }
    }

    /// Product truncated at `order`.
    pub fn mul(&self, other: &Self, order: usize) -> Self {
        let mut out = Self::zero(order);
        for i in 1..=self.order() {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in 1..=other.order() {
                if i + j > order {
                    break;
                }
                out.coeffs[i + j - 1] += &a * other.coeff(j);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest `n` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| i + 1)
    }
}

/// `g(h(x))` to the given order, by Horner's rule on powers of `h`.
pub fn compose(g: &TruncatedSeries, h: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    if g.order() < order || h.order() < order {
        return Err(Error::Invalid(format!(
            "composition to order {order} needs both series to that order"
        )));
    }
    let mut out = TruncatedSeries::zero(order);
    let mut power = h.truncate(order)?;
    for n in 1..=order {
        let c = g.coeff(n);
        if !c.is_zero() {
            for k in 1..=order {
                out.coeffs[k - 1] += &c * power.coeff(k);
            }
        }
        if n < order {
            power = power.mul(h, order);
        }
    }
    Ok(out)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for n in 1..=self.order() {
            let c = self.coeff(n);
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = if n == 1 { "x".to_string() } else { format!("x^{n}") };
            if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a} {mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Outcome of the generating-function test for a variety and its dual.
#[derive(Debug, Clone, Serialize)]
pub struct KoszulReport {
    pub variety: String,
    pub dual: String,
    pub order: usize,
    pub dims: Vec<u64>,
    pub dual_dims: Vec<u64>,
    /// Coefficients of `G(G^!(x)) - x`, lowest degree first.
    pub residual: Vec<String>,
    pub residual_text: String,
    /// A nonzero residual rules out Koszulity.
    pub koszul_excluded: bool,
    pub warnings: Vec<String>,
}

/// Dimensions of the multilinear components of degrees `1..=order`.
pub fn multilinear_dims(v: &VarietyPresentation, order: usize, strategy: &Strategy) -> Result<(Vec<u64>, Vec<String>)> {
    let mut dims = Vec::new();
    let mut warnings = Vec::new();
    for n in 1..=order {
        let r = quotient_dim(v, &Multidegree::multilinear(n), 0, strategy)?;
        for w in r.warnings {
            warnings.push(format!("degree {n}: {w}"));
        }
        dims.push(r.dim as u64);
    }
    Ok((dims, warnings))
}

/// `G_V(G_{V^!}(x)) - x` to the given order.
pub fn koszul_residual(
    v: &VarietyPresentation,
    dual: &VarietyPresentation,
    order: usize,
    strategy: &Strategy,
) -> Result<KoszulReport> {
    let (dims, mut warnings) = multilinear_dims(v, order, strategy)?;
    let (dual_dims, w2) = multilinear_dims(dual, order, strategy)?;
    warnings.extend(w2);
    let g = TruncatedSeries::from_dims(&dims)?;
    let h = TruncatedSeries::from_dims(&dual_dims)?;
    let residual = compose(&g, &h, order)?.sub(&TruncatedSeries::x(order));
    Ok(KoszulReport {
        variety: v.name.clone(),
        dual: dual.name.clone(),
        order,
        dims,
        dual_dims,
        residual: residual.coefficients().iter().map(|c| c.to_string()).collect(),
        residual_text: residual.to_string(),
        koszul_excluded: !residual.is_zero(),
        warnings,
    })
}
