//! Exact octonions and the 27-dimensional algebra of octonion-Hermitian
//! 3×3 matrices under `A⋆B = AB + BA`, used as a numeric model for
//! commutative identities.

mod octonion;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use octonion::{basis_product, Octonion};

use crate::error::{Error, Result};
use crate::lang::{Algebra, Evaluator, Expr, MacroTable};

/// A Hermitian matrix `[[d1, x12, x13], [x̄12, d2, x23], [x̄13, x̄23, d3]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlbertElement {
    pub diag: [BigRational; 3],
    pub x12: Octonion,
    pub x13: Octonion,
    pub x23: Octonion,
}

type Matrix = [[Octonion; 3]; 3];

impl AlbertElement {
    pub fn zero() -> Self {
        AlbertElement {
            diag: std::array::from_fn(|_| BigRational::zero()),
            x12: Octonion::zero(),
            x13: Octonion::zero(),
            x23: Octonion::zero(),
        }
    }

    pub fn identity() -> Self {
        let mut a = Self::zero();
        a.diag = std::array::from_fn(|_| BigRational::one());
        a
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(|c| c.is_zero())
            && self.x12.is_zero()
            && self.x13.is_zero()
            && self.x23.is_zero()
    }

    /// The 27 coordinates: diagonal, then `x12`, `x13`, `x23`.
    pub fn coordinates(&self) -> Vec<BigRational> {
        let mut v: Vec<BigRational> = self.diag.to_vec();
        for x in [&self.x12, &self.x13, &self.x23] {
            v.extend(x.0.iter().cloned());
        }
        v
    }

    pub fn from_coordinates(c: &[BigRational]) -> Result<Self> {
        if c.len() != 27 {
            return Err(Error::Invalid(format!("expected 27 coordinates, got {}", c.len())));
        }
        let oct = |k: usize| Octonion(std::array::from_fn(|i| c[3 + 8 * k + i].clone()));
        Ok(AlbertElement {
            diag: [c[0].clone(), c[1].clone(), c[2].clone()],
            x12: oct(0),
            x13: oct(1),
            x23: oct(2),
        })
    }

    pub fn matrix(&self) -> Matrix {
        let d = |i: usize| Octonion::scalar(self.diag[i].clone());
        [
            [d(0), self.x12.clone(), self.x13.clone()],
            [self.x12.conj(), d(1), self.x23.clone()],
            [self.x13.conj(), self.x23.conj(), d(2)],
        ]
    }

    /// Reads back a matrix, which must be Hermitian.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        for i in 0..3 {
            if m[i][i] != Octonion::scalar(m[i][i].re().clone()) {
                return Err(Error::Invalid("diagonal entry is not real".into()));
            }
            for j in i + 1..3 {
                if m[j][i] != m[i][j].conj() {
                    return Err(Error::Invalid("matrix is not Hermitian".into()));
                }
            }
        }
        Ok(AlbertElement {
            diag: std::array::from_fn(|i| m[i][i].re().clone()),
            x12: m[0][1].clone(),
            x13: m[0][2].clone(),
            x23: m[1][2].clone(),
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        AlbertElement {
            diag: std::array::from_fn(|i| &self.diag[i] + &o.diag[i]),
            x12: &self.x12 + &o.x12,
            x13: &self.x13 + &o.x13,
            x23: &self.x23 + &o.x23,
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        AlbertElement {
            diag: std::array::from_fn(|i| &self.diag[i] * r),
            x12: self.x12.scale(r),
            x13: self.x13.scale(r),
            x23: self.x23.scale(r),
        }
    }
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Octonion::zero();
            for k in 0..3 {
                acc = &acc + &(&a[i][k] * &b[k][j]);
            }
            acc
        })
    })
}

/// `AB + BA` with octonion matrix products.
pub fn albert_star(a: &AlbertElement, b: &AlbertElement) -> AlbertElement {
    let (ma, mb) = (a.matrix(), b.matrix());
    let (ab, ba) = (mat_mul(&ma, &mb), mat_mul(&mb, &ma));
    let sum: Matrix = std::array::from_fn(|i| std::array::from_fn(|j| &ab[i][j] + &ba[i][j]));
    AlbertElement::from_matrix(&sum).expect("the symmetrized product of Hermitian matrices is Hermitian")
}

/// The algebra with `t_k` bound to `values[k-1]`; its product is `⋆`.
struct Assignment<'a> {
    values: &'a [AlbertElement],
}

impl Algebra for Assignment<'_> {
    type Elem = AlbertElement;

    fn var(&self, k: u8) -> Result<AlbertElement> {
        self.values
            .get(k as usize - 1)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("no value for t{k}")))
    }
    fn zero(&self) -> AlbertElement {
        AlbertElement::zero()
    }
    fn add(&self, a: &AlbertElement, b: &AlbertElement) -> Result<AlbertElement> {
        Ok(a.add(b))
    }
    fn scale(&self, a: &AlbertElement, c: &BigRational) -> Result<AlbertElement> {
        Ok(a.scale(c))
    }
    fn mul(&self, a: &AlbertElement, b: &AlbertElement) -> Result<AlbertElement> {
        Ok(albert_star(a, b))
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn commutative_bracket(&self, _: &mut Vec<String>) -> Result<AlbertElement> {
        Err(Error::Unsupported("brackets cannot be evaluated with the symmetrized product".into()))
    }
}

/// Evaluates a commutative expression with juxtaposition read as `⋆`.
pub fn evaluate(e: &Expr, macros: &MacroTable, values: &[AlbertElement]) -> Result<AlbertElement> {
    if e.has_literal_bracket() {
        return Err(Error::Unsupported("brackets cannot be evaluated with the symmetrized product".into()));
    }
    let alg = Assignment { values };
    Evaluator::new(&alg, macros).eval(e)
}

/// A seeded element with integer coordinates in `[-bound, bound]`.
pub fn random_element(rng: &mut ChaCha8Rng, bound: i64) -> AlbertElement {
    let c: Vec<BigRational> = (0..27)
        .map(|_| BigRational::from_integer(rng.gen_range(-bound..=bound).into()))
        .collect();
    AlbertElement::from_coordinates(&c).expect("27 coordinates")
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub sample: usize,
    /// Coordinates of each argument, as strings of rationals.
    pub arguments: Vec<Vec<String>>,
    pub value: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub expression: String,
    pub seed: u64,
    pub samples: usize,
    pub bound: i64,
    pub zero_count: usize,
    pub first_nonzero: Option<Witness>,
}

impl SampleReport {
    pub fn all_zero(&self) -> bool {
        self.zero_count == self.samples
    }
}

fn coords(a: &AlbertElement) -> Vec<String> {
    a.coordinates().iter().map(|c| c.to_string()).collect()
}

/// Evaluates `e` at `n` seeded random arguments; deterministic in `seed`.
pub fn sample_report(e: &Expr, text: &str, macros: &MacroTable, seed: u64, n: usize, bound: i64) -> Result<SampleReport> {
    if n == 0 {
        return Err(Error::Invalid("at least one sample is needed".into()));
    }
    let arity = e.max_variable().max(1) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<Vec<AlbertElement>> = (0..n)
        .map(|_| (0..arity).map(|_| random_element(&mut rng, bound)).collect())
        .collect();
    let values: Vec<AlbertElement> = inputs
        .par_iter()
        .map(|args| evaluate(e, macros, args))
        .collect::<Result<_>>()?;
    let zero_count = values.iter().filter(|v| v.is_zero()).count();
    let first_nonzero = values.iter().position(|v| !v.is_zero()).map(|i| Witness {
        sample: i,
        arguments: inputs[i].iter().map(coords).collect(),
        value: coords(&values[i]),
    });
    Ok(SampleReport {
        expression: text.to_string(),
        seed,
        samples: n,
        bound,
        zero_count,
        first_nonzero,
    })
}
