use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

/// `e_i e_j = MUL[i][j].0 * e_{MUL[i][j].1}`, from Cayley–Dickson doubling of
/// the quaternions with `(a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))`.
const MUL: [[(i8, u8); 8]; 8] = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
    [(1, 4), (-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 5), (1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 6), (1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(1, 7), (-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
];

/// Sign and index of `e_i e_j`.
pub fn basis_product(i: usize, j: usize) -> (i8, usize) {
    let (s, k) = MUL[i][j];
    (s, k as usize)
}

/// An octonion with rational coordinates on `e0, …, e7`; `e0` is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Octonion(pub [BigRational; 8]);

impl Octonion {
    pub fn zero() -> Self {
        Octonion(std::array::from_fn(|_| BigRational::zero()))
    }

    pub fn scalar(r: BigRational) -> Self {
        let mut o = Self::zero();
        o.0[0] = r;
        o
    }

    pub fn basis(i: usize) -> Self {
        let mut o = Self::zero();
        o.0[i] = BigRational::from_integer(1.into());
        o
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        Octonion(c.map(|x| BigRational::from_integer(x.into())))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.0[0]
    }

    pub fn conj(&self) -> Self {
        let mut o = self.clone();
        for c in o.0.iter_mut().skip(1) {
            *c = -c.clone();
        }
        o
    }

    /// Sum of squares of the coordinates.
    pub fn norm(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, c| acc + c * c)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Octonion(std::array::from_fn(|i| &self.0[i] * r))
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, o: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, o: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(std::array::from_fn(|i| -self.0[i].clone()))
    }
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, o: &Octonion) -> Octonion {
        let mut out = Octonion::zero();
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = MUL[i][j];
                let p = a * b;
                if s > 0 {
                    out.0[k as usize] += p;
                } else {
                    out.0[k as usize] -= p;
                }
            }
        }
        out
    }
}
