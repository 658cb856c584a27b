use std::fmt;
use std::sync::Arc;

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Entry domains for exact matrices: the rationals, a polynomial ring, or
/// its fraction field. `exact_div` must be exact whenever the algorithms
/// here invoke it (Bareiss only divides by earlier pivots).
pub trait Scalar: Clone + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;
    /// Multiplicative inverse, when the domain admits one for this element.
    fn try_recip(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
    fn try_recip(&self) -> Option<Self> {
        if Rational::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.context())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.context())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Polynomial::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Polynomial::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Polynomial::mul(self, o)
    }
    fn neg(&self) -> Self {
        Polynomial::neg(self)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self.try_exact_div(o)
            .expect("inexact polynomial division inside a fraction-free algorithm")
    }
    fn try_recip(&self) -> Option<Self> {
        if self.is_constant() && !Polynomial::is_zero(self) {
            Some(Polynomial::constant(self.context(), self.constant_value().recip()))
        } else {
            None
        }
    }
}

impl Scalar for Fraction {
    fn zero_like(&self) -> Self {
        Fraction::zero(self.context())
    }
    fn one_like(&self) -> Self {
        Fraction::one(self.context())
    }
    fn is_zero(&self) -> bool {
        Fraction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Fraction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Fraction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fraction::mul(self, o)
    }
    fn neg(&self) -> Self {
        Fraction::neg(self)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self.div(o)
    }
    fn try_recip(&self) -> Option<Self> {
        if Fraction::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// A dense rectangular matrix over an exact scalar domain.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix { rows, cols, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn identity_like(example: &T, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                example.one_like()
            } else {
                example.zero_like()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = self.at(i, 0).mul(other.at(0, j));
            for k in 1..self.cols {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        })
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).sub(other.at(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn exemplar(&self) -> Result<&T> {
        self.entries
            .first()
            .ok_or_else(|| Error::Shape("empty matrix".into()))
    }

    /// Fraction-free Bareiss determinant. All divisions performed are exact
    /// in the entry domain.
    pub fn det_bareiss(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let one = self.exemplar()?.one_like();
        let n = self.rows;
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = one.clone();
        for k in 0..n {
            if m.at(k, k).is_zero() {
                // Find a pivot row below.
                match (k + 1..n).find(|&r| !m.at(r, k).is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            let a = m.at(k, j).clone();
                            let b = m.at(r, j).clone();
                            m.set(k, j, b);
                            m.set(r, j, a);
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(self.exemplar()?.zero_like()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m.at(i, j).mul(m.at(k, k)).sub(&m.at(i, k).mul(m.at(k, j)));
                    m.set(i, j, t.exact_div(&prev));
                }
                m.set(i, k, m.at(i, k).zero_like());
            }
            prev = m.at(k, k).clone();
        }
        let det = m.at(n - 1, n - 1).clone();
        Ok(if sign_flip { det.neg() } else { det })
    }

    /// Determinant by cofactor expansion along the first row. Exponential;
    /// used as an independent oracle in tests.
    pub fn det_cofactor(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::Shape("cofactor determinant of non-square".into()));
        }
        let zero = self.exemplar()?.zero_like();
        if self.rows == 1 {
            return Ok(self.at(0, 0).clone());
        }
        let mut acc = zero;
        for j in 0..self.cols {
            if self.at(0, j).is_zero() {
                continue;
            }
            let minor = self.minor(0, j);
            let term = self.at(0, j).mul(&minor.det_cofactor()?);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        Ok(acc)
    }

    pub fn minor(&self, drop_row: usize, drop_col: usize) -> Matrix<T> {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == drop_row {
                continue;
            }
            for j in 0..self.cols {
                if j == drop_col {
                    continue;
                }
                entries.push(self.at(i, j).clone());
            }
        }
        Matrix::new(self.rows - 1, self.cols - 1, entries)
    }

    /// Adjugate: adj(m)[i][j] = (-1)^(i+j) det(minor(j, i)).
    pub fn adjugate(&self) -> Result<Matrix<T>> {
        if self.rows != self.cols {
            return Err(Error::Shape("adjugate of non-square".into()));
        }
        if self.rows == 1 {
            return Ok(Matrix::new(1, 1, vec![self.exemplar()?.one_like()]));
        }
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.minor(j, i).det_bareiss()?;
                out.push(if (i + j) % 2 == 0 { d } else { d.neg() });
            }
        }
        Ok(Matrix::new(self.rows, self.cols, out))
    }

    /// Solves m * x = rhs by Gaussian elimination over a field-like domain
    /// (every nonzero pivot must be invertible).
    pub fn solve_exact(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.rows != self.cols {
            return Err(Error::Shape("solve with non-square matrix".into()));
        }
        if rhs.rows != self.rows {
            return Err(Error::Shape("right-hand side row count mismatch".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for k in 0..n {
            let pivot_row = (k..n)
                .find(|&r| !a.at(r, k).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != k {
                for j in 0..n {
                    let (x, y) = (a.at(k, j).clone(), a.at(pivot_row, j).clone());
                    a.set(k, j, y);
                    a.set(pivot_row, j, x);
                }
                for j in 0..b.cols {
                    let (x, y) = (b.at(k, j).clone(), b.at(pivot_row, j).clone());
                    b.set(k, j, y);
                    b.set(pivot_row, j, x);
                }
            }
            let inv = a
                .at(k, k)
                .try_recip()
                .ok_or_else(|| Error::Shape("pivot not invertible in entry domain".into()))?;
            for j in k..n {
                a.set(k, j, a.at(k, j).mul(&inv));
            }
            for j in 0..b.cols {
                b.set(k, j, b.at(k, j).mul(&inv));
            }
            for i in 0..n {
                if i == k || a.at(i, k).is_zero() {
                    continue;
                }
                let f = a.at(i, k).clone();
                for j in k..n {
                    a.set(i, j, a.at(i, j).sub(&f.mul(a.at(k, j))));
                }
                for j in 0..b.cols {
                    b.set(i, j, b.at(i, j).sub(&f.mul(b.at(k, j))));
                }
            }
        }
        Ok(b)
    }

    /// Inverse computed through the adjugate, so each entry is a cofactor
    /// quotient whose denominator divides det(m).
    pub fn inverse_adjugate(&self) -> Result<Matrix<T>> {
        let det = self.det_bareiss()?;
        let inv = det.try_recip().ok_or(Error::SingularMatrix)?;
        let adj = self.adjugate()?;
        Ok(adj.map(|e| e.mul(&inv)))
    }
}

impl Matrix<Polynomial> {
    /// Promotes polynomial entries into the fraction field.
    pub fn to_fractions(&self) -> Matrix<Fraction> {
        self.map(|p| Fraction::from_poly(p.clone()))
    }

    /// Inverse over the fraction field with denominators dividing det(m).
    pub fn inverse_to_fractions(&self) -> Result<Matrix<Fraction>> {
        let det = self.det_bareiss()?;
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let adj = self.adjugate()?;
        Ok(adj.map(|p| Fraction::new(p.clone(), det.clone())))
    }
}

impl Matrix<Rational> {
    pub fn parse(ctx: &Arc<VarContext>, rows: usize, cols: usize, src: &str) -> Result<Self> {
        let polys = crate::parse::parse_poly_list(ctx, src)?;
        if polys.len() != rows * cols {
            return Err(Error::Shape("wrong number of matrix entries".into()));
        }
        let mut entries = Vec::with_capacity(polys.len());
        for p in polys {
            if !p.is_constant() {
                return Err(Error::Shape("expected constant entries".into()));
            }
            entries.push(p.constant_value());
        }
        Ok(Matrix::new(rows, cols, entries))
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn qi(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn det_two_by_two() {
        let m = Matrix::new(2, 2, vec![qi(1), qi(2), qi(3), qi(4)]);
        assert_eq!(m.det_bareiss().unwrap(), qi(-2));
    }

    #[test]
    fn det_identity_five() {
        let m = Matrix::identity_like(&qi(1), 5);
        assert_eq!(m.det_bareiss().unwrap(), qi(1));
    }

    #[test]
    fn det_with_zero_pivot() {
        let m = Matrix::new(2, 2, vec![qi(0), qi(1), qi(1), qi(0)]);
        assert_eq!(m.det_bareiss().unwrap(), qi(-1));
    }

    #[test]
    fn solve_identity() {
        let id = Matrix::identity_like(&qi(1), 3);
        let rhs = Matrix::new(3, 1, vec![qi(5), qi(-1), q(1, 2)]);
        assert_eq!(id.solve_exact(&rhs).unwrap(), rhs);
    }

    #[test]
    fn inverse_diag() {
        let m = Matrix::new(2, 2, vec![qi(2), qi(0), qi(0), qi(3)]);
        let inv = m.inverse_adjugate().unwrap();
        assert_eq!(inv.at(0, 0), &q(1, 2));
        assert_eq!(inv.at(1, 1), &q(1, 3));
        assert!(m.mul(&inv) == Matrix::identity_like(&qi(1), 2));
    }

    #[test]
    fn singular_reported() {
        let m = Matrix::new(2, 2, vec![qi(1), qi(2), qi(2), qi(4)]);
        assert!(matches!(m.inverse_adjugate(), Err(Error::SingularMatrix)));
        let rhs = Matrix::new(2, 1, vec![qi(1), qi(1)]);
        assert!(matches!(m.solve_exact(&rhs), Err(Error::SingularMatrix)));
    }

    #[test]
    fn bareiss_matches_cofactor_on_polynomials() {
        use crate::parse::parse_poly;
        let ctx = VarContext::simple("x", &["x", "y"]);
        let p = |s: &str| parse_poly(&ctx, s).unwrap();
        let m = Matrix::new(
            3,
            3,
            vec![
                p("x"),
                p("y"),
                p("1"),
                p("x+y"),
                p("x*y"),
                p("0"),
                p("y^2"),
                p("x^2"),
                p("x-y"),
            ],
        );
        assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
    }
}
