use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::Integer;
use num::{One, Zero};

use crate::context::VarContext;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A quotient of two polynomials.
///
/// Fractions are normalized only by removing the integer content and the
/// common monomial factor of numerator and denominator; no multivariate gcd
/// is taken. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct Fraction {
    num: Polynomial,
    den: Polynomial,
}

impl Fraction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = Fraction { num, den };
        f.reduce();
        f
    }

    pub fn from_poly(num: Polynomial) -> Self {
        let den = Polynomial::one(num.context());
        Fraction { num, den }
    }

    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Fraction { num: Polynomial::zero(ctx), den: Polynomial::one(ctx) }
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Fraction { num: Polynomial::one(ctx), den: Polynomial::one(ctx) }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn context(&self) -> &Arc<VarContext> {
        self.num.context()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when numerator and denominator are equal polynomials times a
    /// rational, i.e. the fraction is a constant; returns that constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_zero() {
            return Some(Rational::zero());
        }
        if self.num.is_constant() && self.den.is_constant() {
            return Some(&self.num.constant_value() / &self.den.constant_value());
        }
        None
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.num.context());
            return;
        }
        let m = self.num.monomial_content();
        let md = self.den.monomial_content();
        let common = Term::min_of(&m, &md);
        if !common.is_one() {
            self.num = self.num.div_monomial(&common);
            self.den = self.den.div_monomial(&common);
        }
        // Joint integer content; denominator's leading coefficient positive.
        let mut lcm = BigInt::one();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            lcm = lcm.lcm(c.denominator());
        }
        let mut gcd = BigInt::zero();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            gcd = gcd.gcd(&(c.numerator() * (&lcm / c.denominator())));
        }
        if gcd.is_zero() {
            gcd = BigInt::one();
        }
        let den_lead_neg = self
            .den
            .leading_degrevlex()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if den_lead_neg {
            gcd = -gcd;
        }
        let factor = Rational::from_parts(lcm, gcd);
        if !factor.is_one() {
            self.num = self.num.mul_scalar(&factor);
            self.den = self.den.mul_scalar(&factor);
        }
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        Fraction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        Fraction::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Fraction {
        Fraction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn div(&self, other: &Fraction) -> Fraction {
        assert!(!other.is_zero(), "division by zero fraction");
        Fraction::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Fraction {
        assert!(!self.is_zero(), "reciprocal of zero");
        Fraction::new(self.den.clone(), self.num.clone())
    }

    /// Cross-multiplied equality: a/b = c/d iff ad = cb.
    pub fn eq_cross(&self, other: &Fraction) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

/// Substitutes fractions for a subset of variables in a polynomial.
pub fn substitute_fractions(f: &Polynomial, assign: &[(usize, Fraction)]) -> Fraction {
    let ctx = f.context();
    let mut acc = Fraction::zero(ctx);
    for (t, c) in f.terms() {
        let mut factor = Fraction::from_poly(Polynomial::constant(ctx, c.clone()));
        let mut exps = t.exps().to_vec();
        for (idx, rep) in assign {
            let e = exps[*idx];
            if e > 0 {
                exps[*idx] = 0;
                for _ in 0..e {
                    factor = factor.mul(rep);
                }
            }
        }
        let rest = Polynomial::from_term(ctx, Term::from_exps(exps), Rational::one());
        acc = acc.add(&factor.mul(&Fraction::from_poly(rest)));
    }
    acc
}

impl Fraction {
    /// Evaluates at a full point; `None` when the denominator vanishes there.
    pub fn evaluate_full(&self, values: &[Rational]) -> Option<Rational> {
        let d = self.den.evaluate_full(values);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.evaluate_full(values) / &d)
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        self.eq_cross(other)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_value().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

use crate::term::Term;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn reduce_monomial_and_content() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let num = parse_poly(&ctx, "2*x^2*y").unwrap();
        let den = parse_poly(&ctx, "4*x*y").unwrap();
        let f = Fraction::new(num, den);
        assert_eq!(f.numerator().to_string(), "x");
        assert_eq!(f.denominator().to_string(), "2");
    }

    #[test]
    fn cross_equality_without_gcd() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        // (x^2-y^2)/(x-y) equals (x+y)/1 by cross multiplication even though
        // no polynomial gcd is computed.
        let a = Fraction::new(
            parse_poly(&ctx, "x^2-y^2").unwrap(),
            parse_poly(&ctx, "x-y").unwrap(),
        );
        let b = Fraction::from_poly(parse_poly(&ctx, "x+y").unwrap());
        assert!(a.eq_cross(&b));
    }

    #[test]
    fn arithmetic() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let x = Fraction::from_poly(parse_poly(&ctx, "x").unwrap());
        let y = Fraction::from_poly(parse_poly(&ctx, "y").unwrap());
        let q = x.div(&y);
        let r = q.add(&y.div(&x));
        // x/y + y/x = (x^2+y^2)/(xy)
        let expect = Fraction::new(
            parse_poly(&ctx, "x^2+y^2").unwrap(),
            parse_poly(&ctx, "x*y").unwrap(),
        );
        assert!(r.eq_cross(&expect));
    }
}
