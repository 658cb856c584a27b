use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::Integer;
use num::{One, Zero};

use crate::context::{BlockId, VarContext};
use crate::error::{Error, Result};
use crate::ordering::TermOrdering;
use crate::rational::Rational;
use crate::term::Term;

/// A sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a map ordered by the context's intrinsic degrevlex, with
/// no zero coefficients stored, so equal polynomials have equal
/// representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Term, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Term::one(ctx.num_vars()), c);
        }
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn var(ctx: &Arc<VarContext>, idx: usize) -> Self {
        Self::from_term(ctx, Term::var(ctx.num_vars(), idx), Rational::one())
    }

    pub fn var_named(ctx: &Arc<VarContext>, name: &str) -> Result<Self> {
        let idx = ctx.var_index(name).ok_or(Error::ContextMismatch)?;
        Ok(Self::var(ctx, idx))
    }

    pub fn from_term(ctx: &Arc<VarContext>, t: Term, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(t, c);
        }
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn from_terms(
        ctx: &Arc<VarContext>,
        it: impl IntoIterator<Item = (Term, Rational)>,
    ) -> Self {
        let mut p = Self::zero(ctx);
        for (t, c) in it {
            p.add_term(t, c);
        }
        p
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &Term) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|t| t.is_one())
    }

    pub fn constant_value(&self) -> Rational {
        self.coeff(&Term::one(self.ctx.num_vars()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|t| t.degree()).max().unwrap_or(0)
    }

    pub fn degree_in_var(&self, idx: usize) -> u32 {
        self.terms.keys().map(|t| t.exp(idx)).max().unwrap_or(0)
    }

    /// True if every term's support lies inside the block.
    pub fn supported_in_block(&self, blk: BlockId) -> bool {
        let r = self.ctx.block_range(blk);
        self.terms.keys().all(|t| t.supported_in(r.clone()))
    }

    pub fn add_term(&mut self, t: Term, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut out = Polynomial::zero(&self.ctx);
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                out.add_term(ta.mul(tb), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, k)| (t.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, t: &Term, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(u, k)| (u.mul(t), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under the intrinsic degrevlex order.
    pub fn leading_degrevlex(&self) -> Option<(&Term, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Leading term under the given ordering.
    pub fn leading(&self, ord: &TermOrdering) -> Option<(&Term, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| ord.compare(&self.ctx, a, b))
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &TermOrdering) -> Polynomial {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.mul_scalar(&inv)
            }
        }
    }

    /// The factor that clears denominators and divides out the integer
    /// content, making the leading degrevlex coefficient positive.
    pub fn primitive_scale(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denominator());
        }
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numerator() * (&lcm / c.denominator());
            gcd = gcd.gcd(&scaled);
        }
        if gcd.is_zero() {
            gcd = BigInt::one();
        }
        let last = self.terms.iter().next_back().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if last {
            gcd = -gcd;
        }
        Rational::from_parts(lcm, gcd)
    }

    /// Multiplies by the least common denominator and divides by the integer
    /// content, making the leading degrevlex coefficient positive.
    pub fn primitive(&self) -> Polynomial {
        self.mul_scalar(&self.primitive_scale())
    }

    /// The largest monomial dividing every term.
    pub fn monomial_content(&self) -> Term {
        let n = self.ctx.num_vars();
        let mut min: Option<Vec<u32>> = None;
        for t in self.terms.keys() {
            match &mut min {
                None => min = Some(t.exps().to_vec()),
                Some(m) => {
                    for (a, &b) in m.iter_mut().zip(t.exps()) {
                        *a = (*a).min(b);
                    }
                }
            }
        }
        Term::from_exps(min.unwrap_or_else(|| vec![0; n]))
    }

    /// Divides every term by a monomial that divides all of them.
    pub fn div_monomial(&self, t: &Term) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(u, c)| (t.div_into(u), c.clone()))
                .collect(),
        }
    }

    /// Exact polynomial division; `None` if `g` does not divide `self`.
    pub fn try_exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.ctx, g.ctx, "context mismatch");
        assert!(!g.is_zero(), "division by the zero polynomial");
        let ord = TermOrdering::DegRevLex;
        let (gt, gc) = g.leading(&ord).map(|(t, c)| (t.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ctx);
        while !rem.is_zero() {
            let (rt, rc) = rem.leading(&ord).map(|(t, c)| (t.clone(), c.clone())).unwrap();
            if !gt.divides(&rt) {
                return None;
            }
            let qt = gt.div_into(&rt);
            let qc = &rc / &gc;
            quot.add_term(qt.clone(), qc.clone());
            rem = rem.sub(&g.mul_term(&qt, &qc));
        }
        Some(quot)
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (t, c) in &self.terms {
            let e = t.exp(idx);
            if e > 0 {
                let mut exps = t.exps().to_vec();
                exps[idx] = e - 1;
                out.add_term(Term::from_exps(exps), c * &Rational::from_int(e as i64));
            }
        }
        out
    }

    /// Substitutes rational values for a subset of variables.
    pub fn evaluate(&self, assign: &[(usize, Rational)]) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (t, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = t.exps().to_vec();
            for (idx, val) in assign {
                let e = exps[*idx];
                if e > 0 {
                    coeff = &coeff * &val.pow(e);
                    exps[*idx] = 0;
                }
            }
            out.add_term(Term::from_exps(exps), coeff);
        }
        out
    }

    /// Fully evaluates a polynomial at a point given per-variable values for
    /// every variable occurring in it.
    pub fn evaluate_full(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (t, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in t.exps().iter().enumerate() {
                if e > 0 {
                    v = &v * &values[i].pow(e);
                }
            }
            acc += &v;
        }
        acc
    }

    /// Substitutes polynomials for a subset of variables (a ring homomorphism
    /// fixing the remaining variables).
    pub fn substitute(&self, assign: &[(usize, Polynomial)]) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (t, c) in &self.terms {
            let mut factor = Polynomial::constant(&self.ctx, c.clone());
            let mut exps = t.exps().to_vec();
            for (idx, rep) in assign {
                let e = exps[*idx];
                if e > 0 {
                    exps[*idx] = 0;
                    factor = factor.mul(&rep.pow(e));
                }
            }
            out = out.add(&factor.mul_term(&Term::from_exps(exps), &Rational::one()));
        }
        out
    }

    /// Moves the polynomial into another context by matching variable names.
    pub fn map_context(&self, target: &Arc<VarContext>) -> Result<Polynomial> {
        if self.ctx == *target {
            return Ok(self.clone());
        }
        let map = self.ctx.embedding(target)?;
        let mut out = Polynomial::zero(target);
        for (t, c) in &self.terms {
            out.add_term(t.remap(&map, target.num_vars()), c.clone());
        }
        Ok(out)
    }

    /// Projects into a sub-context; errors if a variable outside it occurs.
    pub fn project(
        &self,
        target: &Arc<VarContext>,
        map: &[Option<usize>],
    ) -> Result<Polynomial> {
        let mut out = Polynomial::zero(target);
        for (t, c) in &self.terms {
            let mut exps = vec![0u32; target.num_vars()];
            for (i, &e) in t.exps().iter().enumerate() {
                if e > 0 {
                    match map[i] {
                        Some(j) => exps[j] += e,
                        None => return Err(Error::ContextMismatch),
                    }
                }
            }
            out.add_term(Term::from_exps(exps), c.clone());
        }
        Ok(out)
    }

    /// Greatest common divisor of two univariate polynomials in the variable
    /// `idx`; both inputs must only involve that variable. Result is monic.
    pub fn gcd_univariate(&self, other: &Polynomial, idx: usize) -> Result<Polynomial> {
        let only = |p: &Polynomial| {
            p.terms.keys().all(|t| {
                t.exps().iter().enumerate().all(|(i, &e)| e == 0 || i == idx)
            })
        };
        if !only(self) || !only(other) {
            return Err(Error::UnsupportedMode(
                "univariate gcd on a multivariate polynomial".into(),
            ));
        }
        let ord = TermOrdering::Lex;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_univariate(&b, idx);
            a = b;
            b = r;
        }
        Ok(a.monic(&ord))
    }

    fn rem_univariate(&self, divisor: &Polynomial, idx: usize) -> Polynomial {
        let mut rem = self.clone();
        let dd = divisor.degree_in_var(idx);
        let lead_t = Term::var_pow(self.ctx.num_vars(), idx, dd);
        let lc = divisor.coeff(&lead_t);
        while !rem.is_zero() && rem.degree_in_var(idx) >= dd {
            let rd = rem.degree_in_var(idx);
            let rt = Term::var_pow(self.ctx.num_vars(), idx, rd);
            let rc = rem.coeff(&rt);
            if rc.is_zero() {
                break;
            }
            let shift = Term::var_pow(self.ctx.num_vars(), idx, rd - dd);
            let q = &rc / &lc;
            rem = rem.sub(&divisor.mul_term(&shift, &q));
        }
        rem
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending degrevlex: leading term first.
        for (t, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if t.is_one() {
                write!(f, "{}", mag)?;
            } else {
                let mut wrote = false;
                if !mag.is_one() {
                    write!(f, "{}", mag)?;
                    wrote = true;
                }
                for (i, &e) in t.exps().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", self.ctx.var_name(i))?;
                    if e > 1 {
                        write!(f, "^{}", e)?;
                    }
                    wrote = true;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
