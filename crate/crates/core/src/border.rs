//! Border prebases, the (pseudo) border division algorithm, formal
//! multiplication matrices, the defining ideal of the border basis scheme,
//! border bases of concrete ideals, and base changes between basis schemes.

use std::collections::HashMap;
use std::sync::Arc;

use crate::context::{BlockId, VarContext};
use crate::error::{Error, Result};
use crate::fraction::{substitute_fractions, Fraction};
use crate::ideal::Ideal;
use crate::matrix::{Matrix, Scalar};
use crate::order_ideal::{place, OrderIdeal, PseudoMode, PseudoOrderIdeal};
use crate::ordering::TermOrdering;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::term::Term;

/// Coefficient domains usable in a border prebasis: the rationals or a
/// polynomial ring (for the generic prebasis and parameter families).
pub trait CoeffScalar: Scalar {
    fn into_poly(&self, ctx: &Arc<VarContext>) -> Polynomial;
    fn from_poly(p: &Polynomial) -> Option<Self>;
}

impl CoeffScalar for Rational {
    fn into_poly(&self, ctx: &Arc<VarContext>) -> Polynomial {
        Polynomial::constant(ctx, self.clone())
    }
    fn from_poly(p: &Polynomial) -> Option<Self> {
        if p.is_constant() {
            Some(p.constant_value())
        } else {
            None
        }
    }
}

impl CoeffScalar for Polynomial {
    fn into_poly(&self, ctx: &Arc<VarContext>) -> Polynomial {
        if self.context() == ctx {
            self.clone()
        } else {
            self.map_context(ctx).expect("coefficient outside prebasis context")
        }
    }
    fn from_poly(p: &Polynomial) -> Option<Self> {
        Some(p.clone())
    }
}

/// A pseudo order ideal skeleton together with a mu x alpha coefficient
/// matrix, encoding the prebasis g_j = b_j - sum_i coeffs[i][j] t_i.
#[derive(Clone)]
pub struct BorderPrebasis<T> {
    ctx: Arc<VarContext>,
    x_block: BlockId,
    skeleton: PseudoOrderIdeal,
    coeffs: Matrix<T>,
}

impl<T: CoeffScalar> BorderPrebasis<T> {
    pub fn new(
        ctx: &Arc<VarContext>,
        x_block: BlockId,
        skeleton: PseudoOrderIdeal,
        coeffs: Matrix<T>,
    ) -> Result<Self> {
        if coeffs.rows() != skeleton.mu() || coeffs.cols() != skeleton.alpha() {
            return Err(Error::Shape(format!(
                "coefficient matrix must be {} x {}",
                skeleton.mu(),
                skeleton.alpha()
            )));
        }
        Ok(BorderPrebasis { ctx: ctx.clone(), x_block, skeleton, coeffs })
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn x_block(&self) -> BlockId {
        self.x_block
    }

    pub fn skeleton(&self) -> &PseudoOrderIdeal {
        &self.skeleton
    }

    pub fn order_ideal(&self) -> &OrderIdeal {
        self.skeleton.base()
    }

    pub fn coeffs(&self) -> &Matrix<T> {
        &self.coeffs
    }

    pub fn mu(&self) -> usize {
        self.skeleton.mu()
    }

    pub fn alpha(&self) -> usize {
        self.skeleton.alpha()
    }

    /// The prebasis polynomials g_j = b_j - sum_i coeffs[i][j] t_i.
    pub fn generators(&self) -> Vec<Polynomial> {
        let elems = self.skeleton.elements(&self.ctx, self.x_block);
        let border = self.skeleton.pseudo_border(&self.ctx, self.x_block);
        (0..self.alpha())
            .map(|j| {
                let mut g = border[j].clone();
                for (i, e) in elems.iter().enumerate() {
                    let c = self.coeffs.at(i, j).into_poly(&self.ctx);
                    g = g.sub(&c.mul(e));
                }
                g
            })
            .collect()
    }

    /// The ideal generated by the prebasis.
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ctx, self.generators())
    }

    /// Border (or pseudo border) division: the coordinate vector of the
    /// residue of f in the basis P. Coordinates are exact scalars in the
    /// coefficient domain and do not depend on the rewriting order.
    pub fn divide(&self, f: &Polynomial) -> Result<Vec<T>> {
        if f.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let base_input = if self.skeleton.change().is_identity() {
            f.clone()
        } else {
            self.skeleton.change().inverse().apply(f, self.x_block)
        };
        let coeff_polys: Vec<Vec<Polynomial>> = (0..self.mu())
            .map(|i| {
                (0..self.alpha())
                    .map(|j| self.coeffs.at(i, j).into_poly(&self.ctx))
                    .collect()
            })
            .collect();
        let coords = match self.skeleton.mode() {
            PseudoMode::Border => {
                base_divide_border(&self.ctx, self.x_block, self.order_ideal(), &coeff_polys, base_input)
            }
            PseudoMode::Cornercut(ord) => base_divide_cornercut(
                &self.ctx,
                self.x_block,
                self.order_ideal(),
                ord,
                &coeff_polys,
                base_input,
            ),
        };
        coords
            .into_iter()
            .map(|p| {
                T::from_poly(&p).ok_or_else(|| {
                    Error::UnsupportedMode("division coordinates leave the coefficient domain".into())
                })
            })
            .collect()
    }

    /// Formal multiplication matrices A_1, ..., A_n: column j of A_k holds
    /// the coordinates of x_k * p_j. Only defined in border mode.
    pub fn mult_matrices(&self) -> Result<Vec<Matrix<T>>> {
        if !matches!(self.skeleton.mode(), PseudoMode::Border) {
            return Err(Error::UnsupportedMode(
                "multiplication matrices require border mode".into(),
            ));
        }
        let range = self.ctx.block_range(self.x_block);
        let elems = self.skeleton.elements(&self.ctx, self.x_block);
        let mu = self.mu();
        let mut out = Vec::with_capacity(range.len());
        for k in range.clone() {
            let xk = Polynomial::var(&self.ctx, k);
            let mut cols: Vec<Vec<T>> = Vec::with_capacity(mu);
            for e in &elems {
                cols.push(self.divide(&xk.mul(e))?);
            }
            out.push(Matrix::from_fn(mu, mu, |i, j| cols[j][i].clone()));
        }
        Ok(out)
    }

    /// Specializes a polynomial-coefficient prebasis at a matrix of values.
    pub fn specialize_coeffs(&self, values: Matrix<Rational>) -> Result<BorderPrebasis<Rational>> {
        BorderPrebasis::new(&self.ctx, self.x_block, self.skeleton.clone(), values)
    }
}

/// The generic prebasis over K[c]: coefficients are the indeterminates c_i_j.
/// Returns the prebasis over a fresh context with blocks `x` and `c`.
pub fn generic_prebasis(o: &OrderIdeal, x_names: &[&str]) -> BorderPrebasis<Polynomial> {
    let p = PseudoOrderIdeal::plain(o.clone());
    generic_pseudo_prebasis(&p, x_names, "c")
}

/// Generic prebasis for an arbitrary pseudo order ideal. The coefficient
/// indeterminates are named `<letter>_i_j`.
pub fn generic_pseudo_prebasis(
    p: &PseudoOrderIdeal,
    x_names: &[&str],
    letter: &str,
) -> BorderPrebasis<Polynomial> {
    let n = p.base().num_vars();
    assert_eq!(x_names.len(), n, "one name per variable");
    let mu = p.mu();
    let alpha = p.alpha();
    let mut b = VarContext::builder();
    let xb = b.add_block("x", x_names.iter().map(|s| s.to_string()).collect());
    let cb = b.indexed_block(letter, mu, alpha);
    let ctx = b.build();
    let c_start = ctx.block_range(cb).start;
    let coeffs = Matrix::from_fn(mu, alpha, |i, j| {
        Polynomial::var(&ctx, c_start + i * alpha + j)
    });
    BorderPrebasis::new(&ctx, xb, p.clone(), coeffs).expect("generic shapes agree")
}

fn x_part(t: &Term, range: &std::ops::Range<usize>) -> Vec<u32> {
    t.exps()[range.clone()].to_vec()
}

fn strip_x(t: &Term, range: &std::ops::Range<usize>) -> Term {
    let mut e = t.exps().to_vec();
    for k in range.clone() {
        e[k] = 0;
    }
    Term::from_exps(e)
}

/// Division against a plain border prebasis. Rewrites the term of minimal
/// border index first (degrevlex-smallest on ties), picking the dividing
/// border term of maximal degree and minimal position.
fn base_divide_border(
    ctx: &Arc<VarContext>,
    x_block: BlockId,
    o: &OrderIdeal,
    coeffs: &[Vec<Polynomial>],
    f: Polynomial,
) -> Vec<Polynomial> {
    let range = ctx.block_range(x_block);
    let o_set: HashMap<Vec<u32>, usize> = o
        .exps()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let border = o.border();
    let border_terms: Vec<Term> = border.iter().map(|e| Term::from_exps(e.clone())).collect();
    let o_terms_ctx: Vec<Term> = o.terms_in(ctx, x_block);

    let mut work = f;
    loop {
        // Select the reducible term of minimal index; ties by degrevlex.
        let mut chosen: Option<(Term, Rational, u32, usize)> = None;
        for (t, c) in work.terms() {
            let xp = x_part(t, &range);
            if o_set.contains_key(&xp) {
                continue;
            }
            let xp_term = Term::from_exps(xp);
            let mut best_j: Option<usize> = None;
            let mut best_deg = 0u32;
            for (j, b) in border_terms.iter().enumerate() {
                if b.divides(&xp_term) && (best_j.is_none() || b.degree() > best_deg) {
                    best_j = Some(j);
                    best_deg = b.degree();
                }
            }
            let j = best_j.expect("every term outside O is divisible by a border term");
            let ind = xp_term.degree() - best_deg;
            let replace = match &chosen {
                None => true,
                Some((tc, _, ic, _)) => {
                    ind < *ic || (ind == *ic && t.cmp_degrevlex(tc) == std::cmp::Ordering::Less)
                }
            };
            if replace {
                chosen = Some((t.clone(), c.clone(), ind, j));
            }
        }
        let Some((t, c, _, j)) = chosen else { break };
        // t = (gamma * b_j) * m with m free of x; rewrite b_j.
        let xp = Term::from_exps(x_part(&t, &range));
        let gamma_x = border_terms[j].div_into(&xp);
        let gamma = place(ctx, x_block, gamma_x.exps()).mul(&strip_x(&t, &range));
        work.add_term(t, -&c);
        for i in 0..o.mu() {
            if coeffs[i][j].is_zero() {
                continue;
            }
            let shifted = coeffs[i][j].mul_term(&gamma.mul(&o_terms_ctx[i]), &c);
            work = work.add(&shifted);
        }
    }
    collect_coords(ctx, x_block, o, &o_set, work)
}

/// Division against a cornercut prebasis: Groebner-style rewriting where the
/// corners act as leading terms for the certifying ordering.
fn base_divide_cornercut(
    ctx: &Arc<VarContext>,
    x_block: BlockId,
    o: &OrderIdeal,
    sigma: &TermOrdering,
    coeffs: &[Vec<Polynomial>],
    f: Polynomial,
) -> Vec<Polynomial> {
    let range = ctx.block_range(x_block);
    let o_set: HashMap<Vec<u32>, usize> = o
        .exps()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let corners = o.corners();
    let corner_terms: Vec<Term> = corners.iter().map(|e| Term::from_exps(e.clone())).collect();
    let o_terms_ctx: Vec<Term> = o.terms_in(ctx, x_block);
    let scratch = {
        let mut b = VarContext::builder();
        b.x_block(range.len());
        b.build()
    };

    let mut work = f;
    loop {
        // Pick the sigma-largest reducible x-part.
        let mut chosen: Option<(Term, Rational, usize)> = None;
        for (t, c) in work.terms() {
            let xp_term = Term::from_exps(x_part(&t, &range));
            let j = match corner_terms.iter().position(|b| b.divides(&xp_term)) {
                Some(j) => j,
                None => continue,
            };
            let replace = match &chosen {
                None => true,
                Some((tc, _, _)) => {
                    let xc = Term::from_exps(x_part(tc, &range));
                    sigma.compare(&scratch, &xp_term, &xc) == std::cmp::Ordering::Greater
                }
            };
            if replace {
                chosen = Some((t.clone(), c.clone(), j));
            }
        }
        let Some((t, c, j)) = chosen else { break };
        let xp = Term::from_exps(x_part(&t, &range));
        let gamma_x = corner_terms[j].div_into(&xp);
        let gamma = place(ctx, x_block, gamma_x.exps()).mul(&strip_x(&t, &range));
        work.add_term(t, -&c);
        for i in 0..o.mu() {
            if coeffs[i][j].is_zero() {
                continue;
            }
            work = work.add(&coeffs[i][j].mul_term(&gamma.mul(&o_terms_ctx[i]), &c));
        }
    }
    collect_coords(ctx, x_block, o, &o_set, work)
}

fn collect_coords(
    ctx: &Arc<VarContext>,
    x_block: BlockId,
    o: &OrderIdeal,
    o_set: &HashMap<Vec<u32>, usize>,
    residue: Polynomial,
) -> Vec<Polynomial> {
    let range = ctx.block_range(x_block);
    let mut coords = vec![Polynomial::zero(ctx); o.mu()];
    for (t, c) in residue.terms() {
        let xp = x_part(t, &range);
        let i = *o_set
            .get(&xp)
            .expect("residue term outside the order ideal after division");
        coords[i].add_term(strip_x(t, &range), c.clone());
    }
    coords
}

/// The defining data of the border basis scheme of O: the ideal generated by
/// the entries of all commutators of the formal multiplication matrices.
pub struct BBSIdeal {
    pub order_ideal: OrderIdeal,
    /// Context with blocks `x` and `c` hosting the generic prebasis.
    pub ctx: Arc<VarContext>,
    pub x_block: BlockId,
    pub c_block: BlockId,
    /// The coefficient ring K[c] and the ideal I(B_O) inside it.
    pub c_ctx: Arc<VarContext>,
    pub ideal: Ideal,
    pub commutators: Vec<Polynomial>,
}

impl BBSIdeal {
    /// Index of c_i_j (1-based i, j) in the c ring.
    pub fn c_index(&self, i: usize, j: usize) -> usize {
        let alpha = self.order_ideal.border().len();
        (i - 1) * alpha + (j - 1)
    }

    /// Evaluates all commutator generators at a coefficient matrix; true iff
    /// the matrix is a point of the scheme.
    pub fn satisfied_by(&self, c: &Matrix<Rational>) -> bool {
        let alpha = self.order_ideal.border().len();
        let mut values = Vec::with_capacity(self.c_ctx.num_vars());
        for i in 0..self.order_ideal.mu() {
            for j in 0..alpha {
                values.push(c.at(i, j).clone());
            }
        }
        self.commutators
            .iter()
            .all(|g| g.evaluate_full(&values).is_zero())
    }
}

/// Builds I(B_O) from the commutators A_k A_l - A_l A_k of the formal
/// multiplication matrices of the generic O-border prebasis.
pub fn generate_bbs_ideal(o: &OrderIdeal) -> BBSIdeal {
    let n = o.num_vars();
    let names: Vec<String> = default_x_names(n);
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let pb = generic_prebasis(o, &name_refs);
    let ctx = pb.context().clone();
    let x_block = ctx.block("x").unwrap();
    let c_block = ctx.block("c").unwrap();
    let mats = pb.mult_matrices().expect("generic prebasis is in border mode");
    let (c_ctx, map) = ctx.subcontext(&[c_block]);
    let mut commutators = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            let comm = mats[k].mul(&mats[l]).sub(&mats[l].mul(&mats[k]));
            for i in 0..comm.rows() {
                for j in 0..comm.cols() {
                    let e = comm.at(i, j);
                    if !e.is_zero() {
                        commutators.push(
                            e.project(&c_ctx, &map)
                                .expect("commutator entries live in K[c]"),
                        );
                    }
                }
            }
        }
    }
    let ideal = Ideal::new(&c_ctx, commutators.clone());
    BBSIdeal {
        order_ideal: o.clone(),
        ctx,
        x_block,
        c_block,
        c_ctx,
        ideal,
        commutators,
    }
}

pub fn default_x_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{}", i)).collect()
    }
}

/// The border basis of the vanishing ideal of distinct points, by solving
/// the evaluation systems; errors when the evaluation matrix is singular.
pub fn border_basis_from_points(
    ctx: &Arc<VarContext>,
    x_block: BlockId,
    points: &[Vec<Rational>],
    o: &OrderIdeal,
) -> Result<BorderPrebasis<Rational>> {
    let mu = o.mu();
    if points.len() != mu {
        return Err(Error::Dimension { expected: mu, found: points.len() });
    }
    let eval = |exps: &[u32], p: &[Rational]| -> Rational {
        let mut acc = Rational::one();
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                acc = &acc * &p[k].pow(e);
            }
        }
        acc
    };
    let v = Matrix::from_fn(mu, mu, |i, j| eval(&o.exps()[j], &points[i]));
    let border = o.border();
    let rhs = Matrix::from_fn(mu, border.len(), |i, j| eval(&border[j], &points[i]));
    let coeffs = v.solve_exact(&rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::NoBorderBasis(
            "evaluation determinant Delta_O(points) = 0".into(),
        ),
        other => other,
    })?;
    BorderPrebasis::new(ctx, x_block, PseudoOrderIdeal::plain(o.clone()), coeffs)
}

/// Normal-form data of a zero-dimensional quotient: the staircase basis and
/// the coordinate matrix of a pseudo order ideal with respect to it.
pub struct BasisModuloData {
    pub quotient_terms: Vec<Term>,
    /// mu x mu matrix: column c holds the quotient coordinates of P_c.
    pub coords: Matrix<Rational>,
}

fn quotient_coords(
    q_terms: &[Term],
    f: &Polynomial,
) -> Result<Vec<Rational>> {
    let index: HashMap<&Term, usize> = q_terms.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut out = vec![Rational::zero(); q_terms.len()];
    for (t, c) in f.terms() {
        match index.get(t) {
            Some(&i) => out[i] = c.clone(),
            None => {
                return Err(Error::Shape(
                    "normal form has support outside the quotient basis".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// Tests whether P is a basis modulo I. On success returns the representing
/// matrix C_I with bP = P * C_I modulo I.
pub fn is_basis_modulo(
    p: &PseudoOrderIdeal,
    i: &Ideal,
    x_block: BlockId,
) -> Result<Option<Matrix<Rational>>> {
    Ok(basis_modulo_data(p, i, x_block)?.map(|(_, c)| c))
}

/// Like [`is_basis_modulo`] but also returns the quotient coordinates data.
pub fn basis_modulo_data(
    p: &PseudoOrderIdeal,
    i: &Ideal,
    x_block: BlockId,
) -> Result<Option<(BasisModuloData, Matrix<Rational>)>> {
    let ord = TermOrdering::DegRevLex;
    let q_terms = i.quotient_basis(&ord)?;
    let mu = p.mu();
    if q_terms.len() != mu {
        return Err(Error::Dimension { expected: mu, found: q_terms.len() });
    }
    let ctx = i.context();
    let gb = i.groebner_basis(&ord);
    let elems = p.elements(ctx, x_block);
    let mut cols = Vec::with_capacity(mu);
    for e in &elems {
        cols.push(quotient_coords(&q_terms, &gb.normal_form(e)?)?);
    }
    let s = Matrix::from_fn(mu, mu, |r, c| cols[c][r].clone());
    if s.det_bareiss()?.is_zero() {
        return Ok(None);
    }
    let border = p.pseudo_border(ctx, x_block);
    let mut bcols = Vec::with_capacity(border.len());
    for b in &border {
        bcols.push(quotient_coords(&q_terms, &gb.normal_form(b)?)?);
    }
    let bm = Matrix::from_fn(mu, border.len(), |r, c| bcols[c][r].clone());
    let c_i = s.solve_exact(&bm)?;
    let data = BasisModuloData { quotient_terms: q_terms, coords: s };
    Ok(Some((data, c_i)))
}

/// Representing matrices of a target pseudo order ideal over a source
/// prebasis: P' = P * M and bP' = P * N hold modulo the source prebasis.
pub fn base_change_symbolic<T: CoeffScalar>(
    src: &BorderPrebasis<T>,
    dst: &PseudoOrderIdeal,
) -> Result<(Matrix<T>, Matrix<T>)> {
    let ctx = src.context();
    let xb = src.x_block();
    let mu = src.mu();
    if dst.mu() != mu {
        return Err(Error::Dimension { expected: mu, found: dst.mu() });
    }
    let elems = dst.elements(ctx, xb);
    let border = dst.pseudo_border(ctx, xb);
    let mut mcols = Vec::with_capacity(elems.len());
    for e in &elems {
        mcols.push(src.divide(e)?);
    }
    let mut ncols = Vec::with_capacity(border.len());
    for b in &border {
        ncols.push(src.divide(b)?);
    }
    let m = Matrix::from_fn(mu, mcols.len(), |i, j| mcols[j][i].clone());
    let n = Matrix::from_fn(mu, ncols.len(), |i, j| ncols[j][i].clone());
    Ok((m, n))
}

/// D = M^-1 N over the fraction field of the polynomial coefficient ring.
pub fn transition_fractions(
    m: &Matrix<Polynomial>,
    n: &Matrix<Polynomial>,
) -> Result<Matrix<Fraction>> {
    let inv = m.inverse_to_fractions()?;
    Ok(inv.mul(&n.to_fractions()))
}

/// C = M^-1 N for numeric base changes.
pub fn transition_numeric(
    m: &Matrix<Rational>,
    n: &Matrix<Rational>,
) -> Result<Matrix<Rational>> {
    m.solve_exact(n)
}

/// Representation of phi(I) in B_P from the representation of I, following
/// the congruences phi^-1(P) = P * M_phi and phi^-1(bP) = P * N_phi mod I.
/// Returns `None` when M_phi is singular (P is not a basis modulo phi(I)).
pub fn linear_change_transport(
    i: &Ideal,
    p: &PseudoOrderIdeal,
    ch: &crate::order_ideal::LinearChange,
    x_block: BlockId,
) -> Result<Option<Matrix<Rational>>> {
    let Some((data, _)) = basis_modulo_data(p, i, x_block)? else {
        return Err(Error::NoBorderBasis("P is not a basis modulo I".into()));
    };
    let ctx = i.context();
    let gb = i.groebner_basis(&TermOrdering::DegRevLex);
    let inv = ch.inverse();
    let mu = p.mu();
    let coords_of = |polys: &[Polynomial]| -> Result<Matrix<Rational>> {
        let mut cols = Vec::with_capacity(polys.len());
        for f in polys {
            let pre = inv.apply(f, x_block);
            cols.push(quotient_coords(&data.quotient_terms, &gb.normal_form(&pre)?)?);
        }
        Ok(Matrix::from_fn(mu, polys.len(), |r, c| cols[c][r].clone()))
    };
    let m_cols = coords_of(&p.elements(ctx, x_block))?;
    let m_phi = data.coords.solve_exact(&m_cols)?;
    if m_phi.det_bareiss()?.is_zero() {
        return Ok(None);
    }
    let n_cols = coords_of(&p.pseudo_border(ctx, x_block))?;
    let n_phi = data.coords.solve_exact(&n_cols)?;
    Ok(Some(m_phi.solve_exact(&n_phi)?))
}

/// Data of the generic linear change of coordinates for (I, P): the matrix
/// M over Frac(K[a]), its determinant Lambda, the border matrix N, and the
/// determinant Delta of the generic linear part.
pub struct GenericChangeData {
    /// Context with the x block and the a block a_i_0, ..., a_i_n.
    pub ctx: Arc<VarContext>,
    pub x_block: BlockId,
    pub a_block: BlockId,
    pub m: Matrix<Fraction>,
    pub n: Matrix<Fraction>,
    pub lambda: Fraction,
    pub delta: Polynomial,
}

impl GenericChangeData {
    /// Specializes at a concrete change matrix (alpha_ij), j = 0..n; returns
    /// `None` when Delta or Lambda vanishes there.
    pub fn specialize(&self, alpha: &[Vec<Rational>]) -> Option<Matrix<Rational>> {
        let mut values = vec![Rational::zero(); self.ctx.num_vars()];
        let range = self.ctx.block_range(self.a_block);
        let n = alpha.len();
        for (i, row) in alpha.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                values[range.start + i * (n + 1) + j] = v.clone();
            }
        }
        if self.delta.evaluate_full(&values).is_zero() {
            return None;
        }
        let lam = self.lambda.evaluate_full(&values)?;
        if lam.is_zero() {
            return None;
        }
        let m = self.m.map(|f| {
            f.evaluate_full(&values)
                .expect("denominators are powers of Delta, nonzero here")
        });
        let nn = self.n.map(|f| {
            f.evaluate_full(&values)
                .expect("denominators are powers of Delta, nonzero here")
        });
        Some(
            m.solve_exact(&nn)
                .expect("M is invertible where Lambda is nonzero"),
        )
    }
}

/// Builds M_{phi_A} and Lambda = det(M_{phi_A}) for the generic linear
/// change of coordinates, given an ideal I for which P is a basis modulo I.
pub fn generic_change_data(
    i: &Ideal,
    p: &PseudoOrderIdeal,
    x_block: BlockId,
) -> Result<GenericChangeData> {
    let x_ctx = i.context();
    let x_range = x_ctx.block_range(x_block);
    let n = x_range.len();
    // Fresh context: x block (same names) + a block with a_i_0 .. a_i_n.
    let mut b = VarContext::builder();
    let x_names: Vec<String> = x_range
        .clone()
        .map(|k| x_ctx.var_name(k).to_string())
        .collect();
    let xb = b.add_block("x", x_names);
    let mut a_names = Vec::new();
    for ii in 1..=n {
        for jj in 0..=n {
            a_names.push(format!("a_{}_{}", ii, jj));
        }
    }
    let ab = b.add_block("a", a_names);
    let ctx = b.build();
    let a_start = ctx.block_range(ab).start;
    let a_var = |ii: usize, jj: usize| Polynomial::var(&ctx, a_start + (ii - 1) * (n + 1) + jj);

    let ahat = Matrix::from_fn(n, n, |r, c| a_var(r + 1, c + 2 - 1));
    let delta = ahat.det_bareiss()?;
    let adj = ahat.adjugate()?;
    // phi_A^{-1}(x_k) = ( sum_j adj[k][j] x_j - (adj * a0)[k] ) / Delta.
    let a0 = Matrix::from_fn(n, 1, |r, _| a_var(r + 1, 0));
    let adj_a0 = adj.mul(&a0);
    let x_vars: Vec<Polynomial> = (0..n).map(|k| Polynomial::var(&ctx, k)).collect();
    let inv_images: Vec<Fraction> = (0..n)
        .map(|k| {
            let mut num = Polynomial::zero(&ctx);
            for j in 0..n {
                num = num.add(&adj.at(k, j).mul(&x_vars[j]));
            }
            num = num.sub(adj_a0.at(k, 0));
            Fraction::new(num, delta.clone())
        })
        .collect();
    let assign: Vec<(usize, Fraction)> =
        (0..n).map(|k| (k, inv_images[k].clone())).collect();

    // Quotient data of I, moved into the big context.
    let Some((data, _)) = basis_modulo_data(p, i, x_block)? else {
        return Err(Error::NoBorderBasis("P is not a basis modulo I".into()));
    };
    let gens: Result<Vec<Polynomial>> =
        i.generators().iter().map(|g| g.map_context(&ctx)).collect();
    let i_big = Ideal::new(&ctx, gens?);
    let gb = i_big.groebner_basis(&TermOrdering::DegRevLex);
    let q_terms: Vec<Term> = data
        .quotient_terms
        .iter()
        .map(|t| t.remap(&(0..n).collect::<Vec<_>>(), ctx.num_vars()))
        .collect();
    let s_poly = data
        .coords
        .map(|r| Polynomial::constant(&ctx, r.clone()));

    let mu = p.mu();
    let columns = |polys: &[Polynomial]| -> Result<Vec<(Vec<Polynomial>, Polynomial)>> {
        // For each input P-element or border element f (a polynomial in x over
        // the small ring), compute phi_A^{-1}(f) = num / Delta^k, reduce num
        // modulo I, and express in the P basis.
        let mut out = Vec::with_capacity(polys.len());
        for f in polys {
            let fb = f.map_context(&ctx)?;
            let frac = substitute_fractions(&fb, &assign);
            let num_nf = gb.normal_form(frac.numerator())?;
            // Coordinates in the quotient staircase, entries in K[a].
            let mut coords = vec![Polynomial::zero(&ctx); mu];
            'term: for (t, c) in num_nf.terms() {
                let xp = t.restrict(0..n);
                for (qi, q) in q_terms.iter().enumerate() {
                    if &xp == q {
                        let mut e = t.exps().to_vec();
                        for k in 0..n {
                            e[k] = 0;
                        }
                        coords[qi].add_term(Term::from_exps(e), c.clone());
                        continue 'term;
                    }
                }
                return Err(Error::Shape(
                    "normal form support escapes the quotient basis".into(),
                ));
            }
            let rhs = Matrix::from_fn(mu, 1, |r, _| coords[r].clone());
            let sol = s_poly.solve_exact(&rhs)?;
            out.push(((0..mu).map(|r| sol.at(r, 0).clone()).collect(), frac.denominator().clone()));
        }
        Ok(out)
    };

    let small_elems = p.elements(x_ctx, x_block);
    let small_border = p.pseudo_border(x_ctx, x_block);
    let mcols = columns(&small_elems)?;
    let ncols = columns(&small_border)?;
    let m = Matrix::from_fn(mu, mcols.len(), |i2, j| {
        Fraction::new(mcols[j].0[i2].clone(), mcols[j].1.clone())
    });
    let nmat = Matrix::from_fn(mu, ncols.len(), |i2, j| {
        Fraction::new(ncols[j].0[i2].clone(), ncols[j].1.clone())
    });
    let lambda = m.det_bareiss()?;
    Ok(GenericChangeData { ctx, x_block: xb, a_block: ab, m, n: nmat, lambda, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_list};

    fn oi(n: usize, elems: &[&[u32]]) -> OrderIdeal {
        OrderIdeal::new(n, elems.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    fn o5() -> OrderIdeal {
        oi(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])
    }

    #[test]
    fn divide_element_gives_unit_vector() {
        let pb = generic_prebasis(&o5(), &["x", "y"]);
        let ctx = pb.context().clone();
        let f = parse_poly(&ctx, "x").unwrap();
        let coords = pb.divide(&f).unwrap();
        let strs: Vec<String> = coords.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["0", "0", "1", "0"]);
    }

    #[test]
    fn divide_border_term_gives_column() {
        let pb = generic_prebasis(&o5(), &["x", "y"]);
        let ctx = pb.context().clone();
        // x^2 is border term 2 (order: y^2, x^2, xy^2, x^2y).
        let f = parse_poly(&ctx, "x^2").unwrap();
        let coords = pb.divide(&f).unwrap();
        let strs: Vec<String> = coords.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["c_1_2", "c_2_2", "c_3_2", "c_4_2"]);
    }

    #[test]
    fn divide_x_cubed_matches_worked_example() {
        let pb = generic_prebasis(&o5(), &["x", "y"]);
        let ctx = pb.context().clone();
        let f = parse_poly(&ctx, "x^3").unwrap();
        let coords = pb.divide(&f).unwrap();
        let expect = [
            "c_1_2*c_3_2+c_1_4*c_4_2",
            "c_2_2*c_3_2+c_2_4*c_4_2",
            "c_3_2^2+c_3_4*c_4_2+c_1_2",
            "c_3_2*c_4_2+c_4_2*c_4_4+c_2_2",
        ];
        for (c, e) in coords.iter().zip(expect) {
            assert_eq!(c, &parse_poly(&ctx, e).unwrap());
        }
    }

    #[test]
    fn generic_division_kills_generators() {
        let pb = generic_prebasis(&o5(), &["x", "y"]);
        for g in pb.generators() {
            assert!(pb.divide(&g).unwrap().iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn basis_division_is_invariant_modulo_the_ideal() {
        // For an actual border basis (a point of the scheme), division
        // coordinates vanish on the whole ideal and are unchanged by adding
        // multiples of the generators.
        let ctx = VarContext::simple("x", &["x", "y"]);
        let xb = ctx.block("x").unwrap();
        let pts: Vec<Vec<Rational>> = [(0, 0), (0, 1), (1, -1), (1, 2)]
            .iter()
            .map(|&(a, b)| vec![Rational::from_int(a), Rational::from_int(b)])
            .collect();
        let pb = border_basis_from_points(&ctx, xb, &pts, &o5()).unwrap();
        let f = parse_poly(&ctx, "x^4+3*x^2*y^2-x*y+2").unwrap();
        let coords = pb.divide(&f).unwrap();
        // The residue interpolates f on the points.
        let elems = pb.skeleton().elements(&ctx, xb);
        let mut residue = Polynomial::zero(&ctx);
        for (c, e) in coords.iter().zip(&elems) {
            residue = residue.add(&e.mul_scalar(c));
        }
        for p in &pts {
            assert_eq!(f.evaluate_full(p), residue.evaluate_full(p));
        }
        // Generators and their term multiples divide to zero.
        for g in pb.generators() {
            assert!(pb.divide(&g).unwrap().iter().all(|c| c.is_zero()));
            let xg = g.mul(&parse_poly(&ctx, "x*y^2").unwrap());
            assert!(pb.divide(&xg).unwrap().iter().all(|c| c.is_zero()));
        }
        // Coordinates unchanged by adding an ideal element.
        let shifted = f.add(&pb.generators()[2].mul(&parse_poly(&ctx, "y^3-x").unwrap()));
        assert_eq!(pb.divide(&shifted).unwrap(), coords);
    }

    #[test]
    fn one_variable_mult_matrix_is_companion() {
        let o = oi(1, &[&[0], &[1]]);
        let pb = generic_prebasis(&o, &["x"]);
        let mats = pb.mult_matrices().unwrap();
        assert_eq!(mats.len(), 1);
        let a = &mats[0];
        let strs: Vec<String> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| a.at(i, j).to_string())
            .collect();
        assert_eq!(strs, vec!["0", "c_1_1", "1", "c_2_1"]);
    }

    #[test]
    fn bbs_ideal_one_variable_is_zero() {
        let o = oi(1, &[&[0], &[1], &[2]]);
        let bbs = generate_bbs_ideal(&o);
        assert!(bbs.ideal.is_zero_ideal());
    }

    #[test]
    fn points_border_basis_of_two_points() {
        let ctx = VarContext::simple("x", &["x"]);
        let xb = ctx.block("x").unwrap();
        let o = oi(1, &[&[0], &[1]]);
        let pts = vec![vec![Rational::from_int(0)], vec![Rational::from_int(1)]];
        let pb = border_basis_from_points(&ctx, xb, &pts, &o).unwrap();
        let gens = pb.generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].to_string(), "x^2-x");
    }

    #[test]
    fn coincident_points_rejected() {
        let ctx = VarContext::simple("x", &["x"]);
        let xb = ctx.block("x").unwrap();
        let o = oi(1, &[&[0], &[1]]);
        let pts = vec![vec![Rational::from_int(3)], vec![Rational::from_int(3)]];
        assert!(matches!(
            border_basis_from_points(&ctx, xb, &pts, &o),
            Err(Error::NoBorderBasis(_))
        ));
    }

    #[test]
    fn basis_modulo_examples() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let xb = ctx.block("x").unwrap();
        // I3 = (xy, y^2, x^3) has basis O3 but not O5.
        let i3 = Ideal::new(&ctx, parse_poly_list(&ctx, "x*y, y^2, x^3").unwrap());
        let o3 = oi(2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 0]]);
        assert!(is_basis_modulo(&PseudoOrderIdeal::plain(o3), &i3, xb)
            .unwrap()
            .is_some());
        assert!(is_basis_modulo(&PseudoOrderIdeal::plain(o5()), &i3, xb)
            .unwrap()
            .is_none());
    }
}
