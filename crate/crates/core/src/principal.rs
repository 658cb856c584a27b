//! The principal component of the border basis scheme: the point-evaluation
//! determinants Delta_O and Delta_ij, the elimination algorithm computing its
//! vanishing ideal, the induced grading, and subalgebra membership tests.

use std::sync::Arc;

use crate::context::{BlockId, VarContext};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::matrix::Matrix;
use crate::order_ideal::OrderIdeal;
use crate::ordering::TermOrdering;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::term::Term;

/// The determinants built from the generic point coordinates y^(i):
/// Delta_O = det(t_j(y^(i))) and, per border term b_j and column i, the
/// determinant Delta_ij with column i replaced by b_j(y^(.)).
pub struct DeltaSystem {
    pub order_ideal: OrderIdeal,
    /// Ring K[y^(1), ..., y^(mu)] with block `y`.
    pub ctx: Arc<VarContext>,
    pub y_block: BlockId,
    pub delta_o: Polynomial,
    /// delta[i][j] = Delta_{i+1, j+1}, a mu x nu array.
    pub delta: Vec<Vec<Polynomial>>,
}

impl DeltaSystem {
    /// Evaluates Delta_O at concrete points (row i = point i).
    pub fn delta_o_at(&self, points: &[Vec<Rational>]) -> Rational {
        self.delta_o.evaluate_full(&flatten_points(points))
    }

    pub fn delta_at(&self, i: usize, j: usize, points: &[Vec<Rational>]) -> Rational {
        self.delta[i][j].evaluate_full(&flatten_points(points))
    }
}

fn flatten_points(points: &[Vec<Rational>]) -> Vec<Rational> {
    points.iter().flatten().cloned().collect()
}

/// Substitution of x_k by y_k^(i) in a term's exponent vector.
fn term_at_point(
    ctx: &Arc<VarContext>,
    y_block: BlockId,
    n: usize,
    exps: &[u32],
    point: usize,
) -> Polynomial {
    let range = ctx.block_range(y_block);
    let mut full = vec![0u32; ctx.num_vars()];
    for (k, &e) in exps.iter().enumerate() {
        full[range.start + point * n + k] = e;
    }
    Polynomial::from_term(ctx, Term::from_exps(full), Rational::one())
}

/// Builds the full Delta system over a fresh y ring.
pub fn build_delta_system(o: &OrderIdeal) -> DeltaSystem {
    let mut b = VarContext::builder();
    let y_block = b.y_block(o.mu(), o.num_vars());
    let ctx = b.build();
    build_delta_system_in(o, &ctx, y_block)
}

/// Builds the Delta system inside an existing context owning a y block.
pub fn build_delta_system_in(
    o: &OrderIdeal,
    ctx: &Arc<VarContext>,
    y_block: BlockId,
) -> DeltaSystem {
    let mu = o.mu();
    let n = o.num_vars();
    let col = |exps: &[u32]| -> Vec<Polynomial> {
        (0..mu)
            .map(|i| term_at_point(ctx, y_block, n, exps, i))
            .collect()
    };
    let base: Vec<Vec<Polynomial>> = o.exps().iter().map(|e| col(e)).collect();
    let eval_matrix = Matrix::from_fn(mu, mu, |i, j| base[j][i].clone());
    let delta_o = eval_matrix
        .det_bareiss()
        .expect("evaluation matrix is square");
    let border = o.border();
    let mut delta: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(border.len()); mu];
    for bexps in &border {
        let bcol = col(bexps);
        for (i, row) in delta.iter_mut().enumerate() {
            let m = Matrix::from_fn(mu, mu, |r, c| {
                if c == i {
                    bcol[r].clone()
                } else {
                    base[c][r].clone()
                }
            });
            row.push(m.det_bareiss().expect("square"));
        }
    }
    DeltaSystem { order_ideal: o.clone(), ctx: ctx.clone(), y_block, delta_o, delta }
}

/// Step sizes printed by the `--trace` flag of the CLI `principal` command.
pub struct PrincipalTrace {
    pub delta_terms: usize,
    pub tableau_generators: usize,
    pub tableau_variables: usize,
    pub output_generators: usize,
}

/// Computes generators of the vanishing ideal of the principal component in
/// K[c_ij]: (1) build the Delta system, (2) form the tableau ideal
/// (Delta_O z - 1, Delta_O c_ij - Delta_ij), (3) eliminate {y, z}.
pub fn principal_ideal(o: &OrderIdeal) -> Result<(Ideal, PrincipalTrace)> {
    let mu = o.mu();
    let n = o.num_vars();
    let nu = o.border().len();
    // Context blocks: c, z, y. The c block must come first so the induced
    // sub-context of step (3) is the plain coefficient ring.
    let mut b = VarContext::builder();
    let c_block = b.c_block(mu, nu);
    let z_block = b.single("z");
    let y_block = b.y_block(mu, n);
    let ctx = b.build();

    let ds = build_delta_system_in(o, &ctx, y_block);
    let z = Polynomial::var_named(&ctx, "z")?;
    let one = Polynomial::one(&ctx);
    let c_start = ctx.block_range(c_block).start;
    let mut gens = vec![ds.delta_o.mul(&z).sub(&one)];
    for i in 0..mu {
        for j in 0..nu {
            let cij = Polynomial::var(&ctx, c_start + i * nu + j);
            gens.push(ds.delta_o.mul(&cij).sub(&ds.delta[i][j]));
        }
    }
    let tableau = Ideal::new(&ctx, gens);
    let mut trace = PrincipalTrace {
        delta_terms: ds.delta_o.num_terms(),
        tableau_generators: tableau.generators().len(),
        tableau_variables: ctx.num_vars(),
        output_generators: 0,
    };
    let out = tableau.eliminate(&[y_block, z_block])?;
    trace.output_generators = out.generators().len();
    Ok((out, trace))
}

/// A multigrading on K[c_ij] induced by a grading W on the term ring:
/// deg(c_ij) = deg_W(b_j) - deg_W(t_i).
pub struct GradingSpec {
    /// One degree vector per c variable, in c-block order.
    degrees: Vec<Vec<i64>>,
}

impl GradingSpec {
    /// `w` has one row per grading component, n columns.
    pub fn new(o: &OrderIdeal, w: &[Vec<i64>]) -> Self {
        let deg_of = |exps: &[u32]| -> Vec<i64> {
            w.iter()
                .map(|row| {
                    exps.iter()
                        .zip(row)
                        .map(|(&e, &wk)| e as i64 * wk)
                        .sum()
                })
                .collect()
        };
        let border = o.border();
        let mut degrees = Vec::with_capacity(o.mu() * border.len());
        for t in o.exps() {
            for b in &border {
                let db = deg_of(b);
                let dt = deg_of(t);
                degrees.push(db.iter().zip(&dt).map(|(a, b)| a - b).collect());
            }
        }
        GradingSpec { degrees }
    }

    fn term_degree(&self, t: &Term) -> Vec<i64> {
        let m = self.degrees.first().map(|d| d.len()).unwrap_or(0);
        let mut acc = vec![0i64; m];
        for (v, &e) in t.exps().iter().enumerate() {
            if e > 0 {
                for (k, a) in acc.iter_mut().enumerate() {
                    *a += e as i64 * self.degrees[v][k];
                }
            }
        }
        acc
    }

    pub fn is_homogeneous(&self, p: &Polynomial) -> bool {
        let mut deg: Option<Vec<i64>> = None;
        for (t, _) in p.terms() {
            let d = self.term_degree(t);
            match &deg {
                None => deg = Some(d),
                Some(first) => {
                    if first != &d {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// True iff every generator of the reduced degrevlex basis of `i` (an ideal
/// in the c ring) is homogeneous for the induced grading.
pub fn check_homogeneous(i: &Ideal, g: &GradingSpec) -> bool {
    let gb = i.groebner_basis(&TermOrdering::DegRevLex);
    gb.elements().iter().all(|p| g.is_homogeneous(p))
}

/// Decides whether Delta_L / Delta_O lies in the subalgebra generated by the
/// Delta_ij / Delta_O, by extending the elimination tableau with u and the
/// relation Delta_O u - Delta_L: membership iff u reduces to a polynomial in
/// the c variables alone.
pub fn subalgebra_membership(o: &OrderIdeal, l_terms: &[Vec<u32>]) -> Result<bool> {
    Ok(subalgebra_expression(o, l_terms)?.is_some())
}

/// As [`subalgebra_membership`], returning the witness q with
/// Delta_L / Delta_O = q(Delta_ij / Delta_O) when membership holds.
pub fn subalgebra_expression(
    o: &OrderIdeal,
    l_terms: &[Vec<u32>],
) -> Result<Option<Polynomial>> {
    let mu = o.mu();
    if l_terms.len() != mu {
        return Err(Error::Dimension { expected: mu, found: l_terms.len() });
    }
    let n = o.num_vars();
    let nu = o.border().len();
    let mut b = VarContext::builder();
    let c_block = b.c_block(mu, nu);
    let u_block = b.single("u");
    let z_block = b.single("z");
    let y_block = b.y_block(mu, n);
    let ctx = b.build();
    let _ = u_block;

    let ds = build_delta_system_in(o, &ctx, y_block);
    let col = |exps: &[u32]| -> Vec<Polynomial> {
        (0..mu)
            .map(|i| term_at_point(&ctx, y_block, n, exps, i))
            .collect()
    };
    let l_cols: Vec<Vec<Polynomial>> = l_terms.iter().map(|e| col(e)).collect();
    let delta_l = Matrix::from_fn(mu, mu, |i, j| l_cols[j][i].clone()).det_bareiss()?;

    let z = Polynomial::var_named(&ctx, "z")?;
    let u = Polynomial::var_named(&ctx, "u")?;
    let one = Polynomial::one(&ctx);
    let c_start = ctx.block_range(c_block).start;
    let mut gens = vec![
        ds.delta_o.mul(&z).sub(&one),
        ds.delta_o.mul(&u).sub(&delta_l),
    ];
    for i in 0..mu {
        for j in 0..nu {
            let cij = Polynomial::var(&ctx, c_start + i * nu + j);
            gens.push(ds.delta_o.mul(&cij).sub(&ds.delta[i][j]));
        }
    }
    let eliminated = Ideal::new(&ctx, gens).eliminate(&[y_block, z_block])?;
    // In K[c, u], reduce u with the u block eliminated first: membership iff
    // the normal form is free of u.
    let cu_ctx = eliminated.context().clone();
    let u_blk = cu_ctx.block("u").ok_or(Error::ContextMismatch)?;
    let ord = TermOrdering::BlockElim { first: vec![u_blk] };
    let gb = eliminated.groebner_basis(&ord);
    let u_cu = Polynomial::var_named(&cu_ctx, "u")?;
    let nf = gb.normal_form(&u_cu)?;
    let u_range = cu_ctx.block_range(u_blk);
    let free = nf.terms().all(|(t, _)| t.degree_in(u_range.clone()) == 0);
    if !free {
        return Ok(None);
    }
    let keep: Vec<BlockId> = cu_ctx.block_ids().filter(|b| *b != u_blk).collect();
    let (c_only, map) = cu_ctx.subcontext(&keep);
    Ok(Some(nf.project(&c_only, &map)?))
}
