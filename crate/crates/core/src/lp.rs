//! Exact rational simplex for `maximize c·x subject to A x = b, x >= 0`.
//!
//! Dense two-phase tableau with Bland's rule, so it always terminates. The
//! artificial columns stay in the tableau after phase one; their reduced
//! costs give the dual vector, which is returned both for optimal solutions
//! and as a Farkas certificate when the system is infeasible.

use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardLp {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// `dual` satisfies `dualᵀA >= c` and `dualᵀb == value`.
    Optimal {
        x: Vec<Rational>,
        value: Rational,
        dual: Vec<Rational>,
    },
    /// `farkasᵀA >= 0` and `farkasᵀb < 0`.
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded,
    PivotLimit,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    obj: Vec<Rational>,
    obj_rhs: Rational,
    basis: Vec<usize>,
    pivots: u64,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        self.pivots += 1;
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        self.rhs[r] /= &p;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        let f = self.obj[col].clone();
        if !f.is_zero() {
            for (v, pv) in self.obj.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.obj_rhs -= &f * &prhs;
        }
        self.basis[r] = col;
    }

    /// Sets the objective row for cost vector `cost` over all columns.
    fn price(&mut self, cost: &[Rational]) {
        let ncols = cost.len();
        let mut obj: Vec<Rational> = cost.iter().map(|c| -c.clone()).collect();
        let mut obj_rhs = Rational::zero();
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = &cost[bv];
            if cb.is_zero() {
                continue;
            }
            for j in 0..ncols {
                if !self.rows[i][j].is_zero() {
                    obj[j] += cb * &self.rows[i][j];
                }
            }
            obj_rhs += cb * &self.rhs[i];
        }
        self.obj = obj;
        self.obj_rhs = obj_rhs;
    }

    /// Bland's rule iterations; `enterable` bounds the candidate columns.
    fn run(&mut self, enterable: usize, limit: Option<u64>) -> Result<(), LpOutcome> {
        loop {
            let Some(col) = (0..enterable).find(|&j| self.obj[j].is_negative()) else {
                return Ok(());
            };
            if limit.is_some_and(|l| self.pivots >= l) {
                return Err(LpOutcome::PivotLimit);
            }
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Err(LpOutcome::Unbounded),
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }
}

pub fn solve(lp: &StandardLp, max_pivots: Option<u64>) -> LpOutcome {
    let m = lp.b.len();
    let k = lp.c.len();
    assert_eq!(lp.a.len(), m);
    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(lp.a[i].len(), k);
        let flip = lp.b[i].is_negative();
        signs.push(flip);
        let mut row: Vec<Rational> = lp.a[i]
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        row.extend((0..m).map(|j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        rows.push(row);
        rhs.push(if flip {
            -lp.b[i].clone()
        } else {
            lp.b[i].clone()
        });
    }
    let mut t = Tableau {
        rows,
        rhs,
        obj: Vec::new(),
        obj_rhs: Rational::zero(),
        basis: (k..k + m).collect(),
        pivots: 0,
    };
    let unflip = |y: Vec<Rational>| -> Vec<Rational> {
        y.into_iter()
            .zip(&signs)
            .map(|(v, &f)| if f { -v } else { v })
            .collect()
    };

    // phase one: maximize -(sum of artificials)
    let mut phase1_cost = vec![Rational::zero(); k + m];
    for c in phase1_cost.iter_mut().skip(k) {
        *c = -Rational::one();
    }
    t.price(&phase1_cost);
    if let Err(out) = t.run(k + m, max_pivots) {
        return out;
    }
    if t.obj_rhs.is_negative() {
        // y_i = z_art_i + c_art_i
        let y = (0..m).map(|i| &t.obj[k + i] - Rational::one()).collect();
        return LpOutcome::Infeasible { farkas: unflip(y) };
    }

    // drive zero-level artificials out of the basis where possible
    for r in 0..m {
        if t.basis[r] >= k {
            if let Some(col) = (0..k).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, col);
            }
        }
    }

    let mut phase2_cost = lp.c.clone();
    phase2_cost.extend((0..m).map(|_| Rational::zero()));
    t.price(&phase2_cost);
    if let Err(out) = t.run(k, max_pivots) {
        return out;
    }
    let mut x = vec![Rational::zero(); k];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < k {
            x[bv] = t.rhs[i].clone();
        }
    }
    let dual = (0..m).map(|i| t.obj[k + i].clone()).collect();
    LpOutcome::Optimal {
        x,
        value: t.obj_rhs.clone(),
        dual: unflip(dual),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

/// Collects sparse constraints over nonnegative variables and lowers them to
/// [`StandardLp`], appending one slack column per inequality.
#[derive(Clone, Debug, Default)]
pub struct LpBuilder {
    num_vars: usize,
    rows: Vec<(Vec<(usize, Rational)>, Relation, Rational)>,
    objective: Vec<(usize, Rational)>,
}

impl LpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self) -> usize {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn constrain(&mut self, coeffs: Vec<(usize, Rational)>, rel: Relation, rhs: Rational) {
        debug_assert!(coeffs.iter().all(|(j, _)| *j < self.num_vars));
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn maximize(&mut self, coeffs: Vec<(usize, Rational)>) {
        self.objective = coeffs;
    }

    /// Column count of the lowered problem.
    pub fn num_columns(&self) -> usize {
        self.num_vars + self.rows.iter().filter(|r| r.1 != Relation::Eq).count()
    }

    pub fn build(&self) -> StandardLp {
        let cols = self.num_columns();
        let mut a = Vec::with_capacity(self.rows.len());
        let mut b = Vec::with_capacity(self.rows.len());
        let mut slack = self.num_vars;
        for (coeffs, rel, rhs) in &self.rows {
            let mut row = vec![Rational::zero(); cols];
            for (j, v) in coeffs {
                row[*j] += v;
            }
            match rel {
                Relation::Eq => {}
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
            }
            a.push(row);
            b.push(rhs.clone());
        }
        let mut c = vec![Rational::zero(); cols];
        for (j, v) in &self.objective {
            c[*j] += v;
        }
        StandardLp { a, b, c }
    }
}

impl StandardLp {
    /// `yᵀA` column by column.
    pub fn weighted_columns(&self, y: &[Rational]) -> Vec<Rational> {
        let cols = self.c.len();
        let mut out = vec![Rational::zero(); cols];
        for (row, yi) in self.a.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(row) {
                if !v.is_zero() {
                    *o += yi * v;
                }
            }
        }
        out
    }

    pub fn weighted_rhs(&self, y: &[Rational]) -> Rational {
        self.b
            .iter()
            .zip(y)
            .fold(Rational::zero(), |acc, (b, y)| acc + b * y)
    }

    /// Checks a Farkas certificate: `yᵀA >= 0` and `yᵀb < 0`.
    pub fn is_farkas_certificate(&self, y: &[Rational]) -> bool {
        y.len() == self.b.len()
            && self.weighted_columns(y).iter().all(|v| !v.is_negative())
            && self.weighted_rhs(y).is_negative()
    }

    /// Checks that `y` proves `c·x <= bound` for every feasible `x`.
    pub fn is_upper_bound_certificate(&self, y: &[Rational], bound: &Rational) -> bool {
        y.len() == self.b.len()
            && self
                .weighted_columns(y)
                .iter()
                .zip(&self.c)
                .all(|(v, c)| v >= c)
            && &self.weighted_rhs(y) <= bound
    }
}
