//! Exact rational linear programming.
//!
//! A dense two-phase primal simplex over `BigRational` with Bland's rule
//! (lowest-index entering column, lowest basic index on ratio ties), which
//! rules out cycling and makes every solve deterministic. Problem sizes in
//! this crate are tiny, so no sparsity or factorization machinery.

use num::{Signed, Zero};

use crate::rational::Rational;

/// `maximize objective·x  subject to  row·x <= rhs for each constraint, x >= 0`.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<(Vec<Rational>, Rational)>,
}

impl LpProblem {
    pub fn new(num_vars: usize, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), num_vars);
        Self { num_vars, objective, constraints: Vec::new() }
    }

    pub fn add_constraint(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.num_vars);
        self.constraints.push((row, rhs));
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|(row, rhs)| {
                let lhs: Rational = row.iter().zip(x).map(|(a, v)| a * v).sum();
                lhs <= *rhs
            })
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LpSolution {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpSolution::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

struct Tableau {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    obj: Vec<Rational>,
    obj_val: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        debug_assert!(!p.is_zero());
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let d = &self.rows[r][j] * &f;
                self.rows[i][j] -= d;
            }
            let d = &self.rhs[r] * &f;
            self.rhs[i] -= d;
        }
        let f = self.obj[c].clone();
        if !f.is_zero() {
            for j in 0..self.cols {
                let d = &self.rows[r][j] * &f;
                self.obj[j] -= d;
            }
            let d = &self.rhs[r] * &f;
            self.obj_val += d;
        }
        self.basis[r] = c;
    }

    /// Sets the objective row for `maximize c·x` and eliminates the basic
    /// columns. `obj_val` becomes the objective at the current basic point.
    fn install_objective(&mut self, c: &[Rational]) {
        self.obj = vec![Rational::zero(); self.cols];
        self.obj[..c.len()].clone_from_slice(c);
        self.obj_val = Rational::zero();
        for r in 0..self.rows.len() {
            let f = self.obj[self.basis[r]].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let d = &self.rows[r][j] * &f;
                self.obj[j] -= d;
            }
            let d = &self.rhs[r] * &f;
            self.obj_val += d;
        }
    }

    /// Runs simplex iterations under Bland's rule. Returns false on an
    /// unbounded ray.
    fn run(&mut self) -> bool {
        loop {
            // Entering: lowest-index column with positive reduced cost.
            let Some(enter) = (0..self.cols).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            // Leaving: minimum ratio, ties by lowest basic variable index.
            let mut leave: Option<usize> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][enter].is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let cur = &self.rhs[i] * &self.rows[l][enter];
                        let best = &self.rhs[l] * &self.rows[i][enter];
                        match cur.cmp(&best) {
                            std::cmp::Ordering::Less => true,
                            std::cmp::Ordering::Greater => false,
                            std::cmp::Ordering::Equal => self.basis[i] < self.basis[l],
                        }
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            match leave {
                Some(r) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Exact optimum of `p`. Deterministic; the returned point satisfies every
/// constraint exactly.
pub fn solve(p: &LpProblem) -> LpSolution {
    let n = p.num_vars;
    let m = p.constraints.len();
    let num_artificial = p.constraints.iter().filter(|(_, b)| b.is_negative()).count();
    let cols = n + m + num_artificial;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_artificial = n + m;
    for (i, (row, b)) in p.constraints.iter().enumerate() {
        let mut full = vec![Rational::zero(); cols];
        let negate = b.is_negative();
        for (j, a) in row.iter().enumerate() {
            full[j] = if negate { -a.clone() } else { a.clone() };
        }
        full[n + i] = if negate { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
        if negate {
            full[next_artificial] = Rational::from_integer(1.into());
            basis.push(next_artificial);
            next_artificial += 1;
            rhs.push(-b.clone());
        } else {
            basis.push(n + i);
            rhs.push(b.clone());
        }
        rows.push(full);
    }

    let mut t = Tableau { cols, rows, rhs, basis, obj: Vec::new(), obj_val: Rational::zero() };

    if num_artificial > 0 {
        // Phase 1: maximize -(sum of artificials).
        let mut c1 = vec![Rational::zero(); cols];
        for j in n + m..cols {
            c1[j] = -Rational::from_integer(1.into());
        }
        t.install_objective(&c1);
        let bounded = t.run();
        debug_assert!(bounded, "phase 1 objective is bounded by zero");
        if !t.obj_val.is_zero() {
            return LpSolution::Infeasible;
        }
        // Drive any degenerate basic artificials out, dropping redundant rows.
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= n + m {
                debug_assert!(t.rhs[r].is_zero());
                match (0..n + m).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(j) => t.pivot(r, j),
                    None => {
                        t.rows.remove(r);
                        t.rhs.remove(r);
                        t.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        // Forget the artificial columns.
        for row in t.rows.iter_mut() {
            row.truncate(n + m);
        }
        t.cols = n + m;
    }

    t.install_objective(&p.objective);
    if !t.run() {
        return LpSolution::Unbounded;
    }

    let mut point = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            point[b] = t.rhs[r].clone();
        }
    }
    let value = t.obj_val.clone();
    debug_assert!(p.is_feasible_point(&point));
    debug_assert_eq!(p.objective_at(&point), value);
    LpSolution::Optimal { value, point }
}
