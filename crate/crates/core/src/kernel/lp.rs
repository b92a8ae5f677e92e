//! Exact two-phase primal simplex over the rationals.
//!
//! Variables are free; the solver splits them internally. Pivoting follows
//! Bland's rule, so it terminates and is fully deterministic.

use num_traits::{One, Signed, Zero};

use super::rational::{self, dot, Vector, Q};

/// An H-representation `{x : a·x ≤ b (ineqs), e·x = c (eqs)}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    pub dim: usize,
    pub ineqs: Vec<(Vector, Q)>,
    pub eqs: Vec<(Vector, Q)>,
}

impl Constraints {
    pub fn new(dim: usize) -> Self {
        Constraints {
            dim,
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    pub fn le(mut self, a: Vector, b: Q) -> Self {
        debug_assert_eq!(a.len(), self.dim);
        self.ineqs.push((a, b));
        self
    }

    pub fn eq(mut self, a: Vector, b: Q) -> Self {
        debug_assert_eq!(a.len(), self.dim);
        self.eqs.push((a, b));
        self
    }

    pub fn push_le(&mut self, a: Vector, b: Q) {
        debug_assert_eq!(a.len(), self.dim);
        self.ineqs.push((a, b));
    }

    pub fn push_eq(&mut self, a: Vector, b: Q) {
        debug_assert_eq!(a.len(), self.dim);
        self.eqs.push((a, b));
    }

    pub fn extend(&mut self, other: &Constraints) {
        debug_assert_eq!(self.dim, other.dim);
        self.ineqs.extend(other.ineqs.iter().cloned());
        self.eqs.extend(other.eqs.iter().cloned());
    }

    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        self.ineqs.iter().all(|(a, b)| dot(a, x) <= *b) && self.eqs.iter().all(|(e, c)| dot(e, x) == *c)
    }

    /// Embed into a larger variable space: variable `i` becomes variable `offset + i`.
    pub fn lift(&self, total: usize, offset: usize) -> Constraints {
        let pad = |a: &Vector| {
            let mut v = rational::zeros(total);
            v[offset..offset + a.len()].clone_from_slice(a);
            v
        };
        Constraints {
            dim: total,
            ineqs: self.ineqs.iter().map(|(a, b)| (pad(a), b.clone())).collect(),
            eqs: self.eqs.iter().map(|(a, b)| (pad(a), b.clone())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Q,
        point: Vector,
    },
    /// `point` is feasible and `point + t·direction` stays feasible for all `t ≥ 0`
    /// while the objective grows without bound.
    Unbounded {
        point: Vector,
        direction: Vector,
    },
    Infeasible,
}

/// Maximize `objective · x` subject to `cons`.
pub fn maximize(cons: &Constraints, objective: &[Q]) -> LpOutcome {
    assert_eq!(objective.len(), cons.dim);
    let mut t = Tableau::build(cons);
    if !t.phase_one() {
        return LpOutcome::Infeasible;
    }
    let n = cons.dim;
    let mut cost = vec![Q::zero(); t.width];
    for j in 0..n {
        cost[j] = objective[j].clone();
        cost[n + j] = -objective[j].clone();
    }
    match t.run(&cost, t.artificial_start) {
        Ok(()) => {
            let point = t.primal(n);
            LpOutcome::Optimal {
                value: dot(objective, &point),
                point,
            }
        }
        Err(col) => {
            let point = t.primal(n);
            let direction = t.ray(col, n);
            LpOutcome::Unbounded { point, direction }
        }
    }
}

pub fn minimize(cons: &Constraints, objective: &[Q]) -> LpOutcome {
    match maximize(cons, &rational::neg(objective)) {
        LpOutcome::Optimal { value, point } => LpOutcome::Optimal { value: -value, point },
        other => other,
    }
}

/// Some feasible point, or `None` when the system is infeasible.
pub fn feasible_point(cons: &Constraints) -> Option<Vector> {
    let mut t = Tableau::build(cons);
    if t.phase_one() {
        Some(t.primal(cons.dim))
    } else {
        None
    }
}

pub fn is_feasible(cons: &Constraints) -> bool {
    feasible_point(cons).is_some()
}

/// Columns: `x⁺ (n) | x⁻ (n) | slacks (one per inequality) | artificials (one per row)`.
struct Tableau {
    rows: Vec<Vector>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    width: usize,
    artificial_start: usize,
}

impl Tableau {
    fn build(cons: &Constraints) -> Tableau {
        let n = cons.dim;
        let n_ineq = cons.ineqs.len();
        let n_rows = n_ineq + cons.eqs.len();
        let artificial_start = 2 * n + n_ineq;
        let width = artificial_start + n_rows;
        let mut rows = Vec::with_capacity(n_rows);
        let mut rhs = Vec::with_capacity(n_rows);
        let all = cons
            .ineqs
            .iter()
            .map(|r| (r, true))
            .chain(cons.eqs.iter().map(|r| (r, false)));
        let mut slack = 2 * n;
        for (i, ((a, b), is_ineq)) in all.enumerate() {
            let mut row = vec![Q::zero(); width];
            for j in 0..n {
                row[j] = a[j].clone();
                row[n + j] = -a[j].clone();
            }
            if is_ineq {
                row[slack] = Q::one();
                slack += 1;
            }
            let mut b = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
                b = -b;
            }
            row[artificial_start + i] = Q::one();
            rows.push(row);
            rhs.push(b);
        }
        let basis = (artificial_start..width).collect();
        Tableau {
            rows,
            rhs,
            basis,
            width,
            artificial_start,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            let d = &f * &prhs;
            self.rhs[i] -= d;
        }
        self.basis[r] = c;
    }

    /// Maximize `cost` over columns `< allowed`. `Err(col)` reports an unbounded entering column.
    fn run(&mut self, cost: &[Q], allowed: usize) -> Result<(), usize> {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    let a = &self.rows[i][j];
                    if !a.is_zero() && !cost[b].is_zero() {
                        reduced -= &cost[b] * a;
                    }
                }
                if reduced.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Err(c),
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    /// Phase one; on success artificials are driven out and redundant rows dropped.
    fn phase_one(&mut self) -> bool {
        let mut cost = vec![Q::zero(); self.width];
        for c in cost.iter_mut().skip(self.artificial_start) {
            *c = -Q::one();
        }
        self.run(&cost, self.width).expect("phase one objective is bounded");
        let infeasible = self
            .basis
            .iter()
            .zip(&self.rhs)
            .any(|(&b, v)| b >= self.artificial_start && !v.is_zero());
        if infeasible {
            return false;
        }
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.artificial_start {
                match (0..self.artificial_start).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(c) => self.pivot(r, c),
                    None => {
                        self.rows.remove(r);
                        self.rhs.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        true
    }

    fn primal(&self, n: usize) -> Vector {
        let mut x = rational::zeros(n);
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] += &self.rhs[i];
            } else if b < 2 * n {
                x[b - n] -= &self.rhs[i];
            }
        }
        x
    }

    fn ray(&self, col: usize, n: usize) -> Vector {
        let mut full = vec![Q::zero(); self.width];
        full[col] = Q::one();
        for (i, &b) in self.basis.iter().enumerate() {
            full[b] = -self.rows[i][col].clone();
        }
        let d: Vector = (0..n).map(|j| &full[j] - &full[n + j]).collect();
        rational::primitive(&d)
    }
}
