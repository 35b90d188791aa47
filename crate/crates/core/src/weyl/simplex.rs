//! Dense two-phase simplex for min c.x subject to A x = b, x >= 0, with
//! Bland's pivoting rule.

use crate::kernel::algebra::solve;
use crate::kernel::Real;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, objective: T },
    /// Minimal L1 violation of A x = b over x >= 0.
    Infeasible { residual: T },
    Unbounded,
}

struct Tableau<T> {
    /// m rows of [A | b] in the current basis.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    width: usize,
}

impl<T: Real> Tableau<T> {
    fn pivot(&mut self, obj: &mut [T], r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v = *v / p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != T::zero() {
                    for (v, &q) in row.iter_mut().zip(&pivot_row) {
                        *v = *v - f * q;
                    }
                }
            }
        }
        let f = obj[c];
        if f != T::zero() {
            for (v, &q) in obj.iter_mut().zip(&pivot_row) {
                *v = *v - f * q;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on columns allowed by `active`. Returns false
    /// when the objective is unbounded below.
    fn optimize(&mut self, obj: &mut [T], active: usize, eps: T) -> bool {
        let rhs = self.width;
        let max_iter = 50 * (self.rows.len() + active).max(100);
        for _ in 0..max_iter {
            let Some(c) = (0..active).find(|&j| obj[j] < -eps) else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c] > eps {
                    let ratio = row[rhs] / row[c];
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - eps || (ratio <= br + eps && self.basis[i] < self.basis[bi]) {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(obj, r, c),
            }
        }
        true
    }
}

/// Solves min c.x s.t. A x = b, x >= 0. `tol` is the absolute feasibility
/// tolerance on the equality constraints.
pub fn solve_lp<T: Real>(a: &[Vec<T>], b: &[T], c: &[T], tol: T) -> LpOutcome<T> {
    let m = b.len();
    let n = c.len();
    assert!(a.len() == m && a.iter().all(|r| r.len() == n), "LP shape mismatch");
    let scale = a.iter().flatten().chain(b).fold(T::one(), |s, v| s.max(v.abs()));
    let eps = scale * T::epsilon() * T::lit(64.0);

    // phase I on [A | I] with b >= 0
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let sgn = if b[i] < T::zero() { -T::one() } else { T::one() };
        let mut row = vec![T::zero(); width + 1];
        for j in 0..n {
            row[j] = sgn * a[i][j];
        }
        row[n + i] = T::one();
        row[width] = sgn * b[i];
        rows.push(row);
    }
    let mut tab = Tableau { rows, basis: (n..n + m).collect(), width };
    let mut obj1 = vec![T::zero(); width + 1];
    for row in &tab.rows {
        for j in 0..n {
            obj1[j] = obj1[j] - row[j];
        }
        obj1[width] = obj1[width] - row[width];
    }
    tab.optimize(&mut obj1, width, eps);
    let infeas = -obj1[width];
    if infeas > tol {
        return LpOutcome::Infeasible { residual: infeas };
    }

    // drive artificials out of the basis; rows where that fails are redundant
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            let col = (0..n).find(|&j| tab.rows[r][j].abs() > eps * T::lit(1e3));
            match col {
                Some(j) => {
                    tab.pivot(&mut obj1, r, j);
                    r += 1;
                }
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }

    // phase II over the original columns
    let mut obj2 = vec![T::zero(); width + 1];
    obj2[..n].copy_from_slice(c);
    for (i, &bj) in tab.basis.iter().enumerate() {
        let f = obj2[bj];
        if f != T::zero() {
            for (v, &q) in obj2.iter_mut().zip(&tab.rows[i]) {
                *v = *v - f * q;
            }
        }
    }
    if !tab.optimize(&mut obj2, n, eps) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![T::zero(); n];
    for (i, &bj) in tab.basis.iter().enumerate() {
        x[bj] = tab.rows[i][width].max(T::zero());
    }
    polish(a, b, &tab.basis, &mut x);
    let objective = x.iter().zip(c).fold(T::zero(), |s, (&xi, &ci)| s + xi * ci);
    LpOutcome::Optimal { x, objective }
}

/// Re-solves the basic variables from the original data by least squares on
/// the basis columns, keeping the result only if it stays nonnegative and
/// reduces the residual.
fn polish<T: Real>(a: &[Vec<T>], b: &[T], basis: &[usize], x: &mut [T]) {
    let k = basis.len();
    if k == 0 {
        return;
    }
    // normal equations on the basis columns
    let mut g = vec![vec![T::zero(); k]; k];
    let mut rhs = vec![T::zero(); k];
    for (p, &cp) in basis.iter().enumerate() {
        for (q, &cq) in basis.iter().enumerate() {
            g[p][q] = (0..a.len()).fold(T::zero(), |s, i| s + a[i][cp] * a[i][cq]);
        }
        rhs[p] = (0..a.len()).fold(T::zero(), |s, i| s + a[i][cp] * b[i]);
    }
    let Some(xb) = solve(&g, &rhs) else { return };
    if xb.iter().any(|v| *v < T::zero() || !v.is_finite()) {
        return;
    }
    let mut y = x.to_vec();
    for (p, &cp) in basis.iter().enumerate() {
        y[cp] = xb[p];
    }
    if residual(a, b, &y) <= residual(a, b, x) {
        x.copy_from_slice(&y);
    }
}

/// Max-norm violation of A x = b.
pub fn residual<T: Real>(a: &[Vec<T>], b: &[T], x: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |m, (row, &bi)| {
        let s = row.iter().zip(x).fold(T::zero(), |s, (&r, &v)| s + r * v);
        m.max((s - bi).abs())
    })
}
